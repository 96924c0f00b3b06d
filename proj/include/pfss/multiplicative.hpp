/**
 * @file multiplicative.hpp
 * @brief Multiplicative-group computations in finite-field towers: element
 *        order, seeded primitive-element search, Pohlig–Hellman discrete
 *        logarithm (baby-step/giant-step per prime), and n-th roots of field
 *        elements — including the minimal field extension that contains a
 *        root when none exists in the base field.
 */
#ifndef PFSS_MULTIPLICATIVE_HPP
#define PFSS_MULTIPLICATIVE_HPP

#include <random>
#include <unordered_map>

#include "factor.hpp"

namespace pfss {

/// Order of the multiplicative group, q - 1 (fits u64 since q <= 2^64).
inline u64 group_order(const FieldCtxPtr& ctx) { return static_cast<u64>(ctx->size() - 1); }

/// Multiplicative order of a nonzero element.
inline u64 element_order(const FE& a) {
    if (a.is_zero()) raise(ErrorKind::ZeroElement, "zero has no multiplicative order");
    u64 ord = group_order(a.ctx());
    for (const auto& [r, e] : factor_u64(ord)) {
        (void)e;
        while (ord % r == 0 && a.pow(ord / r).is_one()) ord /= r;
    }
    return ord;
}

/// Seeded search for a generator of the multiplicative group.
inline FE primitive_element(const FieldCtxPtr& ctx, u64 seed = 0) {
    const u64 M = group_order(ctx);
    if (M == 1) return FE::one(ctx);
    auto primes = factor_u64(M);
    std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
    while (true) {
        FE x = FE::from_index(ctx, rng() % M + 1);
        bool generator = true;
        for (const auto& [r, e] : primes) {
            (void)e;
            if (x.pow(M / r).is_one()) {
                generator = false;
                break;
            }
        }
        if (generator) return x;
    }
}

namespace detail {

/// Baby-step/giant-step in the cyclic group generated by `base` of prime
/// order r: the d in [0, r) with base^d = target.
inline u64 bsgs_prime(const FE& base, const FE& target, u64 r) {
    if (r > (u64(1) << 40))
        raise(ErrorKind::StateSpaceTooLarge, "prime subgroup too large for a discrete-log table");
    if (target.is_one()) return 0;
    u64 m = 1;
    while (m * m < r) ++m;
    std::unordered_map<u64, u64> table;
    table.reserve(size_t(m));
    FE cur = FE::one(base.ctx());
    for (u64 j = 0; j < m; ++j) {
        table.emplace(cur.index(), j);
        cur = cur * base;
    }
    FE giant = base.pow(r - (m % r)); // base^{-m}
    FE y = target;
    for (u64 i = 0; i * m < r + m; ++i) {
        auto it = table.find(y.index());
        if (it != table.end()) return (i * m + it->second) % r;
        y = y * giant;
    }
    raise(ErrorKind::VerificationFailed, "discrete logarithm does not exist in the subgroup");
}

/// Pohlig–Hellman: the k in [0, ord) with base^k = target, where `base` has
/// multiplicative order `ord` and target lies in its span.
inline u64 discrete_log(const FE& base, const FE& target, u64 ord) {
    if (target.is_zero()) raise(ErrorKind::ZeroElement, "discrete logarithm of zero");
    u64 k = 0, mod = 1;
    for (const auto& [r, e] : factor_u64(ord)) {
        // digits of k base r, modulo r^e
        u64 re = 1;
        for (u32 i = 0; i < e; ++i) re *= r;
        FE gamma = base.pow(ord / r); // order exactly r
        u64 k_re = 0, rpow = 1;
        for (u32 j = 0; j < e; ++j) {
            FE shifted = target * base.pow(ord - k_re % ord);
            FE h = shifted.pow(ord / (rpow * r));
            u64 d = bsgs_prime(gamma, h, r);
            k_re += d * rpow;
            rpow *= r;
        }
        // CRT accumulate: k ≡ k_re (mod re)
        if (mod == 1) {
            k = k_re;
            mod = re;
        } else {
            u64 diff = (k_re + re - k % re) % re;
            u64 step = mulmod(diff, inv_mod_u64(mod % re, re), re);
            k = k + mod * step;
            mod *= re;
        }
    }
    return k;
}

} // namespace detail

/**
 * n-th root of a nonzero element a: the minimal-extension canonical solution
 * of x^n = a.
 *
 * The p-part of n (p = characteristic) is handled by the inverse Frobenius
 * (always solvable in the same field). For the part n' coprime to p, the
 * smallest extension degree e with t·gcd(n', q^e - 1) | q^e - 1 (t = ord(a))
 * is located; the root is g^k for a seeded primitive g of GF(q^e) and the
 * minimal k solving n'·k ≡ log_g(a) (mod q^e - 1).
 *
 * Raises ZeroElement on a = 0, BadRange on n = 0, and
 * ExtensionBoundExceeded when the required extension degree exceeds
 * `cap_extension` (0 = default cap of 64 · [current field : GF(p)]) or the
 * extension would not be representable in 64-bit indices.
 */
inline FE element_nth_root(const FE& a_in, u64 n, u64 seed = 0, u64 cap_extension = 0) {
    if (n == 0) raise(ErrorKind::BadRange, "0th root is undefined");
    if (a_in.is_zero()) raise(ErrorKind::ZeroElement, "n-th root of zero");
    const FieldCtxPtr& ctx = a_in.ctx();
    const u64 p = ctx->characteristic();

    auto [s, n1] = split_prime_power(n, p);
    FE a = a_in;
    for (u32 i = 0; i < s; ++i) a = a.inv_frobenius();
    if (n1 == 1 || a.is_one()) return a;

    const u128 q = ctx->size();
    const u64 t = element_order(a);
    const u64 cap = cap_extension ? cap_extension : 64 * u64(ctx->abs_degree());

    u32 e_found = 0;
    for (u64 e = 1; e <= cap; ++e) {
        u64 qe_mod_n1 = powmod(static_cast<u64>(q % n1), e, n1);
        u64 g_e = std::gcd(n1, (qe_mod_n1 + n1 - 1) % n1);
        u128 tm = u128(t) * g_e;
        if (powmod_u128(q % tm, e, tm) == 1 % tm) {
            e_found = static_cast<u32>(e);
            break;
        }
    }
    if (e_found == 0)
        raise(ErrorKind::ExtensionBoundExceeded, "no representable extension contains the requested root");

    FieldCtxPtr work = ctx;
    FE aw = a;
    if (e_found > 1) {
        // representability: q^e must stay within 2^64 states
        u128 sz = 1;
        for (u32 i = 0; i < e_found; ++i) {
            if (q != 0 && sz > (u128(1) << 64) / q) raise(ErrorKind::ExtensionBoundExceeded, "root requires an extension larger than 2^64 elements");
            sz *= q;
        }
        if (sz > (u128(1) << 64))
            raise(ErrorKind::ExtensionBoundExceeded, "root requires an extension larger than 2^64 elements");
        work = extend_field(ctx, find_irreducible(ctx, e_found, seed));
        aw = a.embedded(work);
    }

    const u64 M = group_order(work);
    FE g = primitive_element(work, seed);
    u64 L = detail::discrete_log(g, aw, M);
    u64 g0 = std::gcd(n1, M);
    if (L % g0 != 0) raise(ErrorKind::VerificationFailed, "solvability test and discrete log disagree");
    u64 Mg = M / g0;
    u64 k = Mg == 1 ? 0 : mulmod((L / g0) % Mg, inv_mod_u64((n1 / g0) % Mg, Mg), Mg);
    FE root = g.pow(k);
    if (root.pow(n1) != aw) raise(ErrorKind::VerificationFailed, "computed n-th root failed verification");
    return root;
}

} // namespace pfss

#endif // PFSS_MULTIPLICATIVE_HPP
