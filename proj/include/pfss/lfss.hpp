/**
 * @file lfss.hpp
 * @brief Orbit structure of linear finite state systems x(k+1) = A x(k):
 *        polynomial periods, the full cycle set of the state permutation,
 *        per-vector orbit lengths, and construction of initial conditions
 *        with a prescribed orbit length.
 */
#ifndef PFSS_LFSS_HPP
#define PFSS_LFSS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pfss/linalg.hpp"
#include "pfss/smith.hpp"

namespace pfss {

/// One cycle-set entry: `count` disjoint cycles of `length` states each.
struct CycleEntry {
    u128 count = 0;
    u64 length = 0;

    friend bool operator==(const CycleEntry& a, const CycleEntry& b) {
        return a.count == b.count && a.length == b.length;
    }
};

/// Cycle set of a state permutation, entries sorted by increasing length.
struct CycleSet {
    std::vector<CycleEntry> entries;

    /// Total number of states covered: sum of count*length.
    u128 mass() const {
        u128 m = 0;
        for (const auto& e : entries) m += mul_u128_checked(e.count, e.length);
        return m;
    }

    friend bool operator==(const CycleSet& a, const CycleSet& b) { return a.entries == b.entries; }
};

namespace detail {

/// Smallest power of p that is >= c (p^ceil(log_p c)); c >= 1.
inline u64 pth_power_at_least(u64 p, u64 c) {
    u64 pk = 1;
    while (pk < c) {
        if (pk > ~u64(0) / p) raise(ErrorKind::BadRange, "power of the characteristic overflows");
        pk *= p;
    }
    return pk;
}

/// Multiplicative order of x modulo an irreducible polynomial g, g(0) != 0.
inline u64 order_of_x_mod_irreducible(const Poly& g) {
    const FieldCtxPtr& ctx = g.ctx();
    const u128 q = ctx->size();
    u128 qd = 1;
    for (int i = 0; i < g.degree(); ++i) {
        if (qd > u128(~u64(0))) raise(ErrorKind::BadRange, "multiplicative order exceeds 64 bits");
        qd *= q;
    }
    if (qd - 1 > u128(~u64(0))) raise(ErrorKind::BadRange, "multiplicative order exceeds 64 bits");
    u64 e = static_cast<u64>(qd - 1);
    const Poly x = Poly::x(ctx);
    for (const auto& [r, mult] : factor_u64(e)) {
        (void)mult;
        while (e % r == 0 && x.powmod(e / r, g).is_one()) e /= r;
    }
    return e;
}

/// Period of the prime-power polynomial g^c: ord(x mod g) * p^ceil(log_p c).
inline u64 prime_power_poly_period(const Poly& g, u32 c) {
    u64 e = order_of_x_mod_irreducible(g);
    u64 pk = pth_power_at_least(g.ctx()->characteristic(), c);
    if (e > ~u64(0) / pk) raise(ErrorKind::BadRange, "polynomial period overflows 64 bits");
    return e * pk;
}

/// Merge raw entries into a canonical cycle set (sorted, duplicates fused).
inline CycleSet normalize_cycle_set(const std::vector<CycleEntry>& raw) {
    std::map<u64, u128> by_length;
    for (const auto& e : raw)
        if (e.count != 0) by_length[e.length] += e.count;
    CycleSet out;
    for (const auto& [len, cnt] : by_length) out.entries.push_back({cnt, len});
    return out;
}

/// Pairwise product rule: n1[T1] * n2[T2] = n1*n2*gcd(T1,T2) [lcm(T1,T2)].
inline std::vector<CycleEntry> combine_cycle_sets(const std::vector<CycleEntry>& a,
                                                  const std::vector<CycleEntry>& b) {
    std::vector<CycleEntry> out;
    for (const auto& ea : a)
        for (const auto& eb : b) {
            u64 g = std::gcd(ea.length, eb.length);
            u64 l = lcm_checked(ea.length, eb.length);
            u128 cnt = mul_u128_checked(mul_u128_checked(ea.count, eb.count), g);
            out.push_back({cnt, l});
        }
    return out;
}

} // namespace detail

/**
 * Smallest e >= 1 with f | x^e - 1, for monic f with f(0) != 0. Computed per
 * irreducible-power factor from the factored group order q^d - 1, never by
 * scanning candidate exponents.
 */
inline u64 poly_period(const Poly& f) {
    if (f.is_zero()) raise(ErrorKind::ZeroPolynomial, "the zero polynomial has no period");
    if (!f.is_monic()) raise(ErrorKind::BadRange, "poly_period expects a monic polynomial");
    if (f.is_constant()) return 1;
    if (f.coeff(0).is_zero())
        raise(ErrorKind::SingularPolynomial, "x divides f, so f never divides x^e - 1");
    u64 total = 1;
    for (const auto& [g, c] : factor_poly(f).factors)
        total = lcm_checked(total, detail::prime_power_poly_period(g, c));
    return total;
}

/**
 * Cycle set of the permutation induced by a non-singular A on GF(q)^n, built
 * from the elementary divisors: f^c of degree-d base with base period e
 * contributes cycles of length e_j = e * p^ceil(log_p j) counting
 * (q^(jd) - q^((j-1)d)) / e_j for j = 1..c, plus the zero fixed point;
 * independent divisors combine by the gcd/lcm product rule.
 */
inline CycleSet cycle_set(const Mat& A, u64 seed = 0) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "cycle_set needs a square matrix");
    if (det(A).is_zero()) raise(ErrorKind::SingularMatrix, "cycle_set needs a non-singular matrix");
    const u128 q = A.ctx()->size();
    const u64 p = A.ctx()->characteristic();

    std::vector<CycleEntry> acc{{1, 1}};  // the zero state
    for (const auto& [f, c] : elementary_divisors(A, seed)) {
        const u64 e = detail::order_of_x_mod_irreducible(f);
        u128 qd = 1;  // q^degree(f)
        for (int i = 0; i < f.degree(); ++i) qd = mul_u128_checked(qd, q);

        std::vector<CycleEntry> block{{1, 1}};
        u128 prev = 1;  // q^((j-1)d)
        for (u32 j = 1; j <= c; ++j) {
            u128 cur = mul_u128_checked(prev, qd);
            u64 pk = detail::pth_power_at_least(p, j);
            if (e > ~u64(0) / pk) raise(ErrorKind::BadRange, "cycle length overflows 64 bits");
            u64 len = e * pk;
            block.push_back({(cur - prev) / len, len});
            prev = cur;
        }
        acc = detail::combine_cycle_sets(acc, block);
    }
    return detail::normalize_cycle_set(acc);
}

/**
 * Smallest T >= 1 with A^T x = x for non-singular A: the period of the
 * minimal polynomial annihilating x relative to A.
 */
inline u64 vector_orbit_length(const Mat& A, const std::vector<FE>& x) {
    if (!A.is_square() || A.rows() != x.size())
        raise(ErrorKind::BadRange, "vector_orbit_length needs a square matrix and a matching vector");
    if (det(A).is_zero())
        raise(ErrorKind::SingularMatrix, "orbit lengths are defined for non-singular systems");
    return poly_period(krylov_annihilator(A, x));
}

/**
 * A vector whose orbit length under non-singular A is exactly T, or nullopt
 * when no such vector exists (T absent from the cycle set). Deterministic:
 * picks the lexicographically smallest feasible tuple of heights across the
 * primary components in canonical factor order, then the first suitable
 * canonical kernel-basis vector inside each component.
 */
inline std::optional<std::vector<FE>> find_vector_with_period(const Mat& A, u64 T, u64 seed = 0) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "find_vector_with_period needs a square matrix");
    if (T == 0) raise(ErrorKind::BadRange, "orbit lengths are positive");
    if (det(A).is_zero())
        raise(ErrorKind::SingularMatrix, "orbit lengths are defined for non-singular systems");
    const FieldCtxPtr& ctx = A.ctx();
    const u32 n = A.rows();

    std::vector<FE> zero(n, FE::zero(ctx));
    if (T == 1) return zero;

    // Distinct irreducible factors of the minimal polynomial with their
    // maximal heights, in canonical factor order.
    struct Component {
        Poly f;
        u64 base_period = 0;
        u32 max_height = 0;
        std::vector<std::pair<u32, u64>> options;  // (height, its orbit-length contribution)
    };
    std::vector<Component> comps;
    for (const auto& [f, c] : elementary_divisors(A, seed)) {
        if (!comps.empty() && comps.back().f == f)
            comps.back().max_height = std::max(comps.back().max_height, c);
        else
            comps.push_back({f, detail::order_of_x_mod_irreducible(f), c, {}});
    }
    for (auto& comp : comps) {
        comp.options.emplace_back(0, 1);
        u64 seen = 1;
        for (u32 h = 1; h <= comp.max_height; ++h) {
            u64 contrib = detail::prime_power_poly_period(comp.f, h);
            if (contrib == seen) continue;  // same contribution, larger height: never preferred
            seen = contrib;
            if (T % contrib == 0) comp.options.emplace_back(h, contrib);
        }
    }

    // Depth-first search for the lexicographically smallest height tuple
    // whose contributions have lcm exactly T (all contributions divide T,
    // so the lcm can only grow toward T).
    std::vector<u32> heights(comps.size(), 0), best;
    std::function<bool(size_t, u64)> dfs = [&](size_t i, u64 l) {
        if (i == comps.size()) {
            if (l != T) return false;
            best = heights;
            return true;
        }
        for (const auto& [h, contrib] : comps[i].options) {
            heights[i] = h;
            if (dfs(i + 1, lcm_checked(l, contrib))) return true;
        }
        return false;
    };
    if (!dfs(0, 1)) return std::nullopt;

    // Assemble a witness: inside each primary component take the first
    // canonical kernel-basis vector of f(A)^h that has exact height h.
    std::vector<FE> x = zero;
    for (size_t i = 0; i < comps.size(); ++i) {
        u32 h = best[i];
        if (h == 0) continue;
        Mat P = eval_poly(comps[i].f, A);
        Mat Ph = P.pow(h), Plow = P.pow(h - 1);
        std::vector<FE> pick = zero;
        for (const auto& v : kernel_basis(Ph)) {
            if (!vector_is_zero(Plow.apply(v))) {
                pick = v;
                break;
            }
        }
        if (vector_is_zero(pick))
            raise(ErrorKind::VerificationFailed, "no vector of the required height in a primary component");
        for (u32 j = 0; j < n; ++j) x[j] = x[j] + pick[j];
    }
    if (vector_orbit_length(A, x) != T)
        raise(ErrorKind::VerificationFailed, "constructed vector has the wrong orbit length");
    return x;
}

} // namespace pfss

#endif // PFSS_LFSS_HPP
