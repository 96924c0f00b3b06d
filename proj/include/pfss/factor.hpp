/**
 * @file factor.hpp
 * @brief Univariate polynomial factorization over finite fields:
 *        squarefree decomposition (characteristic-aware), distinct-degree
 *        splitting by iterated Frobenius, and equal-degree splitting
 *        (probabilistic with a seeded generator, so runs are reproducible).
 *        Also: Rabin irreducibility test, seeded search for an irreducible
 *        polynomial of given degree, and the checked field-extension entry
 *        point built on it.
 *
 * All Frobenius powers x^{q^k} are computed as k·m successive p-th powers
 * (q = p^m), so exponents never need more than 64 bits regardless of field
 * size.
 */
#ifndef PFSS_FACTOR_HPP
#define PFSS_FACTOR_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "poly.hpp"

namespace pfss {

namespace detail {

/// g ↦ g^q mod f via m successive p-th powers (q = p^m = field size).
inline Poly frobenius_mod(const Poly& g, const Poly& f) {
    const u64 p = f.ctx()->characteristic();
    const u32 m = f.ctx()->abs_degree();
    Poly h = g % f;
    for (u32 i = 0; i < m; ++i) h = h.powmod(p, f);
    return h;
}

/// Coefficient-wise unique p-th root: g(x^p) ↦ g(x).
inline Poly pth_root_of_pth_power(const Poly& f) {
    const u64 p = f.ctx()->characteristic();
    std::vector<FE> v;
    v.reserve(size_t(f.degree()) / p + 1);
    for (u32 i = 0; i <= u32(f.degree()); i += u32(p)) v.push_back(f.coeff(i).inv_frobenius());
    return Poly(f.ctx(), std::move(v));
}

} // namespace detail

/// One irreducible factor with its multiplicity.
struct PolyPower {
    Poly base;
    u32 exponent = 0;
};

/**
 * Squarefree decomposition of a monic polynomial: pairwise-coprime monic
 * squarefree parts with their multiplicities (characteristic-p aware: the
 * p-th-power part is recursed on after taking coefficient-wise p-th roots).
 * Multiplicity order is not canonical here; full factorization sorts.
 */
inline std::vector<PolyPower> squarefree_decomposition(const Poly& f_in) {
    if (f_in.is_zero()) raise(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
    Poly f = f_in.monic();
    std::vector<PolyPower> out;
    if (f.degree() == 0) return out;
    const u64 p = f.ctx()->characteristic();

    Poly df = f.derivative();
    if (df.is_zero()) {
        // f is a p-th power
        for (auto& [g, m] : squarefree_decomposition(detail::pth_root_of_pth_power(f)))
            out.push_back({g, m * u32(p)});
        return out;
    }
    Poly c = Poly::gcd(f, df);
    Poly w = f / c;
    u32 i = 1;
    while (w.degree() > 0) {
        Poly y = Poly::gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.push_back({z.monic(), i});
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_decomposition(detail::pth_root_of_pth_power(c)))
            out.push_back({g, m * u32(p)});
    }
    return out;
}

/// (factor, degree) pairs from distinct-degree splitting of a monic squarefree f.
inline std::vector<std::pair<Poly, u32>> distinct_degree_split(const Poly& f_in) {
    Poly f = f_in.monic();
    std::vector<std::pair<Poly, u32>> out;
    Poly h = Poly::x(f.ctx()) % f;
    u32 d = 0;
    while (f.degree() > 0 && 2 * (d + 1) <= u32(f.degree())) {
        ++d;
        h = detail::frobenius_mod(h, f);
        Poly g = Poly::gcd(h - Poly::x(f.ctx()), f);
        if (g.degree() > 0) {
            out.push_back({g, d});
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back({f, u32(f.degree())});
    return out;
}

namespace detail {

inline Poly random_poly_below(const FieldCtxPtr& ctx, u32 degree_bound, std::mt19937_64& rng) {
    const u64 q_minus = static_cast<u64>(ctx->size() - 1); // field size - 1 fits u64
    std::vector<FE> v;
    v.reserve(degree_bound);
    for (u32 i = 0; i < degree_bound; ++i) {
        u64 idx = q_minus == ~u64(0) ? rng() : rng() % (q_minus + 1);
        v.push_back(FE::from_index(ctx, idx));
    }
    return Poly(ctx, std::move(v));
}

/// Equal-degree splitting of monic squarefree f, all of whose irreducible
/// factors have degree d. Appends the factors to out.
inline void equal_degree_split(const Poly& f, u32 d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (u32(f.degree()) == d) {
        out.push_back(f.monic());
        return;
    }
    const FieldCtxPtr& ctx = f.ctx();
    const u64 p = ctx->characteristic();
    const u32 m = ctx->abs_degree();
    Poly splitter = Poly::zero(ctx);
    while (true) {
        Poly r = random_poly_below(ctx, u32(f.degree()), rng);
        if (r.degree() < 1) continue;
        Poly g = Poly::gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (p == 2) {
            // trace map over F_2: T(r) = Σ_{i<d·m} r^{2^i} mod f
            Poly t = Poly::zero(ctx), ri = r % f;
            for (u32 i = 0; i < d * m; ++i) {
                t = (t + ri) % f;
                ri = ri.powmod(2, f);
            }
            g = Poly::gcd(t, f);
        } else {
            // norm-then-(q-1)/2: s = (Π_{i<d} r^{q^i})^{(q-1)/2} mod f
            Poly prod = Poly::one(ctx), ri = r % f;
            for (u32 i = 0; i < d; ++i) {
                prod = (prod * ri) % f;
                if (i + 1 < d) ri = frobenius_mod(ri, f);
            }
            const u64 half = (static_cast<u64>(ctx->size() - 1)) / 2;
            Poly s = prod.powmod(half, f);
            g = Poly::gcd(s - Poly::one(ctx), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    equal_degree_split(splitter, d, rng, out);
    equal_degree_split(f / splitter, d, rng, out);
}

} // namespace detail

/**
 * Full factorization of a nonzero polynomial into monic irreducibles with
 * multiplicities, sorted canonically (degree, then coefficient indices from
 * the top down), plus the leading unit. Reproducible for a fixed seed.
 */
struct Factorization {
    FE unit;                       ///< leading coefficient of the input
    std::vector<PolyPower> factors; ///< monic irreducibles, canonically sorted
};

inline Factorization factor_poly(const Poly& f, u64 seed = 0) {
    if (f.is_zero()) raise(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    Factorization out{f.leading(), {}};
    for (const auto& [sq, mult] : squarefree_decomposition(f)) {
        for (const auto& [part, d] : distinct_degree_split(sq)) {
            std::vector<Poly> irr;
            detail::equal_degree_split(part, d, rng, irr);
            for (auto& g : irr) out.factors.push_back({std::move(g), mult});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PolyPower& a, const PolyPower& b) { return Poly::compare(a.base, b.base) < 0; });
    return out;
}

/// Roots in the coefficient field with multiplicities, sorted by canonical index.
inline std::vector<std::pair<FE, u32>> poly_roots(const Poly& f, u64 seed = 0) {
    std::vector<std::pair<FE, u32>> out;
    for (const auto& [g, m] : factor_poly(f, seed).factors)
        if (g.degree() == 1) out.push_back({-g.coeff(0), m}); // monic x + c ⇒ root -c
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first.index() < b.first.index(); });
    return out;
}

/// Deterministic Rabin irreducibility test.
inline bool is_irreducible(const Poly& f_in) {
    if (f_in.degree() < 1) return false;
    Poly f = f_in.monic();
    const u32 n = u32(f.degree());
    if (n == 1) return true;
    // x^{q^n} ≡ x (mod f), and gcd(x^{q^{n/r}} - x, f) = 1 for prime r | n
    Poly h = Poly::x(f.ctx()) % f;
    std::vector<Poly> frob_powers{h}; // frob_powers[k] = x^{q^k} mod f
    for (u32 k = 1; k <= n; ++k) frob_powers.push_back(detail::frobenius_mod(frob_powers.back(), f));
    if (frob_powers[n] != frob_powers[0]) return false;
    for (const auto& [r, e] : factor_u64(n)) {
        (void)e;
        Poly g = Poly::gcd(frob_powers[n / u32(r)] - frob_powers[0], f);
        if (g.degree() != 0) return false;
    }
    return true;
}

/**
 * Seeded search for a monic irreducible polynomial of the given degree
 * (>= 1). Identical seeds give identical results.
 */
inline Poly find_irreducible(const FieldCtxPtr& ctx, u32 degree, u64 seed = 0) {
    if (degree == 0) raise(ErrorKind::BadRange, "irreducible degree must be positive");
    if (degree == 1) return Poly::x(ctx);
    std::mt19937_64 rng(seed ^ 0xda942042e4dd58b5ull);
    while (true) {
        Poly lower = detail::random_poly_below(ctx, degree, rng);
        Poly f = Poly::monomial(FE::one(ctx), degree) + lower;
        if (f.coeff(0).is_zero()) continue; // divisible by x
        if (is_irreducible(f)) return f;
    }
}

/**
 * Checked tower extension: adjoin a root of `modulus` (monic after
 * normalization, degree >= 2, irreducible over `parent`).
 */
inline FieldCtxPtr extend_field(const FieldCtxPtr& parent, const Poly& modulus) {
    if (!modulus.ctx()->same_as(*parent))
        raise(ErrorKind::FieldMismatch, "modulus is not over the parent context");
    if (modulus.degree() < 2) raise(ErrorKind::BadRange, "extension modulus must have degree at least 2");
    Poly m = modulus.monic();
    if (!is_irreducible(m)) raise(ErrorKind::NotIrreducible, "extension modulus is reducible");
    std::vector<std::vector<u64>> lower;
    lower.reserve(size_t(m.degree()));
    for (u32 i = 0; i < u32(m.degree()); ++i) lower.push_back(m.coeff(i).flat());
    return FieldCtx::extended(parent, u32(m.degree()), std::move(lower));
}

} // namespace pfss

#endif // PFSS_FACTOR_HPP
