/**
 * @file smith.hpp
 * @brief Invariant factors and elementary divisors of a square matrix via
 *        the Smith normal form of xI - M over the univariate polynomial
 *        ring, using monic-pivot reduction so the output is canonical.
 */
#ifndef PFSS_SMITH_HPP
#define PFSS_SMITH_HPP

#include "factor.hpp"
#include "linalg.hpp"

namespace pfss {

namespace detail {

/// Smith normal form of a square polynomial matrix (in place); returns the
/// diagonal. Entries end up monic (or zero) with each dividing the next.
inline std::vector<Poly> poly_smith_diagonal(std::vector<std::vector<Poly>> P) {
    const size_t n = P.size();
    const FieldCtxPtr ctx = n ? P[0][0].ctx() : nullptr;
    for (size_t t = 0; t < n; ++t) {
        // find a nonzero entry of minimal degree in the trailing submatrix
        auto find_pivot = [&]() -> std::pair<size_t, size_t> {
            size_t bi = n, bj = n;
            int best = -1;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (P[i][j].is_zero()) continue;
                    if (best < 0 || P[i][j].degree() < best) {
                        best = P[i][j].degree();
                        bi = i;
                        bj = j;
                    }
                }
            return {bi, bj};
        };
        auto [pi, pj] = find_pivot();
        if (pi == n) break; // trailing block is zero
        std::swap(P[pi], P[t]);
        for (size_t i = 0; i < n; ++i) std::swap(P[i][pj], P[i][t]);

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column t by row operations, promoting any remainder
            for (size_t i = t + 1; i < n; ++i) {
                if (P[i][t].is_zero()) continue;
                auto [q, r] = Poly::divmod(P[i][t], P[t][t]);
                for (size_t j = t; j < n; ++j) P[i][j] = P[i][j] - q * P[t][j];
                if (!r.is_zero()) {
                    std::swap(P[i], P[t]);
                    clean = false;
                }
            }
            // clear row t by column operations
            for (size_t j = t + 1; j < n; ++j) {
                if (P[t][j].is_zero()) continue;
                auto [q, r] = Poly::divmod(P[t][j], P[t][t]);
                for (size_t i = t; i < n; ++i) P[i][j] = P[i][j] - q * P[i][t];
                if (!r.is_zero()) {
                    for (size_t i = 0; i < n; ++i) std::swap(P[i][j], P[i][t]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce divisibility of every trailing entry by the pivot
            for (size_t i = t + 1; i < n && clean; ++i)
                for (size_t j = t + 1; j < n && clean; ++j) {
                    if ((P[i][j] % P[t][t]).is_zero()) continue;
                    for (size_t k = t; k < n; ++k) P[t][k] = P[t][k] + P[i][k];
                    clean = false;
                }
        }
        P[t][t] = P[t][t].monic();
    }
    std::vector<Poly> diag;
    diag.reserve(n);
    for (size_t i = 0; i < n; ++i) diag.push_back(P[i][i]);
    return diag;
}

} // namespace detail

/**
 * Invariant factors of M: the nonconstant diagonal of the Smith normal form
 * of xI - M, in divisibility order (each divides the next; the last is the
 * minimal polynomial; the product is the characteristic polynomial).
 */
inline std::vector<Poly> invariant_factors(const Mat& M) {
    if (!M.is_square()) raise(ErrorKind::BadRange, "invariant factors need a square matrix");
    const u32 n = M.rows();
    const FieldCtxPtr& ctx = M.ctx();
    std::vector<std::vector<Poly>> P(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) {
            P[i][j] = Poly::constant(-M.at(i, j));
            if (i == j) P[i][j] = P[i][j] + Poly::x(ctx);
        }
    std::vector<Poly> out;
    for (auto& d : detail::poly_smith_diagonal(std::move(P)))
        if (d.degree() > 0) out.push_back(std::move(d));
    return out;
}

/**
 * Elementary divisors of M: the prime-power pieces f^e of the invariant
 * factors, canonically sorted by (irreducible base, exponent).
 */
inline std::vector<PolyPower> elementary_divisors(const Mat& M, u64 seed = 0) {
    std::vector<PolyPower> out;
    for (const auto& inv : invariant_factors(M))
        for (const auto& [f, e] : factor_poly(inv, seed).factors) out.push_back({f, e});
    std::sort(out.begin(), out.end(), [](const PolyPower& a, const PolyPower& b) {
        int c = Poly::compare(a.base, b.base);
        return c != 0 ? c < 0 : a.exponent < b.exponent;
    });
    return out;
}

} // namespace pfss

#endif // PFSS_SMITH_HPP
