/**
 * @file jordan.hpp
 * @brief Jordan canonical form over the splitting field of the
 *        characteristic polynomial. The base tower is extended step by step
 *        (always by the canonically first nonlinear irreducible factor), so
 *        the result is deterministic for a fixed seed.
 *
 * Conventions: eigenvalues are sorted by canonical element index; blocks of
 * one eigenvalue by descending size; J carries 1s on the superdiagonal; the
 * returned transform satisfies S · M_embedded · S⁻¹ = J (equivalently
 * S⁻¹ · J · S reassembles the embedded input).
 */
#ifndef PFSS_JORDAN_HPP
#define PFSS_JORDAN_HPP

#include <algorithm>

#include "smith.hpp"

namespace pfss {

struct JordanBlock {
    FE eigenvalue;
    u32 size = 0;
};

struct JordanDecomposition {
    FieldCtxPtr splitting_ctx; ///< tower extending the input context
    Mat embedded;              ///< the input matrix over splitting_ctx
    Mat J;                     ///< Jordan matrix, superdiagonal-1 convention
    Mat S;                     ///< S · embedded · S⁻¹ = J
    std::vector<JordanBlock> blocks; ///< (eigenvalue index asc, size desc)
};

/// Smallest tower extension of M's context that splits charpoly(M), found by
/// repeatedly adjoining a root of the canonically first nonlinear factor.
inline FieldCtxPtr splitting_context(const Mat& M, u64 seed = 0) {
    FieldCtxPtr ctx = M.ctx();
    Mat W = M;
    while (true) {
        auto fac = factor_poly(charpoly(W), seed);
        const Poly* nonlinear = nullptr;
        for (const auto& pp : fac.factors)
            if (pp.base.degree() >= 2) {
                nonlinear = &pp.base;
                break;
            }
        if (!nonlinear) return ctx;
        ctx = extend_field(ctx, *nonlinear);
        W = W.embedded(ctx);
    }
}

inline JordanDecomposition jordan_form(const Mat& M, u64 seed = 0) {
    if (!M.is_square()) raise(ErrorKind::BadRange, "Jordan form needs a square matrix");
    const u32 n = M.rows();
    FieldCtxPtr ctx = splitting_context(M, seed);
    Mat W = M.ctx()->same_as(*ctx) ? M : M.embedded(ctx);

    // eigenvalues with algebraic multiplicities, sorted by canonical index
    std::vector<std::pair<FE, u32>> eigen;
    for (const auto& [f, m] : factor_poly(charpoly(W), seed).factors) {
        if (f.degree() != 1) raise(ErrorKind::VerificationFailed, "characteristic polynomial failed to split");
        eigen.push_back({-f.coeff(0), m});
    }
    std::sort(eigen.begin(), eigen.end(),
              [](const auto& a, const auto& b) { return a.first.index() < b.first.index(); });

    JordanDecomposition out{ctx, W, Mat(ctx, n, n), Mat(ctx, n, n), {}};
    std::vector<std::vector<FE>> columns; // chain vectors in final block order
    for (const auto& [lambda, mult] : eigen) {
        Mat B = W;
        for (u32 i = 0; i < n; ++i) B.at(i, i) = B.at(i, i) - lambda;

        // nullity profile of powers of B until the generalized eigenspace fills
        std::vector<u32> nullity{0};
        std::vector<Mat> Bpow{Mat::identity(ctx, n)};
        while (nullity.back() < mult) {
            if (nullity.size() > n + 1) raise(ErrorKind::VerificationFailed, "nullity profile failed to stabilize");
            Bpow.push_back(Bpow.back() * B);
            nullity.push_back(n - rank(Bpow.back()));
        }
        const u32 smax = u32(nullity.size()) - 1;
        auto blocks_geq = [&](u32 j) -> u32 { return j > smax ? 0 : nullity[j] - nullity[j - 1]; };

        // build Jordan chains top-down, choosing canonical kernel vectors
        std::vector<std::vector<std::vector<FE>>> chains; // chains[i] = top..bottom
        std::vector<size_t> active;
        for (u32 j = smax; j >= 1; --j) {
            for (size_t ci : active) {
                auto& ch = chains[ci];
                ch.push_back(B.apply(ch.back()));
            }
            std::vector<std::vector<FE>> span_cols = kernel_basis(Bpow[j - 1]);
            for (size_t ci : active) span_cols.push_back(chains[ci].back());
            u32 need = blocks_geq(j) - blocks_geq(j + 1);
            for (const auto& v : kernel_basis(Bpow[j])) {
                if (need == 0) break;
                if (in_span(span_cols, v, ctx)) continue;
                span_cols.push_back(v);
                active.push_back(chains.size());
                chains.push_back({v});
                --need;
            }
            if (need != 0) raise(ErrorKind::VerificationFailed, "Jordan chain extension failed");
        }
        // chains were created tallest-first; emit blocks in that order
        for (const auto& ch : chains) {
            out.blocks.push_back({lambda, u32(ch.size())});
            for (size_t i = ch.size(); i-- > 0;) columns.push_back(ch[i]); // bottom-up: v_1 .. v_h
        }
    }

    // assemble J and the basis matrix Q (columns = chain vectors)
    Mat Q(ctx, n, n);
    u32 col = 0;
    for (const auto& blk : out.blocks) {
        for (u32 i = 0; i < blk.size; ++i, ++col) {
            for (u32 r = 0; r < n; ++r) Q.at(r, col) = columns[col][r];
            out.J.at(col, col) = blk.eigenvalue;
            if (i + 1 < blk.size) out.J.at(col, col + 1) = FE::one(ctx);
        }
    }
    out.S = inverse(Q); // W·Q = Q·J  ⇒  S·W·S⁻¹ = J with S = Q⁻¹
    return out;
}

} // namespace pfss

#endif // PFSS_JORDAN_HPP
