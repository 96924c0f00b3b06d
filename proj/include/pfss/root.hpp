/**
 * @file root.hpp
 * @brief N-th roots of non-singular matrices over finite fields, decided per
 *        Jordan block over the splitting field:
 *
 *        1. Jordan-decompose; write N = p^a · N′ with gcd(N′, p) = 1.
 *        2. Diagonalizable: root each eigenvalue (inverse Frobenius for the
 *           p-part, minimal extension for the N′-part) and conjugate back.
 *        3. gcd(N, p) = 1: per block J(λ, s), take λ^{1/N}·Z where Z solves
 *           Z^N = I + ν/λ by Newton iteration in the commutative algebra of
 *           the nilpotent part (N·Z^{N-1} is a unit there).
 *        4. p | N with minpoly = charpoly and a block of size ≥ 2: no root
 *           exists over any extension — a root commutes with the matrix,
 *           hence is a polynomial in it, but p-th powers of polynomials in
 *           a nilpotent kill the low nilpotent degrees. A machine-checkable
 *           certificate is attached.
 *        5. Otherwise undetermined (repeated blocks with p | N can admit
 *           non-polynomial roots), optionally resolved for tiny state spaces
 *           by exhaustive search over the base field.
 */
#ifndef PFSS_ROOT_HPP
#define PFSS_ROOT_HPP

#include <optional>

#include "jordan.hpp"
#include "multiplicative.hpp"

namespace pfss {

enum class RootStatus { Root, NoRoot, Undetermined };

/// Certificate for the nonexistence argument of branch 4; every field is
/// independently recomputable from the matrix and N.
struct NoRootCertificate {
    Poly characteristic;
    Poly minimal;
    u64 p = 0;          ///< field characteristic, divides N
    u64 n_value = 0;    ///< the N of the query
    u32 max_block = 0;  ///< a Jordan block size >= 2 witnessing non-semisimplicity
};

struct RootResult {
    RootStatus status = RootStatus::Undetermined;
    Mat root;                 ///< meaningful only when status == Root
    FieldCtxPtr ctx;          ///< context of `root` (extends the input context)
    std::string reason;       ///< machine-readable slug / human note otherwise
    std::optional<NoRootCertificate> certificate;
};

namespace detail {

/// Newton solve of Z^N = U where U = I + (nilpotent), gcd(N, char) = 1.
inline Mat nilpotent_shifted_root(const Mat& U, u64 N) {
    const FieldCtxPtr& ctx = U.ctx();
    const u32 s = U.rows();
    FE Nf = FE::from_int(ctx, N % ctx->characteristic());
    Mat Z = Mat::identity(ctx, s);
    for (u32 iter = 0; iter <= 2 * s + 4; ++iter) {
        Mat F = Z.pow(N) - U;
        if (F.is_zero()) return Z;
        Mat D = Nf * Z.pow(N - 1);
        Z = Z - F * inverse(D);
    }
    raise(ErrorKind::VerificationFailed, "Newton iteration for the block root failed to terminate");
}

/// q^cells when that stays within cap, nullopt otherwise (no overflow).
inline std::optional<u128> bounded_state_count(u128 q, u32 cells, u64 cap) {
    u128 total = 1;
    for (u32 i = 0; i < cells; ++i) {
        if (total > cap) return std::nullopt;
        total *= q;  // total <= cap < 2^64 and q <= 2^64, so the product fits u128
    }
    if (total > cap) return std::nullopt;
    return total;
}

/// Exhaustive search for X with X^N = Phi over Phi's own context.
inline std::optional<Mat> exhaustive_matrix_root(const Mat& Phi, u64 N, u64 cap_states) {
    const u32 n = Phi.rows();
    const FieldCtxPtr& ctx = Phi.ctx();
    auto counted = bounded_state_count(ctx->size(), n * n, cap_states);
    if (!counted) return std::nullopt;
    const u128 total = *counted;
    const u128 q = ctx->size();
    std::vector<u64> digits(size_t(n) * n, 0);
    const u64 qm = static_cast<u64>(q);
    Mat X(ctx, n, n);
    for (u128 counter = 0; counter < total; ++counter) {
        for (u32 i = 0; i < n; ++i)
            for (u32 j = 0; j < n; ++j) X.at(i, j) = FE::from_index(ctx, digits[size_t(i) * n + j]);
        if (X.pow(N) == Phi) return X;
        for (size_t k = 0; k < digits.size(); ++k) {
            if (++digits[k] < qm) break;
            digits[k] = 0;
        }
    }
    return std::nullopt;
}

} // namespace detail

/**
 * Decide and (when possible) produce a canonical N-th root of a non-singular
 * square matrix, extending the field as needed. `search_base_field` enables
 * the bounded exhaustive fallback for otherwise-undetermined cases
 * (dimension <= 3 and at most `cap_states` candidate matrices).
 */
inline RootResult matrix_nth_root(const Mat& Phi, u64 N, u64 seed = 0, bool search_base_field = false,
                                  u64 cap_states = u64(1) << 24, u64 cap_extension = 0) {
    if (!Phi.is_square()) raise(ErrorKind::BadRange, "matrix root needs a square matrix");
    if (N == 0) raise(ErrorKind::BadRange, "0th root is undefined");
    if (det(Phi).is_zero()) raise(ErrorKind::SingularMatrix, "matrix root requires a non-singular matrix");
    const u32 n = Phi.rows();
    if (N == 1) return {RootStatus::Root, Phi, Phi.ctx(), "identity-power", std::nullopt};

    const u64 p = Phi.ctx()->characteristic();
    auto [a, n_prime] = split_prime_power(N, p);

    JordanDecomposition jd = jordan_form(Phi, seed);
    bool diagonalizable = true;
    u32 max_block = 1;
    for (const auto& b : jd.blocks) {
        max_block = std::max(max_block, b.size);
        if (b.size > 1) diagonalizable = false;
    }

    if (diagonalizable || a == 0) {
        // chain eigenvalue-root extensions through one growing tower
        FieldCtxPtr work = jd.splitting_ctx;
        std::vector<FE> roots;
        roots.reserve(jd.blocks.size());
        for (const auto& b : jd.blocks) {
            FE r = element_nth_root(b.eigenvalue.embedded(work), N, seed, cap_extension);
            work = r.ctx();
            roots.push_back(r);
        }
        Mat XJ(work, n, n);
        u32 col = 0;
        for (size_t i = 0; i < jd.blocks.size(); ++i) {
            const auto& b = jd.blocks[i];
            FE r = roots[i].embedded(work);
            if (b.size == 1) {
                XJ.at(col, col) = r;
                col += 1;
            } else {
                // branch 3: λ^{1/N} · Z with Z^N = I + ν/λ in the block algebra
                FE lam_inv = b.eigenvalue.embedded(work).inverse();
                Mat U = Mat::identity(work, b.size);
                for (u32 k = 0; k + 1 < b.size; ++k) U.at(k, k + 1) = lam_inv;
                Mat Z = detail::nilpotent_shifted_root(U, N);
                Mat X = r * Z;
                for (u32 ri = 0; ri < b.size; ++ri)
                    for (u32 ci = 0; ci < b.size; ++ci) XJ.at(col + ri, col + ci) = X.at(ri, ci);
                col += b.size;
            }
        }
        Mat S = jd.S.embedded(work);
        Mat root = inverse(S) * XJ * S;
        if (root.pow(N) != Phi.embedded(work))
            raise(ErrorKind::VerificationFailed, "computed matrix root failed its defining equation");
        return {RootStatus::Root, root, work, diagonalizable ? "diagonalizable" : "unit-nilpotent-lift",
                std::nullopt};
    }

    // p | N from here on, with at least one block of size >= 2
    Poly cp = charpoly(Phi), mp = minpoly(Phi);
    if (cp == mp) {
        NoRootCertificate cert{cp, mp, p, N, max_block};
        return {RootStatus::NoRoot, Mat(), nullptr, "nonderogatory-p-divides-N", cert};
    }

    std::string reason = "repeated invariant factors with p | N: per-block nonexistence does not globalize";
    if (search_base_field && n <= 3) {
        if (detail::bounded_state_count(Phi.ctx()->size(), n * n, cap_states)) {
            auto found = detail::exhaustive_matrix_root(Phi, N, cap_states);
            if (found) return {RootStatus::Root, *found, Phi.ctx(), "exhaustive-base-field", std::nullopt};
            reason += "; exhaustive base-field search found none (extensions unexplored)";
        } else {
            reason += "; base-field search skipped (state count above cap)";
        }
    }
    return {RootStatus::Undetermined, Mat(), nullptr, reason, std::nullopt};
}

} // namespace pfss

#endif // PFSS_ROOT_HPP
