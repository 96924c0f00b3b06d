/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over finite fields: reduced row echelon
 *        form, rank, determinant, inverse, linear solve, canonical kernel
 *        bases, characteristic polynomial (Hessenberg reduction), minimal
 *        polynomial and per-vector annihilators (Krylov), and polynomial
 *        evaluation at a matrix.
 *
 * Canonical kernel basis: from the RREF, one basis vector per free column in
 * ascending column order, carrying 1 in its own free coordinate, the negated
 * RREF entries in the pivot coordinates, and 0 elsewhere. All routines that
 * pick "the first" kernel vector rely on this ordering.
 */
#ifndef PFSS_LINALG_HPP
#define PFSS_LINALG_HPP

#include <optional>

#include "matrix.hpp"
#include "poly.hpp"

namespace pfss {

/// Reduced row echelon form along with the pivot column indices.
struct Echelon {
    Mat R;
    std::vector<u32> pivots;
    u32 rank = 0;
};

inline Echelon rref(const Mat& A) {
    Echelon e{A, {}, 0};
    Mat& R = e.R;
    u32 r = 0;
    for (u32 c = 0; c < A.cols() && r < A.rows(); ++c) {
        u32 piv = r;
        while (piv < A.rows() && R.at(piv, c).is_zero()) ++piv;
        if (piv == A.rows()) continue;
        if (piv != r)
            for (u32 j = 0; j < A.cols(); ++j) std::swap(R.at(piv, j), R.at(r, j));
        FE inv = R.at(r, c).inverse();
        for (u32 j = c; j < A.cols(); ++j) R.at(r, j) = R.at(r, j) * inv;
        for (u32 i = 0; i < A.rows(); ++i) {
            if (i == r || R.at(i, c).is_zero()) continue;
            FE f = R.at(i, c);
            for (u32 j = c; j < A.cols(); ++j) R.at(i, j) = R.at(i, j) - f * R.at(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.rank = r;
    return e;
}

inline u32 rank(const Mat& A) { return rref(A).rank; }

inline FE det(const Mat& A) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "determinant of a non-square matrix");
    Mat M = A;
    const u32 n = A.rows();
    FE d = FE::one(A.ctx());
    for (u32 c = 0; c < n; ++c) {
        u32 piv = c;
        while (piv < n && M.at(piv, c).is_zero()) ++piv;
        if (piv == n) return FE::zero(A.ctx());
        if (piv != c) {
            for (u32 j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(c, j));
            d = -d;
        }
        d = d * M.at(c, c);
        FE inv = M.at(c, c).inverse();
        for (u32 i = c + 1; i < n; ++i) {
            if (M.at(i, c).is_zero()) continue;
            FE f = M.at(i, c) * inv;
            for (u32 j = c; j < n; ++j) M.at(i, j) = M.at(i, j) - f * M.at(c, j);
        }
    }
    return d;
}

inline Mat inverse(const Mat& A) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "inverse of a non-square matrix");
    const u32 n = A.rows();
    Mat aug(A.ctx(), n, 2 * n);
    for (u32 i = 0; i < n; ++i) {
        for (u32 j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = FE::one(A.ctx());
    }
    Echelon e = rref(aug);
    if (e.rank < n || e.pivots[n - 1] != n - 1) raise(ErrorKind::SingularMatrix, "matrix is singular");
    Mat inv(A.ctx(), n, n);
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) inv.at(i, j) = e.R.at(i, n + j);
    return inv;
}

/// Canonical basis of the right kernel {x : A·x = 0}; empty if A is injective.
inline std::vector<std::vector<FE>> kernel_basis(const Mat& A) {
    Echelon e = rref(A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (u32 p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<FE>> basis;
    for (u32 f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<FE> x(A.cols(), FE::zero(A.ctx()));
        x[f] = FE::one(A.ctx());
        for (u32 i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.R.at(i, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// One solution of A·x = b (free variables set to 0), or nullopt if none.
inline std::optional<std::vector<FE>> solve(const Mat& A, const std::vector<FE>& b) {
    if (b.size() != A.rows()) raise(ErrorKind::BadRange, "right-hand side length mismatch");
    Mat aug(A.ctx(), A.rows(), A.cols() + 1);
    for (u32 i = 0; i < A.rows(); ++i) {
        for (u32 j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i].ctx()->same_as(*A.ctx()) ? b[i] : b[i].embedded(A.ctx());
    }
    Echelon e = rref(aug);
    for (u32 p : e.pivots)
        if (p == A.cols()) return std::nullopt;
    std::vector<FE> x(A.cols(), FE::zero(A.ctx()));
    for (u32 i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.R.at(i, A.cols());
    return x;
}

/// Product of the factors in the order given (dimension-checked by *).
inline Mat matmul_chain(const std::vector<Mat>& factors) {
    if (factors.empty()) raise(ErrorKind::BadRange, "matmul_chain of nothing");
    Mat acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
    return acc;
}

/// Stack matrices vertically (all must share column count and context).
inline Mat vstack(const std::vector<Mat>& parts) {
    if (parts.empty()) raise(ErrorKind::BadRange, "vstack of nothing");
    u32 rows = 0;
    for (const auto& m : parts) {
        if (m.cols() != parts[0].cols()) raise(ErrorKind::BadRange, "vstack column mismatch");
        rows += m.rows();
    }
    Mat out(parts[0].ctx(), rows, parts[0].cols());
    u32 r = 0;
    for (const auto& m : parts) {
        for (u32 i = 0; i < m.rows(); ++i, ++r)
            for (u32 j = 0; j < m.cols(); ++j) out.at(r, j) = m.at(i, j);
    }
    return out;
}

/// Horner evaluation f(A) for square A.
inline Mat eval_poly(const Poly& f, const Mat& A) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "polynomial evaluation needs a square matrix");
    Mat acc(A.ctx(), A.rows(), A.rows());
    for (size_t i = f.coeffs().size(); i-- > 0;) {
        acc = acc * A;
        FE c = f.coeff(u32(i));
        if (!c.is_zero())
            for (u32 d = 0; d < A.rows(); ++d) acc.at(d, d) = acc.at(d, d) + c;
    }
    return acc;
}

/// Characteristic polynomial det(xI - A), monic, via Hessenberg reduction.
inline Poly charpoly(const Mat& A) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "characteristic polynomial needs a square matrix");
    const u32 n = A.rows();
    const FieldCtxPtr& ctx = A.ctx();
    if (n == 0) return Poly::one(ctx);
    Mat H = A;
    // similarity reduction to upper Hessenberg form
    for (u32 c = 0; c + 2 < n; ++c) {
        u32 piv = c + 1;
        while (piv < n && H.at(piv, c).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (u32 j = 0; j < n; ++j) std::swap(H.at(piv, j), H.at(c + 1, j));
            for (u32 i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, c + 1));
        }
        FE inv = H.at(c + 1, c).inverse();
        for (u32 i = c + 2; i < n; ++i) {
            if (H.at(i, c).is_zero()) continue;
            FE f = H.at(i, c) * inv;
            for (u32 j = 0; j < n; ++j) H.at(i, j) = H.at(i, j) - f * H.at(c + 1, j);
            for (u32 r = 0; r < n; ++r) H.at(r, c + 1) = H.at(r, c + 1) + f * H.at(r, i);
        }
    }
    // p_m = (x - H[m-1][m-1]) p_{m-1} - Σ_k H[m-1-k][m-1] (Π_{j} H[m-j][m-j-1]) p_{m-1-k}
    std::vector<Poly> p(n + 1, Poly::one(ctx));
    for (u32 m = 1; m <= n; ++m) {
        Poly xm = Poly(ctx, {-H.at(m - 1, m - 1), FE::one(ctx)});
        p[m] = xm * p[m - 1];
        FE prod = FE::one(ctx);
        for (u32 k = 1; k < m; ++k) {
            prod = prod * H.at(m - k, m - k - 1);
            if (prod.is_zero()) break;
            FE coef = H.at(m - 1 - k, m - 1) * prod;
            if (!coef.is_zero()) p[m] = p[m] - Poly::constant(coef) * p[m - 1 - k];
        }
    }
    return p[n];
}

/// Minimal monic g with g(A)·v = 0 (g = 1 exactly when v = 0).
inline Poly krylov_annihilator(const Mat& A, const std::vector<FE>& v) {
    if (!A.is_square() || v.size() != A.rows()) raise(ErrorKind::BadRange, "annihilator dimension mismatch");
    const u32 n = A.rows();
    const FieldCtxPtr& ctx = A.ctx();
    // echelon rows over the Krylov sequence, each with its polynomial record
    struct Row {
        std::vector<FE> vec;
        std::vector<FE> poly; // vec = Σ poly[j]·A^j·v
        u32 pivot;
    };
    std::vector<Row> rows;
    std::vector<FE> cur = v;
    for (u32 k = 0; k <= n; ++k) {
        std::vector<FE> w = cur;
        std::vector<FE> poly(k + 1, FE::zero(ctx));
        poly[k] = FE::one(ctx);
        for (const Row& r : rows) {
            if (w[r.pivot].is_zero()) continue;
            FE f = w[r.pivot];
            for (u32 i = 0; i < n; ++i) w[i] = w[i] - f * r.vec[i];
            for (u32 j = 0; j < r.poly.size(); ++j) poly[j] = poly[j] - f * r.poly[j];
        }
        u32 piv = 0;
        while (piv < n && w[piv].is_zero()) ++piv;
        if (piv == n) return Poly(ctx, std::move(poly)); // monic of degree k by construction
        FE inv = w[piv].inverse();
        for (u32 i = 0; i < n; ++i) w[i] = inv * w[i];
        for (auto& c : poly) c = inv * c;
        rows.push_back({std::move(w), std::move(poly), piv});
        cur = A.apply(cur);
    }
    raise(ErrorKind::VerificationFailed, "Krylov sequence failed to terminate");
}

/// Minimal polynomial: lcm of the annihilators of the standard basis vectors.
inline Poly minpoly(const Mat& A) {
    if (!A.is_square()) raise(ErrorKind::BadRange, "minimal polynomial needs a square matrix");
    const u32 n = A.rows();
    const FieldCtxPtr& ctx = A.ctx();
    Poly m = Poly::one(ctx);
    for (u32 i = 0; i < n && m.degree() < int(n); ++i) {
        std::vector<FE> e(n, FE::zero(ctx));
        e[i] = FE::one(ctx);
        Poly g = krylov_annihilator(A, e);
        Poly d = Poly::gcd(m, g);
        m = (m * g) / d;
    }
    return m.is_zero() ? Poly::one(ctx) : m.monic();
}

/// Membership of v in the column span of basis vectors (as matrix columns).
inline bool in_span(const std::vector<std::vector<FE>>& basis, const std::vector<FE>& v,
                    const FieldCtxPtr& ctx) {
    if (vector_is_zero(v)) return true;
    if (basis.empty()) return false;
    Mat M(ctx, u32(v.size()), u32(basis.size()));
    for (u32 j = 0; j < basis.size(); ++j)
        for (u32 i = 0; i < v.size(); ++i) M.at(i, j) = basis[j][i];
    return solve(M, v).has_value();
}

} // namespace pfss

#endif // PFSS_LINALG_HPP
