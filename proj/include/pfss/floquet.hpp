/**
 * @file floquet.hpp
 * @brief Change of state that turns a periodic system into a shift-invariant
 *        one: the transform matrices P(k) built from an N-th root of the
 *        monodromy, the equivalent shift-invariant matrix, the Van Dooren
 *        rank condition, and state-space extension to a larger field.
 *
 * Matrix N-th roots themselves (with existence certificates) live in
 * root.hpp; this header consumes a root and produces the transform.
 */
#ifndef PFSS_FLOQUET_HPP
#define PFSS_FLOQUET_HPP

#include <utility>
#include <vector>

#include "pfss/root.hpp"
#include "pfss/system.hpp"

namespace pfss {

/**
 * A periodic change of state x~(k) = P(k) x(k) under which the system
 * becomes x~(k+1) = A~ x~(k), with P(0) = I.  Valid data satisfies
 * P(k+1 mod N) * A(k) * P(k)^-1 = A~ for every k, and A~^N equals the
 * monodromy matrix; the context may be a proper extension of the system's
 * base field.
 */
struct FloquetData {
    Mat A_tilde;        ///< shift-invariant system matrix (N-th root of the monodromy)
    FieldCtxPtr ctx;    ///< field of the transform, possibly an extension
    std::vector<Mat> P; ///< P(0..N-1); P(0) is the identity
};

/**
 * Build the periodic transform from an N-th root of the monodromy via
 * P(0) = I, P(i) = A~ * P(i-1) * A(i-1)^-1.  Every conjugation identity
 * (including the wrap-around at k = N-1, which encodes the closure
 * P(N) = P(0)) is re-verified before the data is returned.
 *
 * Raises SingularSystem when a phase matrix is not invertible and
 * RootMismatch when A~^N differs from the monodromy.
 */
inline FloquetData floquet_transform(const Pfss& sys, const Mat& A_tilde) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "the periodic transform needs invertible phase matrices");
    if (!A_tilde.is_square() || A_tilde.rows() != sys.dim())
        raise(ErrorKind::BadRange, "root matrix size does not match the system dimension");

    const u64 N = sys.period();
    const FieldCtxPtr& ctx = A_tilde.ctx();
    Mat Phi = monodromy(sys).embedded(ctx);
    if (A_tilde.pow(N) != Phi)
        raise(ErrorKind::RootMismatch, "matrix is not an N-th root of the monodromy");

    std::vector<Mat> P{Mat::identity(ctx, sys.dim())};
    for (u64 i = 1; i < N; ++i)
        P.push_back(A_tilde * P[i - 1] * inverse(sys.matrix(i - 1).embedded(ctx)));

    for (u64 k = 0; k < N; ++k) {
        Mat lhs = P[size_t((k + 1) % N)] * sys.matrix(k).embedded(ctx);
        if (lhs != A_tilde * P[size_t(k)])
            raise(ErrorKind::VerificationFailed, "periodic transform failed its conjugation identity");
    }
    return {A_tilde, ctx, std::move(P)};
}

/**
 * System matrix of the equivalent shift-invariant system x~(k+1) = A~ x~(k).
 * Since P(0) = I, the equivalent initial condition is x~(0) = x(0) itself
 * (read in the transform's field).
 */
inline const Mat& equivalent_lfss(const FloquetData& fd) { return fd.A_tilde; }

/**
 * Rank test of Van Dooren and Sreedhar: for each window length i = 1..n the
 * rank of the i-fold product A(j+i-1)...A(j) must not depend on the starting
 * phase j.  Over the reals this characterizes the existence of a periodic
 * transform; over finite fields it is necessary but not sufficient.
 */
inline bool van_dooren_condition(const Pfss& sys) {
    const u64 N = sys.period();
    for (u32 i = 1; i <= sys.dim(); ++i) {
        u32 first = 0;
        for (u64 j = 0; j < N; ++j) {
            u32 r = rank(transition(sys, j + i, j));
            if (j == 0)
                first = r;
            else if (r != first)
                return false;
        }
    }
    return true;
}

/**
 * The same periodic system with its state space enlarged to an extension
 * field: matrices are embedded entry-wise, and every analysis (orbits,
 * histograms, transforms) can be re-run over the larger field.  Raises
 * NotAnExtension when the target does not extend the system's field.
 */
inline Pfss extend_system(const Pfss& sys, const FieldCtxPtr& target) {
    return Pfss(target, sys.matrices());
}

} // namespace pfss

#endif // PFSS_FLOQUET_HPP
