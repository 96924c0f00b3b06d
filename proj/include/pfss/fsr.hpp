/**
 * @file fsr.hpp
 * @brief Compositional feedback shift registers: a linear master register
 *        drives the coefficients of a Fibonacci- or Galois-style slave
 *        register, whose state map is a periodic finite state system.
 */
#ifndef PFSS_FSR_HPP
#define PFSS_FSR_HPP

#include <utility>
#include <variant>
#include <vector>

#include "pfss/system.hpp"

namespace pfss {

/// Linear master register: y(k+1) = M y(k) from a fixed initial state.
struct MasterLfsr {
    FieldCtxPtr ctx;
    Mat transition;
    std::vector<FE> init;
};

/// One coefficient feed of the slave: a master coordinate or a constant.
using Feed = std::variant<u32, FE>;

inline Feed feed_master(u32 coordinate) { return Feed{coordinate}; }
inline Feed feed_constant(FE value) { return Feed{std::move(value)}; }

enum class PfsrKind { Fibonacci, Galois };

/// Periodic feedback shift register: slave style and length, plus the
/// wiring that maps master coordinates (or constants) onto slave
/// coefficients.  Wiring slot j feeds the bottom-row coefficient of
/// column j (Fibonacci) or the first-column coefficient of row j (Galois).
struct PfsrSpec {
    PfsrKind kind = PfsrKind::Fibonacci;
    MasterLfsr master;
    u32 slave_dim = 0;
    std::vector<Feed> wiring;
};

/// Master trajectory over one full period.
struct MasterOrbit {
    std::vector<std::vector<FE>> states; ///< y(0), ..., y(N-1)
    u64 period = 0;
};

/**
 * Iterate the master until it returns to its initial state.  A state that
 * never returns (possible only for singular transitions, whose trajectories
 * may enter a cycle by a tail) is detected after one sweep of the state
 * space, bounded by `cap`.
 */
inline MasterOrbit master_orbit(const MasterLfsr& m, u64 cap = u64(1) << 24) {
    if (!m.transition.is_square())
        raise(ErrorKind::BadRange, "master transition must be square");
    if (!m.ctx->same_as(*m.transition.ctx()))
        raise(ErrorKind::BadRange, "master transition lives in a different field");
    if (m.init.size() != m.transition.rows())
        raise(ErrorKind::BadRange, "master initial state has the wrong dimension");

    u128 bound = 1;
    for (u32 i = 0; i < m.transition.rows() && bound <= cap; ++i) bound *= m.ctx->size();
    const u64 limit = bound <= cap ? static_cast<u64>(bound) : cap;

    MasterOrbit out;
    std::vector<FE> y = m.init;
    do {
        out.states.push_back(y);
        y = m.transition.apply(y);
        if (++out.period > limit)
            raise(ErrorKind::NotPeriodic, "master state does not return to its start");
    } while (y != m.init);
    return out;
}

namespace detail {

inline FE feed_value(const Feed& f, const std::vector<FE>& y, const FieldCtxPtr& ctx) {
    if (std::holds_alternative<u32>(f)) {
        u32 i = std::get<u32>(f);
        if (i >= y.size())
            raise(ErrorKind::WiringError, "feed reads a master coordinate out of range");
        return y[i];
    }
    const FE& c = std::get<FE>(f);
    if (!c.ctx()->same_as(*ctx))
        raise(ErrorKind::WiringError, "feed constant lives in a different field");
    return c;
}

} // namespace detail

/**
 * Extract the slave's periodic system.  One phase matrix per master state:
 * Fibonacci slaves shift upward with the wired coefficients across the
 * bottom row; Galois slaves carry the superdiagonal and place the wired
 * coefficients down the first column (bottom-right entry zero, matching
 * the transition map x_n' = y_n x_1).  A phase matrix is singular exactly
 * when its wired corner coefficient vanishes; singular phases are built
 * as-is and left to the analyses to reject.
 */
inline Pfss build_pfss(const PfsrSpec& spec) {
    if (spec.slave_dim == 0) raise(ErrorKind::BadRange, "slave dimension must be positive");
    if (spec.wiring.size() != spec.slave_dim)
        raise(ErrorKind::WiringError, "wiring must provide one feed per slave coefficient");

    MasterOrbit mo = master_orbit(spec.master);
    const FieldCtxPtr& ctx = spec.master.ctx;
    const u32 n = spec.slave_dim;

    std::vector<Mat> mats;
    for (u64 k = 0; k < mo.period; ++k) {
        Mat A(ctx, n, n);
        for (u32 i = 0; i + 1 < n; ++i) A.at(i, i + 1) = FE::one(ctx);
        for (u32 j = 0; j < n; ++j) {
            FE w = detail::feed_value(spec.wiring[j], mo.states[k], ctx);
            if (spec.kind == PfsrKind::Fibonacci)
                A.at(n - 1, j) = w;
            else
                A.at(j, 0) = w;
        }
        mats.push_back(std::move(A));
    }
    return Pfss(ctx, mats);
}

/**
 * Run the slave from x0 and emit the tapped coordinate of x(k) for
 * k = 0 .. steps-1.  The emitted sequence's period divides the trajectory
 * period.
 */
inline std::vector<FE> keystream(const PfsrSpec& spec, const std::vector<FE>& x0,
                                 u64 steps, u32 tap) {
    Pfss sys = build_pfss(spec);
    if (tap >= sys.dim()) raise(ErrorKind::BadRange, "tap coordinate out of range");
    if (x0.size() != sys.dim())
        raise(ErrorKind::BadRange, "slave initial state has the wrong dimension");
    for (const auto& c : x0)
        if (!c.ctx()->same_as(*sys.ctx()))
            raise(ErrorKind::BadRange, "slave initial state lives in a different field");

    std::vector<FE> out;
    out.reserve(steps);
    std::vector<FE> x = x0;
    for (u64 k = 0; k < steps; ++k) {
        out.push_back(x[tap]);
        x = sys.matrix(k).apply(x);
    }
    return out;
}

} // namespace pfss

#endif // PFSS_FSR_HPP
