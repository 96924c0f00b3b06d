/**
 * @file system.hpp
 * @brief Periodic finite state systems x(k+1) = A(k mod N) x(k) over a
 *        finite field: validation, transition products, the classification
 *        subspace (intersection of pairwise difference kernels), exact orbit
 *        simulation, whole-space period histograms, and the coprimality
 *        theorems relating orbit periods to the system period.
 */
#ifndef PFSS_SYSTEM_HPP
#define PFSS_SYSTEM_HPP

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pfss/lfss.hpp"

namespace pfss {

/// Periodically time-varying linear system over a finite field.
class Pfss {
  public:
    Pfss(FieldCtxPtr ctx, std::vector<Mat> matrices) : ctx_(std::move(ctx)) {
        if (matrices.empty()) raise(ErrorKind::BadRange, "a periodic system needs at least one matrix");
        dim_ = matrices[0].rows();
        for (auto& m : matrices) {
            if (!m.is_square() || m.rows() != dim_)
                raise(ErrorKind::BadRange, "system matrices must be square and equally sized");
            mats_.push_back(m.ctx()->same_as(*ctx_) ? std::move(m) : m.embedded(ctx_));
        }
    }

    static Pfss from_ints(const FieldCtxPtr& ctx,
                          const std::vector<std::vector<std::vector<u64>>>& grids) {
        std::vector<Mat> mats;
        for (const auto& g : grids) mats.push_back(Mat::from_ints(ctx, g));
        return Pfss(ctx, std::move(mats));
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    u32 dim() const { return dim_; }
    u64 period() const { return mats_.size(); }
    /// A(k) with the index reduced modulo the system period.
    const Mat& matrix(u64 k) const { return mats_[k % mats_.size()]; }
    const std::vector<Mat>& matrices() const { return mats_; }

  private:
    FieldCtxPtr ctx_;
    std::vector<Mat> mats_;
    u32 dim_ = 0;
};

/// One closed trajectory: states x(0..T) with x(T) = x(0), T the exact
/// temporal period (the smallest shift fixing the whole state sequence).
struct Trajectory {
    std::vector<std::vector<FE>> states;
    u64 period = 0;
};

/// Outcome of a theorem sweep over the whole state space.
struct TheoremCheck {
    bool pass = true;
    std::string violated;     ///< empty when pass
    std::vector<FE> witness;  ///< offending initial condition when !pass
};

inline bool is_nonsingular(const Pfss& sys) {
    for (const auto& m : sys.matrices())
        if (det(m).is_zero()) return false;
    return true;
}

/// State transition matrix S(k1, k0) = A(k1-1) ... A(k0); S(k, k) = I.
inline Mat transition(const Pfss& sys, u64 k1, u64 k0) {
    if (k1 < k0) raise(ErrorKind::BadRange, "transition needs k1 >= k0");
    Mat acc = Mat::identity(sys.ctx(), sys.dim());
    for (u64 k = k0; k < k1; ++k) acc = sys.matrix(k) * acc;
    return acc;
}

/// Monodromy matrix: the transition product over one full period.
inline Mat monodromy(const Pfss& sys) { return transition(sys, sys.period(), 0); }

/**
 * Canonical basis of the classification subspace: the intersection of the
 * kernels of all pairwise differences A(i) - A(j), i < j. For period 1 the
 * intersection is empty and the subspace is the full state space.
 */
inline std::vector<std::vector<FE>> subspace_A(const Pfss& sys) {
    const u64 N = sys.period();
    const u32 n = sys.dim();
    if (N == 1) {
        std::vector<std::vector<FE>> basis;
        for (u32 i = 0; i < n; ++i) {
            std::vector<FE> e(n, FE::zero(sys.ctx()));
            e[i] = FE::one(sys.ctx());
            basis.push_back(std::move(e));
        }
        return basis;
    }
    std::vector<Mat> diffs;
    for (u64 i = 0; i < N; ++i)
        for (u64 j = i + 1; j < N; ++j) diffs.push_back(sys.matrix(i) - sys.matrix(j));
    return kernel_basis(vstack(diffs));
}

namespace detail {

inline bool same_state(const std::vector<FE>& a, const std::vector<FE>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

/// Primitive period of a cyclic word: smallest divisor d of the word length
/// under which the word is invariant to a cyclic shift by d.
template <typename T>
inline u64 cyclic_word_period(const std::vector<T>& w, u64 align) {
    const u64 L = w.size();
    for (u64 d : divisors_u64(L)) {
        if (lcm_checked(d, align) != L) continue;  // period T always has lcm(T, N) = L
        bool ok = true;
        for (u64 k = 0; ok && k < L; ++k) ok = w[size_t((k + d) % L)] == w[k];
        if (ok) return d;
    }
    return L;
}

/// Number of states q^n when it is at most cap; raises StateSpaceTooLarge.
inline u64 checked_state_count(const Pfss& sys, u64 cap_states) {
    u128 total = 1;
    for (u32 i = 0; i < sys.dim(); ++i) {
        total *= sys.ctx()->size();
        if (total > cap_states)
            raise(ErrorKind::StateSpaceTooLarge, "state space exceeds the enumeration cap");
    }
    return static_cast<u64>(total);
}

/**
 * Visit every cycle of the combined (state, phase) dynamics of a
 * non-singular system exactly once. The callback receives the encoded state
 * word over one full cycle (length a multiple of N, starting at phase 0)
 * and the word's primitive temporal period.
 */
template <typename Fn>
inline void for_each_cylinder_cycle(const Pfss& sys, u64 cap_states, Fn&& fn) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "whole-space sweeps need a non-singular system");
    const FieldCtxPtr& ctx = sys.ctx();
    const u32 n = sys.dim();
    const u64 N = sys.period();
    const u64 qn = checked_state_count(sys, cap_states);
    const u64 q = ctx->size_u64();

    auto decode = [&](u64 idx) {
        std::vector<FE> x;
        for (u32 i = 0; i < n; ++i) {
            x.push_back(FE::from_index(ctx, idx % q));
            idx /= q;
        }
        return x;
    };
    auto encode = [&](const std::vector<FE>& x) {
        u64 idx = 0;
        for (u32 i = n; i-- > 0;) idx = idx * q + x[i].index();
        return idx;
    };

    std::vector<bool> visited(qn, false);
    for (u64 s = 0; s < qn; ++s) {
        if (visited[s]) continue;
        std::vector<u64> word;
        std::vector<FE> x = decode(s);
        u64 cur = s;
        do {
            for (u64 ph = 0; ph < N; ++ph) {
                word.push_back(cur);
                x = sys.matrix(ph).apply(x);
                cur = encode(x);
            }
        } while (cur != s);
        for (size_t i = 0; i < word.size(); i += N) visited[word[i]] = true;
        fn(std::as_const(word), cyclic_word_period(word, N), decode);
    }
}

} // namespace detail

/**
 * Exact closed orbit of x0: follow the time-varying dynamics to the first
 * return of (state, phase), then extract the smallest shift T fixing the
 * whole state sequence ("x(k) = x(k+T) for all k", not merely a state
 * revisit at a mismatched phase). With step_cap = 0 the walk is bounded by
 * q^n * N, which a non-singular system cannot exceed.
 */
inline Trajectory simulate_orbit(const Pfss& sys, const std::vector<FE>& x0_in, u64 step_cap = 0) {
    if (x0_in.size() != sys.dim())
        raise(ErrorKind::BadRange, "initial condition has the wrong dimension");
    const u64 N = sys.period();
    std::vector<FE> x0 = embed_vector(x0_in, sys.ctx());

    u64 cap = step_cap;
    if (cap == 0) {
        u128 bound = N;
        for (u32 i = 0; i < sys.dim(); ++i) {
            bound *= sys.ctx()->size();
            if (bound > ~u64(0)) {
                bound = ~u64(0);
                break;
            }
        }
        cap = static_cast<u64>(bound);
    }

    std::vector<std::vector<FE>> states{x0};
    u64 L = 0;
    for (u64 k = 0; L == 0; ++k) {
        if (k >= cap)
            raise(ErrorKind::StepCapExceeded, "orbit did not close within the step cap");
        states.push_back(sys.matrix(k).apply(states.back()));
        if ((k + 1) % N == 0 && detail::same_state(states.back(), x0)) L = k + 1;
    }

    std::vector<std::vector<FE>> word(states.begin(), states.begin() + size_t(L));
    u64 T = detail::cyclic_word_period(word, N);
    states.resize(size_t(T) + 1);
    return {std::move(states), T};
}

/**
 * Temporal period of every initial condition in GF(q)^n, as a map from
 * period to the number of initial conditions attaining it; total mass q^n.
 */
inline std::map<u64, u128> period_histogram(const Pfss& sys, u64 cap_states = u64(1) << 24) {
    std::map<u64, u128> hist;
    const u64 N = sys.period();
    detail::for_each_cylinder_cycle(sys, cap_states,
                                    [&](const std::vector<u64>& word, u64 t0, const auto&) {
                                        hist[t0] += word.size() / N;
                                    });
    return hist;
}

/**
 * Whole-space verification of the period/classification theorems: a
 * trajectory that leaves the classification subspace has gcd(T, N) != 1,
 * every fixed point lies inside the subspace, and for prime N every initial
 * condition outside the subspace has a period divisible by N.
 */
inline TheoremCheck check_coprime_theorem(const Pfss& sys, u64 cap_states = u64(1) << 24) {
    TheoremCheck rep;
    const u64 N = sys.period();
    const bool n_prime = is_prime_u64(N);
    auto basis = subspace_A(sys);

    detail::for_each_cylinder_cycle(
        sys, cap_states, [&](const std::vector<u64>& word, u64 t0, const auto& decode) {
            if (!rep.pass) return;
            bool whole_in_subspace = true;
            for (u64 k = 0; whole_in_subspace && k < t0; ++k)
                whole_in_subspace = in_span(basis, decode(word[size_t(k)]), sys.ctx());

            if (t0 == 1 && !whole_in_subspace) {
                rep = {false, "a fixed point lies outside the classification subspace",
                       decode(word[0])};
                return;
            }
            if (!whole_in_subspace && std::gcd(t0, N) == 1) {
                rep = {false,
                       "a trajectory leaving the classification subspace has period coprime to N",
                       decode(word[0])};
                return;
            }
            if (n_prime && t0 % N != 0) {
                for (size_t j = 0; j < word.size(); j += N) {
                    if (!in_span(basis, decode(word[j]), sys.ctx())) {
                        rep = {false,
                               "prime N: an initial condition outside the classification "
                               "subspace has a period not divisible by N",
                               decode(word[j])};
                        return;
                    }
                }
            }
        });
    return rep;
}

} // namespace pfss

#endif // PFSS_SYSTEM_HPP
