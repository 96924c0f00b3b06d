/**
 * @file analysis.hpp
 * @brief Orbit-structure analysis of periodic systems through their
 *        equivalent shift-invariant system: per-state orbit lengths with an
 *        exactness classification, whole-space orbit censuses, search for
 *        initial conditions of prescribed period, fixed-point structure,
 *        and an aggregate report.
 */
#ifndef PFSS_ANALYSIS_HPP
#define PFSS_ANALYSIS_HPP

#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "pfss/floquet.hpp"

namespace pfss {

/// How an orbit length was established.
enum class OrbitClassification {
    Exact,           ///< theorem-backed: prime N and x0 outside the classification subspace
    ResolvedByOracle ///< divisor bound narrowed to the exact value by simulation
};

/// Orbit length of one initial condition, with its provenance.
struct OrbitLength {
    u64 length = 0;       ///< exact temporal period of the trajectory
    OrbitClassification classification = OrbitClassification::ResolvedByOracle;
    u64 shift_period = 0; ///< orbit length of x~(0) under the shift-invariant matrix
    u64 bound = 0;        ///< lcm(shift_period, N); the period always divides this
};

/**
 * Orbit length of x0 via the equivalent shift-invariant system: compute the
 * orbit length T of x~(0) = x(0) under A~, bound the period by lcm(T, N),
 * and return the exact value.  For prime N with x0 outside the
 * classification subspace the bound itself is exact; otherwise the exact
 * value is resolved by simulation (the bound is only a divisor bound).
 */
inline OrbitLength orbit_length(const Pfss& sys, const std::vector<FE>& x0,
                                const std::optional<FloquetData>& fd) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "orbit length needs an invertible system");
    if (!fd) raise(ErrorKind::MissingFloquet, "orbit length needs the shift-invariant form");
    if (x0.size() != sys.dim())
        raise(ErrorKind::BadRange, "initial condition has the wrong dimension");

    const u64 N = sys.period();
    OrbitLength out;
    out.shift_period = vector_orbit_length(fd->A_tilde, embed_vector(x0, fd->ctx));
    out.bound = lcm_checked(out.shift_period, N);

    if (is_prime_u64(N) && !in_span(subspace_A(sys), x0, sys.ctx())) {
        out.length = out.bound;
        out.classification = OrbitClassification::Exact;
        return out;
    }
    out.length = simulate_orbit(sys, x0).period;
    out.classification = OrbitClassification::ResolvedByOracle;
    return out;
}

/// Whole-space orbit census: exact counts plus the prime-period shortcut.
struct OrbitCensus {
    CycleSet closed_orbits;            ///< closed trajectories by period, from enumeration
    std::map<u64, u128> histogram;     ///< initial conditions by period
    std::optional<CycleSet> derived_from_lfss; ///< shortcut output, when its hypotheses hold
    bool derived_matches = true;       ///< shortcut equals enumeration (when present)
};

/**
 * Count every closed trajectory by period.  A closed trajectory of period T
 * passes through lcm(T,N)/N distinct initial conditions, so closed-orbit
 * counts follow from the period histogram by division.
 *
 * When the system has a base-field shift-invariant form, prime N, and a
 * trivial classification subspace, the census also derives the counts
 * directly from the cycle set of A~ (each shift orbit of length T becomes a
 * closed trajectory of period N*T, and fixed points other than zero become
 * trajectories of period N) and reports whether that derivation matches
 * the enumeration.
 */
inline OrbitCensus all_orbits(const Pfss& sys, const std::optional<FloquetData>& fd,
                              u64 cap_states = u64(1) << 24) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "orbit census needs an invertible system");

    const u64 N = sys.period();
    OrbitCensus out;
    out.histogram = period_histogram(sys, cap_states);

    std::vector<CycleEntry> orbits;
    for (const auto& [T, count] : out.histogram) {
        u64 span = lcm_checked(T, N) / N; // initial conditions per closed trajectory
        orbits.push_back({count / span, T});
    }
    out.closed_orbits = detail::normalize_cycle_set(orbits);

    const bool base_field = fd && fd->ctx->same_as(*sys.ctx());
    if (base_field && is_prime_u64(N) && subspace_A(sys).empty()) {
        CycleSet shift_cycles = cycle_set(fd->A_tilde);
        std::vector<CycleEntry> derived{{1, 1}};
        for (const auto& e : shift_cycles.entries) {
            if (e.length == 1) {
                if (e.count > 1) derived.push_back({e.count - 1, N});
            } else {
                u128 period = u128(N) * e.length;
                if (period > ~u64(0)) raise(ErrorKind::BadRange, "derived period overflows");
                derived.push_back({e.count, static_cast<u64>(period)});
            }
        }
        out.derived_from_lfss = detail::normalize_cycle_set(derived);
        out.derived_matches = (*out.derived_from_lfss == out.closed_orbits);
    }
    return out;
}

/**
 * Find an initial condition whose trajectory has period exactly L, or
 * nothing when no state attains L.  Periods of the equivalent
 * shift-invariant system are searched through every divisor d of L with
 * lcm(d, N) = L; a witness x~(0) maps back as x(0) = x~(0) since P(0) = I
 * (over the transform's field, which may extend the base).  Every witness
 * is re-verified by simulation before it is returned; a witness that fails
 * verification is a broken invariant and raises VerificationFailed.
 */
inline std::optional<std::vector<FE>> find_initial_condition(
    const Pfss& sys, const std::optional<FloquetData>& fd, u64 L, u64 seed = 0) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "initial-condition search needs an invertible system");
    if (!fd) raise(ErrorKind::MissingFloquet, "initial-condition search needs the shift-invariant form");
    if (L == 0) raise(ErrorKind::BadRange, "prescribed period must be positive");

    const u64 N = sys.period();
    if (L == 1) return std::vector<FE>(sys.dim(), FE::zero(sys.ctx()));

    Pfss verify_sys = fd->ctx->same_as(*sys.ctx()) ? sys : Pfss(fd->ctx, sys.matrices());
    // Under these hypotheses every non-zero witness must verify, so a
    // mismatch is a broken invariant; outside them a witness can
    // legitimately close early (its trajectory may sit inside the
    // classification subspace) and the candidate is simply exhausted.
    const bool guaranteed = is_prime_u64(N) && subspace_A(sys).empty();

    auto check = [&](const std::vector<FE>& witness) {
        if (simulate_orbit(verify_sys, witness).period == L) return true;
        if (guaranteed)
            raise(ErrorKind::VerificationFailed,
                  "initial-condition witness failed its simulation check");
        return false;
    };

    for (u64 d : divisors_u64(L)) {
        if (lcm_checked(d, N) != L) continue;

        if (d == 1) {
            // Non-zero fixed vectors of A~ (the period-d witness search
            // would return zero for d = 1, which only attains L = 1).
            Mat shifted = fd->A_tilde - Mat::identity(fd->ctx, sys.dim());
            for (const auto& v : kernel_basis(shifted))
                if (check(v)) return v;
        } else {
            auto witness = find_vector_with_period(fd->A_tilde, d, seed);
            if (witness && check(*witness)) return witness;
        }
    }
    return std::nullopt;
}

/// Fixed-point structure and the period-1-or-N lemma pair.
struct FixedPointReport {
    std::vector<std::vector<FE>> fixed_basis; ///< basis of the common fixed space of all A(k)
    bool all_in_subspace = true;       ///< every fixed point lies in the classification subspace
    bool fixed_to_shift_lemma = true;  ///< fixed points have shift-orbit length 1 or N
    bool shift_to_fixed_lemma = true;  ///< A~-fixed vectors have trajectory period 1 or N
};

namespace detail {

/// Visit the non-zero vectors of a spanned subspace, up to cap_vectors.
template <typename Fn>
inline void for_each_nonzero_combination(const std::vector<std::vector<FE>>& basis,
                                         const FieldCtxPtr& ctx, u64 cap_vectors, Fn&& fn) {
    if (basis.empty()) return;
    u128 total = 1;
    for (size_t i = 0; i < basis.size() && total <= cap_vectors; ++i) total *= ctx->size();
    if (total > cap_vectors) {
        for (const auto& v : basis) fn(v); // basis representatives only
        return;
    }
    const u64 q = static_cast<u64>(ctx->size());
    std::vector<FE> combo(basis[0].size(), FE::zero(ctx));
    for (u64 code = 1; code < static_cast<u64>(total); ++code) {
        u64 rem = code;
        for (auto& c : combo) c = FE::zero(ctx);
        for (const auto& v : basis) {
            FE scale = FE::from_index(ctx, rem % q);
            rem /= q;
            for (size_t i = 0; i < combo.size(); ++i) combo[i] = combo[i] + scale * v[i];
        }
        fn(combo);
    }
}

} // namespace detail

/**
 * Enumerate the fixed points of the periodic system (states fixed by every
 * phase matrix), confirm they lie in the classification subspace, and
 * confirm the lemma pair: fixed points have shift-orbit length 1 or N, and
 * A~-fixed vectors have trajectory period 1 or N.  The lemmas are theorems
 * for prime N; for other N the flags are computed but not guaranteed.
 * Subspaces larger than 4096 vectors are checked on basis vectors only.
 */
inline FixedPointReport fixed_point_analysis(const Pfss& sys,
                                             const std::optional<FloquetData>& fd) {
    if (!is_nonsingular(sys))
        raise(ErrorKind::SingularSystem, "fixed-point analysis needs an invertible system");
    if (!fd) raise(ErrorKind::MissingFloquet, "fixed-point analysis needs the shift-invariant form");

    const u64 N = sys.period();
    FixedPointReport rep;

    std::vector<Mat> shifted;
    for (const auto& A : sys.matrices())
        shifted.push_back(A - Mat::identity(sys.ctx(), sys.dim()));
    rep.fixed_basis = kernel_basis(vstack(shifted));

    auto subspace = subspace_A(sys);
    for (const auto& v : rep.fixed_basis)
        if (!in_span(subspace, v, sys.ctx())) rep.all_in_subspace = false;

    detail::for_each_nonzero_combination(
        rep.fixed_basis, sys.ctx(), 4096, [&](const std::vector<FE>& x) {
            u64 t = vector_orbit_length(fd->A_tilde, embed_vector(x, fd->ctx));
            if (t != 1 && t != N) rep.fixed_to_shift_lemma = false;
        });

    Pfss verify_sys = fd->ctx->same_as(*sys.ctx()) ? sys : Pfss(fd->ctx, sys.matrices());
    Mat shift_fixed = fd->A_tilde - Mat::identity(fd->ctx, sys.dim());
    detail::for_each_nonzero_combination(
        kernel_basis(shift_fixed), fd->ctx, 4096, [&](const std::vector<FE>& x) {
            u64 t = simulate_orbit(verify_sys, x).period;
            if (t != 1 && t != N) rep.shift_to_fixed_lemma = false;
        });
    return rep;
}

/// Aggregate of every analysis this library performs on one system.
struct AnalysisReport {
    bool nonsingular = false;
    Mat monodromy;
    std::vector<std::vector<FE>> subspace_basis;
    bool van_dooren = false;
    std::optional<RootResult> root;          ///< absent for singular systems
    std::optional<FloquetData> floquet;      ///< present when a root was found
    std::optional<CycleSet> shift_cycles;    ///< cycle set of A~ over its field
    std::optional<std::map<u64, u128>> histogram; ///< absent beyond cap_states
    std::optional<CycleSet> closed_orbits;
    std::optional<TheoremCheck> theorem;
};

/**
 * Run the full pipeline: non-singularity, monodromy, classification
 * subspace, rank condition, root search, transform, cycle sets, exhaustive
 * orbit census, and theorem checks.  Exhaustive parts are skipped (left
 * empty) when the state space exceeds cap_states; everything else is exact.
 */
inline AnalysisReport analyze(const Pfss& sys, u64 cap_states = u64(1) << 24,
                              u64 seed = 0, u64 cap_extension = 0) {
    AnalysisReport rep;
    rep.nonsingular = is_nonsingular(sys);
    rep.monodromy = monodromy(sys);
    rep.subspace_basis = subspace_A(sys);
    rep.van_dooren = van_dooren_condition(sys);
    if (!rep.nonsingular) return rep;

    rep.root = matrix_nth_root(rep.monodromy, sys.period(), seed, false, cap_states, cap_extension);
    std::optional<FloquetData> fd;
    if (rep.root->status == RootStatus::Root) {
        fd = floquet_transform(sys, rep.root->root);
        rep.floquet = fd;
        rep.shift_cycles = cycle_set(fd->A_tilde, seed);
    }

    u128 states = 1;
    for (u32 i = 0; i < sys.dim() && states <= cap_states; ++i) states *= sys.ctx()->size();
    if (states <= cap_states) {
        OrbitCensus census = all_orbits(sys, fd, cap_states);
        rep.histogram = std::move(census.histogram);
        rep.closed_orbits = std::move(census.closed_orbits);
        rep.theorem = check_coprime_theorem(sys, cap_states);
    }
    return rep;
}

} // namespace pfss

#endif // PFSS_ANALYSIS_HPP
