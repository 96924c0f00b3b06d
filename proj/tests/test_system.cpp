// Periodic system core: transition products, classification subspace, orbit
// simulation with exact temporal periods, whole-space histograms, and the
// coprimality theorem checker.
#include "pfss/system.hpp"

#include "support.hpp"

using namespace pfss;

using testsup::column_pair_f2;
using testsup::column_weave_f5;
using testsup::echo_trap_f2;
using testsup::shear_swap_f2;
using testsup::shift_weave_f2;
using testsup::vec_of;

TEST_CASE("system construction validates shapes", "[system]") {
    auto f2 = testsup::F(2);
    CHECK_THROWS_MATCHES(Pfss(f2, {}), Error, testsup::HasKind(ErrorKind::BadRange));
    Mat sq = Mat::identity(f2, 2);
    Mat rect(f2, 2, 3);
    CHECK_THROWS_MATCHES(Pfss(f2, {sq, rect}), Error, testsup::HasKind(ErrorKind::BadRange));
    Mat big = Mat::identity(f2, 3);
    CHECK_THROWS_MATCHES(Pfss(f2, {sq, big}), Error, testsup::HasKind(ErrorKind::BadRange));

    Pfss sys = shift_weave_f2();
    CHECK(sys.period() == 3);
    CHECK(sys.dim() == 3);
    CHECK(sys.matrix(5) == sys.matrix(2)); // index wraps modulo the period
}

TEST_CASE("non-singularity means every phase matrix is invertible", "[system]") {
    CHECK(is_nonsingular(shift_weave_f2()));
    CHECK(is_nonsingular(column_weave_f5()));
    CHECK(is_nonsingular(shear_swap_f2()));
    CHECK(is_nonsingular(column_pair_f2()));

    auto f2 = testsup::F(2);
    Pfss with_zero(f2, {Mat::identity(f2, 2), Mat(f2, 2, 2)});
    CHECK_FALSE(is_nonsingular(with_zero));
}

TEST_CASE("transition products compose the phase matrices in order", "[system]") {
    Pfss sys = shift_weave_f2();
    auto f2 = sys.ctx();

    CHECK(monodromy(sys) == Mat::from_ints(f2, {{1, 1, 1}, {0, 1, 1}, {0, 1, 0}}));
    CHECK(monodromy(shear_swap_f2()) ==
          Mat::from_ints(f2, {{0, 1}, {1, 1}}));
    CHECK(monodromy(column_pair_f2()) ==
          Mat::from_ints(f2, {{1, 1}, {0, 1}}));

    Pfss lone(f2, {Mat::from_ints(f2, {{1, 1}, {0, 1}})});
    CHECK(monodromy(lone) == lone.matrix(0));

    // S(2,0) = A(1) A(0), written right-to-left.
    CHECK(transition(sys, 2, 0) == Mat::from_ints(f2, {{0, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
    CHECK(transition(sys, 2, 0) == sys.matrix(1) * sys.matrix(0));
    for (u64 k = 0; k <= 4; ++k) CHECK(transition(sys, k, k) == Mat::identity(f2, 3));
    CHECK_THROWS_MATCHES(transition(sys, 1, 2), Error, testsup::HasKind(ErrorKind::BadRange));
}

TEST_CASE("transition products satisfy the cocycle and similarity laws", "[system]") {
    std::mt19937_64 rng(411);
    auto f3 = testsup::F(3);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Mat> mats;
        u64 N = 1 + rng() % 4;
        for (u64 i = 0; i < N; ++i) mats.push_back(testsup::random_mat(f3, 3, 3, rng));
        Pfss sys(f3, std::move(mats));

        u64 c = rng() % 4, b = c + rng() % 4, a = b + rng() % 4;
        CHECK(transition(sys, a, b) * transition(sys, b, c) == transition(sys, a, c));
    }

    // One period forward from phase k is the monodromy conjugated by S(k,0).
    Pfss sys = shift_weave_f2();
    Mat Phi = monodromy(sys);
    for (u64 k = 1; k <= 3; ++k) {
        Mat Sk0 = transition(sys, k, 0);
        CHECK(transition(sys, k + sys.period(), k) * Sk0 == Sk0 * Phi);
    }
}

TEST_CASE("classification subspace is the intersection of difference kernels",
          "[system]") {
    Pfss sys = shift_weave_f2();
    auto f2 = sys.ctx();
    auto basis = subspace_A(sys);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == vec_of(f2, {1, 0, 0}));

    // All phase matrices agree on every basis vector.
    for (const auto& v : basis)
        for (u64 k = 1; k < sys.period(); ++k)
            CHECK(sys.matrix(0).apply(v) == sys.matrix(k).apply(v));

    // The swap/shear pair agrees nowhere except at zero.
    CHECK(subspace_A(shear_swap_f2()).empty());

    // The no-square-root pair agrees exactly on multiples of [1,0].
    auto pair_basis = subspace_A(column_pair_f2());
    REQUIRE(pair_basis.size() == 1);
    CHECK(pair_basis[0] == vec_of(f2, {1, 0}));

    // First-column weave over F5: the matrices differ only in their first
    // column, so they agree exactly on states with vanishing first entry.
    auto f5 = testsup::F(5);
    auto weave_basis = subspace_A(column_weave_f5());
    REQUIRE(weave_basis.size() == 2);
    CHECK(weave_basis[0] == vec_of(f5, {0, 1, 0}));
    CHECK(weave_basis[1] == vec_of(f5, {0, 0, 1}));

    // A one-matrix system varies nowhere, so the subspace is everything.
    Pfss lone(f2, {Mat::from_ints(f2, {{0, 1}, {1, 1}})});
    auto full = subspace_A(lone);
    REQUIRE(full.size() == 2);
    CHECK(full[0] == vec_of(f2, {1, 0}));
    CHECK(full[1] == vec_of(f2, {0, 1}));
}

TEST_CASE("orbit simulation reproduces hand-traced trajectories", "[system]") {
    Pfss sys = shear_swap_f2();
    auto f2 = sys.ctx();

    Trajectory t = simulate_orbit(sys, vec_of(f2, {0, 1}));
    CHECK(t.period == 6);
    REQUIRE(t.states.size() == 7);
    std::vector<std::vector<u64>> expect = {{0, 1}, {1, 1}, {1, 1}, {0, 1},
                                            {1, 0}, {1, 0}, {0, 1}};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(t.states[i] == vec_of(f2, expect[i]));

    // Every non-zero state of this system has period 6; zero is fixed.
    CHECK(simulate_orbit(sys, vec_of(f2, {1, 1})).period == 6);
    CHECK(simulate_orbit(sys, vec_of(f2, {1, 0})).period == 6);
    Trajectory z = simulate_orbit(sys, vec_of(f2, {0, 0}));
    CHECK(z.period == 1);
    REQUIRE(z.states.size() == 2);
    CHECK(z.states[0] == z.states[1]);
}

TEST_CASE("orbit simulation on the three-phase weaves", "[system]") {
    Pfss sys = shift_weave_f2();
    auto f2 = sys.ctx();
    Trajectory t = simulate_orbit(sys, vec_of(f2, {1, 0, 0}));
    CHECK(t.period == 3);
    REQUIRE(t.states.size() == 4);
    CHECK(t.states[1] == vec_of(f2, {0, 0, 1}));
    CHECK(t.states[2] == vec_of(f2, {0, 1, 0}));
    CHECK(t.states[3] == t.states[0]);

    Pfss w5 = column_weave_f5();
    auto f5 = w5.ctx();
    // Monodromy fixed vectors are the multiples of [3,0,1]; they close in
    // one cylinder pass.
    Trajectory s = simulate_orbit(w5, vec_of(f5, {3, 0, 1}));
    CHECK(s.period == 3);
    CHECK(s.states[1] == vec_of(f5, {1, 0, 3}));
    CHECK(simulate_orbit(w5, vec_of(f5, {1, 0, 0})).period == 15);
}

TEST_CASE("temporal period is the primitive shift of the whole orbit word",
          "[system]") {
    // x(2) = x(0) here, yet the trajectory only repeats after nine steps:
    // a state revisit at a non-multiple of N does not close the orbit, and
    // even the first cylinder return can overstate the period.
    Pfss sys = echo_trap_f2();
    auto f2 = sys.ctx();
    auto a = vec_of(f2, {1, 0});
    auto b = vec_of(f2, {0, 1});
    auto c = vec_of(f2, {1, 1});

    Trajectory t = simulate_orbit(sys, a);
    CHECK(t.states[2] == t.states[0]); // the trap: an early revisit...
    CHECK(t.period == 9);              // ...that does not repeat the word
    REQUIRE(t.states.size() == 10);
    std::vector<std::vector<FE>> expect = {a, b, a, b, a, b, c, c, c, a};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(t.states[i] == expect[i]);

    auto hist = period_histogram(sys);
    std::map<u64, u128> want{{1, 1}, {9, 3}};
    CHECK(hist == want);
    CHECK(check_coprime_theorem(sys).pass);
}

TEST_CASE("orbit simulation error paths", "[system]") {
    Pfss sys = shift_weave_f2();
    auto f2 = sys.ctx();
    CHECK_THROWS_MATCHES(simulate_orbit(sys, vec_of(f2, {1, 0})), Error,
                         testsup::HasKind(ErrorKind::BadRange));
    // An explicit step budget can cut off a long orbit.
    CHECK_THROWS_MATCHES(simulate_orbit(column_weave_f5(),
                                        vec_of(testsup::F(5), {1, 0, 0}), 7),
                         Error, testsup::HasKind(ErrorKind::StepCapExceeded));

    // A singular system can fall into a cycle that never returns to x0; the
    // automatic budget of q^n * N steps then reports the failure exactly.
    Pfss crush(f2, {Mat(f2, 2, 2), Mat::identity(f2, 2)});
    CHECK_THROWS_MATCHES(simulate_orbit(crush, vec_of(f2, {1, 0})), Error,
                         testsup::HasKind(ErrorKind::StepCapExceeded));
    // ...but an orbit that does close is still reported, singular or not.
    CHECK(simulate_orbit(crush, vec_of(f2, {0, 0})).period == 1);
}

TEST_CASE("period histogram counts initial conditions by temporal period",
          "[system]") {
    auto f2 = testsup::F(2);

    std::map<u64, u128> shear{{1, 1}, {6, 3}};
    CHECK(period_histogram(shear_swap_f2()) == shear);

    std::map<u64, u128> weave{{1, 1}, {3, 1}, {9, 6}};
    CHECK(period_histogram(shift_weave_f2()) == weave);

    std::map<u64, u128> pair{{1, 1}, {2, 1}, {4, 2}};
    CHECK(period_histogram(column_pair_f2()) == pair);

    std::map<u64, u128> w5{{1, 1}, {3, 4}, {15, 120}};
    CHECK(period_histogram(column_weave_f5()) == w5);

    // Identity phases freeze every state.
    auto f3 = testsup::F(3);
    Pfss frozen(f3, {Mat::identity(f3, 2), Mat::identity(f3, 2)});
    std::map<u64, u128> all_fixed{{1, 9}};
    CHECK(period_histogram(frozen) == all_fixed);
}

TEST_CASE("period histogram agrees with per-state simulation", "[system]") {
    std::mt19937_64 rng(1213);
    const std::vector<u64> primes{2, 3};
    for (int trial = 0; trial < 20; ++trial) {
        auto ctx = testsup::F(primes[rng() % primes.size()]);
        u32 n = 1 + rng() % 2;
        u64 N = 1 + rng() % 3;
        std::vector<Mat> mats;
        for (u64 i = 0; i < N; ++i) mats.push_back(testsup::random_nonsingular(ctx, n, rng));
        Pfss sys(ctx, std::move(mats));

        std::map<u64, u128> by_simulation;
        u64 qn = 1;
        for (u32 i = 0; i < n; ++i) qn *= static_cast<u64>(ctx->size());
        for (u64 code = 0; code < qn; ++code) {
            u64 rem = code;
            std::vector<FE> x;
            for (u32 i = 0; i < n; ++i) {
                x.push_back(FE::from_index(ctx, rem % static_cast<u64>(ctx->size())));
                rem /= static_cast<u64>(ctx->size());
            }
            by_simulation[simulate_orbit(sys, x).period] += 1;
        }

        auto hist = period_histogram(sys);
        CHECK(hist == by_simulation);
        u128 mass = 0;
        for (const auto& [T, count] : hist) mass += count;
        CHECK(mass == qn);
    }
}

TEST_CASE("whole-space scans respect the state cap", "[system]") {
    CHECK_THROWS_MATCHES(period_histogram(column_weave_f5(), 100), Error,
                         testsup::HasKind(ErrorKind::StateSpaceTooLarge));
    CHECK_THROWS_MATCHES(check_coprime_theorem(column_weave_f5(), 100), Error,
                         testsup::HasKind(ErrorKind::StateSpaceTooLarge));

    auto f2 = testsup::F(2);
    Pfss crush(f2, {Mat(f2, 2, 2)});
    CHECK_THROWS_MATCHES(period_histogram(crush), Error,
                         testsup::HasKind(ErrorKind::SingularSystem));
}

TEST_CASE("coprimality theorem holds on the worked systems", "[system]") {
    CHECK(check_coprime_theorem(shift_weave_f2()).pass);
    CHECK(check_coprime_theorem(column_weave_f5()).pass);
    CHECK(check_coprime_theorem(shear_swap_f2()).pass);
    CHECK(check_coprime_theorem(column_pair_f2()).pass);

    // N = 1: the subspace is the full space and every clause is vacuous.
    auto f3 = testsup::F(3);
    Pfss lone(f3, {Mat::from_ints(f3, {{1, 1}, {0, 1}})});
    CHECK(check_coprime_theorem(lone).pass);
}

TEST_CASE("coprimality theorem holds on random non-singular systems", "[system]") {
    std::mt19937_64 rng(77);
    const std::vector<u64> primes{2, 3, 5};
    for (int trial = 0; trial < 30; ++trial) {
        auto ctx = testsup::F(primes[rng() % primes.size()]);
        u32 n = 1 + rng() % 2;
        u64 N = 1 + rng() % 4;
        std::vector<Mat> mats;
        for (u64 i = 0; i < N; ++i) mats.push_back(testsup::random_nonsingular(ctx, n, rng));
        Pfss sys(ctx, std::move(mats));

        auto rep = check_coprime_theorem(sys);
        INFO("trial " << trial << " violated: " << rep.violated);
        CHECK(rep.pass);

        // Fixed points always live in the classification subspace.
        auto basis = subspace_A(sys);
        auto hist = period_histogram(sys);
        if (hist.count(1)) {
            u64 qn = 1;
            for (u32 i = 0; i < n; ++i) qn *= static_cast<u64>(ctx->size());
            for (u64 code = 0; code < qn; ++code) {
                u64 rem = code;
                std::vector<FE> x;
                for (u32 i = 0; i < n; ++i) {
                    x.push_back(FE::from_index(ctx, rem % static_cast<u64>(ctx->size())));
                    rem /= static_cast<u64>(ctx->size());
                }
                if (simulate_orbit(sys, x).period == 1) CHECK(in_span(basis, x, ctx));
            }
        }
    }
}

TEST_CASE("orbit simulation is deterministic", "[system]") {
    Pfss sys = column_weave_f5();
    auto f5 = sys.ctx();
    Trajectory t1 = simulate_orbit(sys, vec_of(f5, {1, 2, 3}));
    Trajectory t2 = simulate_orbit(sys, vec_of(f5, {1, 2, 3}));
    CHECK(t1.period == t2.period);
    CHECK(t1.states == t2.states);
    CHECK(period_histogram(sys) == period_histogram(sys));
}
