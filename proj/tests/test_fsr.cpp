// Feedback shift registers: master orbits, Fibonacci/Galois slave
// extraction, and keystream generation.
#include "pfss/fsr.hpp"

#include <array>

#include "support.hpp"

using namespace pfss;

using testsup::column_weave_f5;
using testsup::shift_weave_f2;
using testsup::vec_of;

namespace {

// Master y1' = y2, y2' = y1 + y2 over F2, started at [1,1].
MasterLfsr fib_master_f2() {
    auto f2 = testsup::F(2);
    return {f2, Mat::from_ints(f2, {{0, 1}, {1, 1}}), vec_of(f2, {1, 1})};
}

// Master [[4,1],[4,0]] over F5, started at [2,3].
MasterLfsr galois_master_f5() {
    auto f5 = testsup::F(5);
    return {f5, Mat::from_ints(f5, {{4, 1}, {4, 0}}), vec_of(f5, {2, 3})};
}

// Length-3 Fibonacci slave with the constant 1 on the first coefficient.
PfsrSpec weave_spec_f2() {
    MasterLfsr m = fib_master_f2();
    FE one = FE::one(m.ctx);
    return {PfsrKind::Fibonacci, m, 3,
            {feed_constant(one), feed_master(0), feed_master(1)}};
}

// Length-3 Galois slave with the constant 1 on the last coefficient.
PfsrSpec weave_spec_f5() {
    MasterLfsr m = galois_master_f5();
    FE one = FE::one(m.ctx);
    return {PfsrKind::Galois, m, 3,
            {feed_master(0), feed_master(1), feed_constant(one)}};
}

// Equation-level combined stepping: evolve master and slave together,
// reading the slave coefficients off the current master state.  This
// restates the Fibonacci/Galois transition maps without matrices, so it
// is an independent oracle for build_pfss.
std::vector<FE> combined_step(const PfsrSpec& spec, const std::vector<FE>& y,
                              const std::vector<FE>& x) {
    const FieldCtxPtr& ctx = spec.master.ctx;
    const u32 n = spec.slave_dim;
    auto feed = [&](u32 j) {
        const Feed& f = spec.wiring[j];
        return std::holds_alternative<u32>(f) ? y[std::get<u32>(f)] : std::get<FE>(f);
    };
    std::vector<FE> nx(n, FE::zero(ctx));
    if (spec.kind == PfsrKind::Fibonacci) {
        for (u32 i = 0; i + 1 < n; ++i) nx[i] = x[i + 1];
        FE acc = FE::zero(ctx);
        for (u32 j = 0; j < n; ++j) acc = acc + feed(j) * x[j];
        nx[n - 1] = acc;
    } else {
        for (u32 i = 0; i < n; ++i) {
            nx[i] = feed(i) * x[0];
            if (i + 1 < n) nx[i] = nx[i] + x[i + 1];
        }
    }
    return nx;
}

} // namespace

TEST_CASE("master orbits return the full state cycle", "[fsr]") {
    SECTION("F2 master of period 3") {
        MasterOrbit mo = master_orbit(fib_master_f2());
        CHECK(mo.period == 3);
        auto f2 = testsup::F(2);
        REQUIRE(mo.states.size() == 3);
        CHECK(mo.states[0] == vec_of(f2, {1, 1}));
        CHECK(mo.states[1] == vec_of(f2, {1, 0}));
        CHECK(mo.states[2] == vec_of(f2, {0, 1}));
    }
    SECTION("F5 master of period 3") {
        MasterOrbit mo = master_orbit(galois_master_f5());
        CHECK(mo.period == 3);
        auto f5 = testsup::F(5);
        REQUIRE(mo.states.size() == 3);
        CHECK(mo.states[0] == vec_of(f5, {2, 3}));
        CHECK(mo.states[1] == vec_of(f5, {1, 3}));
        CHECK(mo.states[2] == vec_of(f5, {2, 4}));
    }
    SECTION("identity master") {
        auto f3 = testsup::F(3);
        MasterLfsr m{f3, Mat::identity(f3, 2), vec_of(f3, {2, 1})};
        MasterOrbit mo = master_orbit(m);
        CHECK(mo.period == 1);
        CHECK(mo.states == std::vector<std::vector<FE>>{vec_of(f3, {2, 1})});
    }
    SECTION("zero start is periodic even for singular masters") {
        auto f2 = testsup::F(2);
        MasterLfsr m{f2, Mat::from_ints(f2, {{0, 0}, {1, 0}}), vec_of(f2, {0, 0})};
        CHECK(master_orbit(m).period == 1);
    }
}

TEST_CASE("master orbit detects non-periodic starts and bad shapes",
          "[fsr][errors]") {
    auto f2 = testsup::F(2);
    SECTION("tail into a cycle not containing the start") {
        MasterLfsr m{f2, Mat::from_ints(f2, {{0, 0}, {1, 0}}), vec_of(f2, {1, 0})};
        CHECK_THROWS_MATCHES(master_orbit(m), Error,
                             testsup::HasKind(ErrorKind::NotPeriodic));
    }
    SECTION("step cap") {
        CHECK_THROWS_MATCHES(master_orbit(fib_master_f2(), 2), Error,
                             testsup::HasKind(ErrorKind::NotPeriodic));
        CHECK(master_orbit(fib_master_f2(), 3).period == 3);
    }
    SECTION("shape validation") {
        MasterLfsr rect{f2, Mat(f2, 2, 3), vec_of(f2, {0, 0})};
        CHECK_THROWS_MATCHES(master_orbit(rect), Error,
                             testsup::HasKind(ErrorKind::BadRange));
        MasterLfsr wrong_dim{f2, Mat::identity(f2, 2), vec_of(f2, {1})};
        CHECK_THROWS_MATCHES(master_orbit(wrong_dim), Error,
                             testsup::HasKind(ErrorKind::BadRange));
        auto f3 = testsup::F(3);
        MasterLfsr mixed{f3, Mat::identity(f2, 2), vec_of(f3, {1, 1})};
        CHECK_THROWS_MATCHES(master_orbit(mixed), Error,
                             testsup::HasKind(ErrorKind::BadRange));
    }
}

TEST_CASE("Fibonacci extraction reproduces the shift-register weave", "[fsr]") {
    Pfss sys = build_pfss(weave_spec_f2());
    Pfss expect = shift_weave_f2();
    REQUIRE(sys.period() == 3);
    for (u64 k = 0; k < 3; ++k) CHECK(sys.matrix(k) == expect.matrix(k));

    // Monodromy equals the ordered product of the emitted matrices.
    Mat prod = Mat::identity(sys.ctx(), sys.dim());
    for (u64 k = 0; k < sys.period(); ++k) prod = sys.matrix(k) * prod;
    CHECK(monodromy(sys) == prod);
}

TEST_CASE("Galois extraction reproduces the first-column weave", "[fsr]") {
    Pfss sys = build_pfss(weave_spec_f5());
    Pfss expect = column_weave_f5();
    REQUIRE(sys.period() == 3);
    for (u64 k = 0; k < 3; ++k) CHECK(sys.matrix(k) == expect.matrix(k));

    // Bottom-right entry is zero: the last slave cell is fed only by x1.
    for (u64 k = 0; k < 3; ++k) CHECK(sys.matrix(k).at(2, 2).is_zero());

    Mat prod = Mat::identity(sys.ctx(), sys.dim());
    for (u64 k = 0; k < sys.period(); ++k) prod = sys.matrix(k) * prod;
    CHECK(monodromy(sys) == prod);
}

TEST_CASE("slave phase matrices are singular exactly when the corner feed vanishes",
          "[fsr]") {
    SECTION("Galois: last coefficient fed by a master coordinate that hits zero") {
        MasterLfsr m = fib_master_f2();
        PfsrSpec spec{PfsrKind::Galois, m, 3,
                      {feed_master(0), feed_master(0), feed_master(1)}};
        Pfss sys = build_pfss(spec);
        // Master y2 values over the cycle: 1, 0, 1.
        CHECK_FALSE(det(sys.matrix(0)).is_zero());
        CHECK(det(sys.matrix(1)).is_zero());
        CHECK_FALSE(det(sys.matrix(2)).is_zero());
        CHECK_FALSE(is_nonsingular(sys));
    }
    SECTION("Fibonacci: first coefficient fed by a master coordinate that hits zero") {
        MasterLfsr m = fib_master_f2();
        PfsrSpec spec{PfsrKind::Fibonacci, m, 2, {feed_master(1), feed_master(0)}};
        Pfss sys = build_pfss(spec);
        // Master y2 values over the cycle: 1, 0, 1.
        CHECK_FALSE(det(sys.matrix(0)).is_zero());
        CHECK(det(sys.matrix(1)).is_zero());
        CHECK_FALSE(det(sys.matrix(2)).is_zero());
    }
    SECTION("the worked specs are non-singular throughout") {
        CHECK(is_nonsingular(build_pfss(weave_spec_f2())));
        CHECK(is_nonsingular(build_pfss(weave_spec_f5())));
    }
}

TEST_CASE("period-1 master with constant wiring yields a shift-invariant system",
          "[fsr]") {
    auto f3 = testsup::F(3);
    MasterLfsr m{f3, Mat::identity(f3, 1), vec_of(f3, {0})};
    PfsrSpec spec{PfsrKind::Fibonacci, m, 2,
                  {feed_constant(FE::from_int(f3, 2)), feed_constant(FE::one(f3))}};
    Pfss sys = build_pfss(spec);
    CHECK(sys.period() == 1);
    CHECK(sys.matrix(0) == Mat::from_ints(f3, {{0, 1}, {2, 1}}));
}

TEST_CASE("wiring validation", "[fsr][errors]") {
    MasterLfsr m = fib_master_f2();
    FE one = FE::one(m.ctx);
    SECTION("slot count must match the slave dimension") {
        PfsrSpec spec{PfsrKind::Fibonacci, m, 3, {feed_constant(one)}};
        CHECK_THROWS_MATCHES(build_pfss(spec), Error,
                             testsup::HasKind(ErrorKind::WiringError));
    }
    SECTION("master coordinate out of range") {
        PfsrSpec spec{PfsrKind::Fibonacci, m, 2, {feed_master(5), feed_master(0)}};
        CHECK_THROWS_MATCHES(build_pfss(spec), Error,
                             testsup::HasKind(ErrorKind::WiringError));
    }
    SECTION("constant from a different field") {
        auto f3 = testsup::F(3);
        PfsrSpec spec{PfsrKind::Fibonacci, m, 2,
                      {feed_constant(FE::one(f3)), feed_master(0)}};
        CHECK_THROWS_MATCHES(build_pfss(spec), Error,
                             testsup::HasKind(ErrorKind::WiringError));
    }
    SECTION("empty slave") {
        PfsrSpec spec{PfsrKind::Fibonacci, m, 0, {}};
        CHECK_THROWS_MATCHES(build_pfss(spec), Error,
                             testsup::HasKind(ErrorKind::BadRange));
    }
}

TEST_CASE("keystreams reproduce the worked sequences", "[fsr]") {
    SECTION("Fibonacci slave over F2: period 9 from an 8-state register") {
        auto f2 = testsup::F(2);
        PfsrSpec spec = weave_spec_f2();
        auto ks = keystream(spec, vec_of(f2, {0, 0, 1}), 18, 0);
        CHECK(ks == vec_of(f2, {0, 0, 1, 1, 1, 0, 0, 1, 1,
                                0, 0, 1, 1, 1, 0, 0, 1, 1}));
        // The slave's trajectory period exceeds the q^n - 1 bound of any
        // length-3 shift-invariant register over F2.
        u64 period = simulate_orbit(build_pfss(spec), vec_of(f2, {0, 0, 1})).period;
        CHECK(period == 9);
        CHECK(period > 8);
    }
    SECTION("Galois slave over F5: period 15") {
        auto f5 = testsup::F(5);
        auto ks = keystream(weave_spec_f5(), vec_of(f5, {1, 0, 0}), 30, 0);
        CHECK(ks == vec_of(f5, {1, 2, 0, 2, 1, 2, 4, 2, 1, 2, 0, 2, 1, 0, 0,
                                1, 2, 0, 2, 1, 2, 4, 2, 1, 2, 0, 2, 1, 0, 0}));
    }
    SECTION("zero start emits zeros") {
        auto f2 = testsup::F(2);
        for (const FE& s : keystream(weave_spec_f2(), vec_of(f2, {0, 0, 0}), 8, 1))
            CHECK(s.is_zero());
    }
    SECTION("bad tap or start") {
        auto f2 = testsup::F(2);
        CHECK_THROWS_MATCHES(keystream(weave_spec_f2(), vec_of(f2, {0, 0, 1}), 4, 3),
                             Error, testsup::HasKind(ErrorKind::BadRange));
        CHECK_THROWS_MATCHES(keystream(weave_spec_f2(), vec_of(f2, {0, 1}), 4, 0),
                             Error, testsup::HasKind(ErrorKind::BadRange));
        auto f3 = testsup::F(3);
        CHECK_THROWS_MATCHES(keystream(weave_spec_f2(), vec_of(f3, {0, 0, 1}), 4, 0),
                             Error, testsup::HasKind(ErrorKind::BadRange));
    }
}

TEST_CASE("extracted slave system agrees with combined master+slave stepping",
          "[fsr][property]") {
    std::mt19937_64 rng(0xf5a1u);
    for (int trial = 0; trial < 18; ++trial) {
        const u64 q = std::array<u64, 3>{2, 3, 5}[trial % 3];
        auto ctx = testsup::F(q);
        MasterLfsr m{ctx, testsup::random_nonsingular(ctx, 2, rng),
                     testsup::random_vec(ctx, 2, rng)};
        const u32 n = 2 + (trial % 2);
        std::vector<Feed> wiring;
        for (u32 j = 0; j < n; ++j) {
            if (rng() % 2)
                wiring.push_back(feed_master(u32(rng() % 2)));
            else
                wiring.push_back(feed_constant(testsup::random_fe(ctx, rng)));
        }
        PfsrSpec spec{trial % 2 ? PfsrKind::Galois : PfsrKind::Fibonacci, m, n, wiring};

        Pfss sys = build_pfss(spec);
        MasterOrbit mo = master_orbit(m);
        REQUIRE(sys.period() == mo.period);

        std::vector<FE> x = testsup::random_vec(ctx, n, rng);
        std::vector<FE> y = m.init;
        const u64 steps = 2 * mo.period + 3;
        const u32 tap = u32(rng() % n);
        std::vector<FE> ks = keystream(spec, x, steps, tap);
        for (u64 k = 0; k < steps; ++k) {
            CHECK(ks[k] == x[tap]);
            std::vector<FE> via_matrix = sys.matrix(k).apply(x);
            std::vector<FE> via_equations = combined_step(spec, y, x);
            REQUIRE(via_matrix == via_equations);
            x = via_matrix;
            y = m.transition.apply(y);
        }
    }
}

TEST_CASE("extraction is deterministic", "[fsr]") {
    Pfss a = build_pfss(weave_spec_f5());
    Pfss b = build_pfss(weave_spec_f5());
    REQUIRE(a.period() == b.period());
    for (u64 k = 0; k < a.period(); ++k) CHECK(a.matrix(k) == b.matrix(k));
}
