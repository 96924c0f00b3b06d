#include "support.hpp"

#include "pfss/lfss.hpp"
#include "pfss/root.hpp"

using namespace pfss;
using testsup::F;
using testsup::GF4;
using testsup::GF64Tower;

namespace {

// Ground truth: follow every state of GF(q)^n to closure and tally cycles.
CycleSet brute_cycle_set(const Mat& A) {
    const FieldCtxPtr& ctx = A.ctx();
    const u32 n = A.rows();
    const u64 q = ctx->size_u64();
    u64 total = 1;
    for (u32 i = 0; i < n; ++i) total *= q;

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

    std::vector<bool> seen(total, false);
    std::map<u64, u128> counts;
    for (u64 s = 0; s < total; ++s) {
        if (seen[s]) continue;
        u64 len = 0, cur = s;
        do {
            seen[cur] = true;
            cur = encode(A.apply(decode(cur)));
            ++len;
        } while (cur != s);
        counts[len] += 1;
    }
    CycleSet out;
    for (const auto& [len, cnt] : counts) out.entries.push_back({cnt, len});
    return out;
}

} // namespace

TEST_CASE("polynomial periods match brute-force divisibility scans", "[lfss]") {
    auto f2 = F(2);
    CHECK(poly_period(Poly::from_ints(f2, {1, 1, 1})) == 3);
    CHECK(poly_period(Poly::from_ints(f2, {1, 0, 1})) == 2);  // (x+1)^2
    for (auto ctx : {F(2), F(3), F(5)})
        CHECK(poly_period(Poly::from_ints(ctx, {ctx->characteristic() - 1, 1})) == 1);  // x - 1

    std::mt19937_64 rng(401);
    for (auto ctx : {F(2), F(3)}) {
        for (int it = 0; it < 40; ++it) {
            u32 d = 1 + u32(rng() % 4);
            Poly f = testsup::random_monic(ctx, d, rng);
            if (f.coeff(0).is_zero()) continue;
            u64 T = poly_period(f);
            // incremental scan: x^e mod f over e = 1..T must hit 1 first at T
            Poly r = Poly::x(ctx) % f;
            for (u64 e = 1; e < T; ++e) {
                CHECK(!r.is_one());
                r = (r * Poly::x(ctx)) % f;
            }
            CHECK(r.is_one());
        }
    }
}

TEST_CASE("polynomial period argument validation", "[lfss][errors]") {
    auto f2 = F(2);
    CHECK_THROWS_MATCHES(poly_period(Poly::from_ints(f2, {0, 1, 1})), Error,
                         testsup::HasKind(ErrorKind::SingularPolynomial));
    CHECK_THROWS_MATCHES(poly_period(Poly::zero(f2)), Error,
                         testsup::HasKind(ErrorKind::ZeroPolynomial));
    auto f3 = F(3);
    CHECK_THROWS_MATCHES(poly_period(Poly::from_ints(f3, {1, 2})), Error,
                         testsup::HasKind(ErrorKind::BadRange));
}

TEST_CASE("frozen cycle sets", "[lfss]") {
    auto f2 = F(2);

    Mat fib = Mat::from_ints(f2, {{1, 1}, {1, 0}});
    CycleSet cs = cycle_set(fib);
    REQUIRE(cs.entries.size() == 2);
    CHECK(cs.entries[0] == CycleEntry{1, 1});
    CHECK(cs.entries[1] == CycleEntry{1, 3});

    CycleSet ident = cycle_set(Mat::identity(F(5), 2));
    REQUIRE(ident.entries.size() == 1);
    CHECK(ident.entries[0] == CycleEntry{25, 1});

    CycleSet c7 = cycle_set(testsup::companion(Poly::from_ints(f2, {1, 1, 0, 1})));
    REQUIRE(c7.entries.size() == 2);
    CHECK(c7.entries[0] == CycleEntry{1, 1});
    CHECK(c7.entries[1] == CycleEntry{1, 7});

    // Unipotent 3x3 single Jordan block over F5: four nonzero fixed points,
    // everything else on 5-cycles.
    Mat uni = Mat::from_ints(F(5), {{1, 2, 1}, {0, 1, 2}, {0, 0, 1}});
    CycleSet ucs = cycle_set(uni);
    REQUIRE(ucs.entries.size() == 2);
    CHECK(ucs.entries[0] == CycleEntry{5, 1});
    CHECK(ucs.entries[1] == CycleEntry{24, 5});

    CHECK_THROWS_MATCHES(cycle_set(Mat::from_ints(f2, {{1, 1}, {1, 1}})), Error,
                         testsup::HasKind(ErrorKind::SingularMatrix));
}

TEST_CASE("cycle sets agree with exhaustive enumeration", "[lfss]") {
    std::mt19937_64 rng(402);
    struct Case {
        FieldCtxPtr ctx;
        u32 max_n;
    };
    for (const auto& [ctx, max_n] : {Case{F(2), 5}, Case{F(3), 4}, Case{F(5), 3}, Case{GF4(), 3}}) {
        for (u32 n = 1; n <= max_n; ++n) {
            for (int it = 0; it < 6; ++it) {
                Mat A = testsup::random_nonsingular(ctx, n, rng);
                CycleSet fast = cycle_set(A, rng());
                CHECK(fast == brute_cycle_set(A));
                u128 expect = 1;
                for (u32 i = 0; i < n; ++i) expect *= ctx->size();
                CHECK(fast.mass() == expect);
            }
        }
    }
}

TEST_CASE("the product rule is exercised by block-diagonal composites", "[lfss]") {
    auto f2 = F(2);
    // companion(x^2+x+1) ⊕ companion(x^3+x+1): periods 3 and 7 interleave.
    Mat A(f2, 5, 5);
    Mat B1 = testsup::companion(Poly::from_ints(f2, {1, 1, 1}));
    Mat B2 = testsup::companion(Poly::from_ints(f2, {1, 1, 0, 1}));
    for (u32 i = 0; i < 2; ++i)
        for (u32 j = 0; j < 2; ++j) A.at(i, j) = B1.at(i, j);
    for (u32 i = 0; i < 3; ++i)
        for (u32 j = 0; j < 3; ++j) A.at(2 + i, 2 + j) = B2.at(i, j);

    CycleSet cs = cycle_set(A);
    CycleSet oracle = brute_cycle_set(A);
    CHECK(cs == oracle);
    // {1[1]+1[3]} x {1[1]+1[7]} = 1[1] + 1[3] + 1[7] + 1[21]
    REQUIRE(cs.entries.size() == 4);
    CHECK(cs.entries[3] == CycleEntry{1, 21});
}

TEST_CASE("vector orbit lengths", "[lfss]") {
    auto f2 = F(2);
    Mat fib = Mat::from_ints(f2, {{1, 1}, {1, 0}});
    CHECK(vector_orbit_length(fib, {FE::one(f2), FE::zero(f2)}) == 3);
    CHECK(vector_orbit_length(fib, {FE::zero(f2), FE::zero(f2)}) == 1);

    std::mt19937_64 rng(403);
    for (auto ctx : {F(2), F(3), F(5), GF4()}) {
        for (int it = 0; it < 12; ++it) {
            u32 n = 1 + u32(rng() % 4);
            Mat A = testsup::random_nonsingular(ctx, n, rng);
            std::vector<FE> x = testsup::random_vec(ctx, n, rng);
            u64 T = vector_orbit_length(A, x);
            CHECK(T == testsup::brute_orbit_length(A, x));
        }
    }

    Mat sing = Mat::from_ints(f2, {{1, 0}, {0, 0}});
    CHECK_THROWS_MATCHES(vector_orbit_length(sing, {FE::one(f2), FE::one(f2)}), Error,
                         testsup::HasKind(ErrorKind::SingularMatrix));
}

TEST_CASE("the shift-register equivalent system has orbits of length nine", "[lfss]") {
    // Equivalent linear system of the three-phase shift register, over the
    // GF(2) -> GF(4) -> GF(64) tower with b^3 = a.
    auto t64 = GF64Tower();
    auto e = [&](u64 idx) { return FE::from_index(t64, idx); };
    Mat At(t64, {{e(1), e(20), e(45)}, {e(0), e(56), e(20)}, {e(0), e(20), e(44)}});

    std::vector<FE> third{e(0), e(0), e(1)};
    CHECK(vector_orbit_length(At, third) == 9);

    auto found = find_vector_with_period(At, 9);
    REQUIRE(found.has_value());
    CHECK(vector_orbit_length(At, *found) == 9);
}

TEST_CASE("prescribed orbit lengths are achieved exactly when the cycle set allows", "[lfss]") {
    auto f2 = F(2);
    Mat fib = Mat::from_ints(f2, {{1, 1}, {1, 0}});

    auto v3 = find_vector_with_period(fib, 3);
    REQUIRE(v3.has_value());
    CHECK(testsup::brute_orbit_length(fib, *v3) == 3);

    auto v1 = find_vector_with_period(fib, 1);
    REQUIRE(v1.has_value());
    CHECK(vector_is_zero(*v1));

    CHECK(!find_vector_with_period(fib, 2).has_value());
    CHECK(!find_vector_with_period(fib, 6).has_value());

    std::mt19937_64 rng(404);
    for (auto ctx : {F(2), F(3), GF4()}) {
        for (int it = 0; it < 10; ++it) {
            u32 n = 1 + u32(rng() % 3);
            Mat A = testsup::random_nonsingular(ctx, n, rng);
            CycleSet cs = cycle_set(A);
            u64 longest = cs.entries.back().length;
            for (u64 T = 1; T <= longest + 2; ++T) {
                bool present = false;
                for (const auto& entry : cs.entries) present = present || entry.length == T;
                auto got = find_vector_with_period(A, T, 7);
                CHECK(got.has_value() == present);
                if (got) CHECK(vector_orbit_length(A, *got) == T);
            }
        }
    }
}

TEST_CASE("prescribed-orbit construction is deterministic", "[lfss]") {
    auto f3 = F(3);
    std::mt19937_64 rng(405);
    Mat A = testsup::random_nonsingular(f3, 4, rng);
    CycleSet cs = cycle_set(A);
    u64 T = cs.entries.back().length;
    auto a = find_vector_with_period(A, T, 11);
    auto b = find_vector_with_period(A, T, 11);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    for (u32 i = 0; i < 4; ++i) CHECK((*a)[i] == (*b)[i]);
}
