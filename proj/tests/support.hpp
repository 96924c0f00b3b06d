/**
 * @file support.hpp
 * @brief Shared test scaffolding: memoized field contexts, seeded random
 *        generators for elements/polynomials/matrices, and slow independent
 *        oracles (Laplace characteristic polynomial, brute-force orbit
 *        enumeration) used to cross-check the fast library routines.
 */
#pragma once

#include <functional>
#include <map>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "pfss/factor.hpp"
#include "pfss/linalg.hpp"
#include "pfss/multiplicative.hpp"
#include "pfss/system.hpp"

namespace testsup {

using namespace pfss;

/// Catch2 matcher asserting that a thrown pfss::Error carries a given kind.
class HasKind : public Catch::Matchers::MatcherGenericBase {
  public:
    explicit HasKind(ErrorKind k) : kind_(k) {}
    bool match(const Error& e) const { return e.kind() == kind_; }
    std::string describe() const override {
        return std::string("has error kind ") + std::string(error_kind_name(kind_));
    }

  private:
    ErrorKind kind_;
};

inline FieldCtxPtr F(u64 p) {
    static std::map<u64, FieldCtxPtr> cache;
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, FieldCtx::prime(p)).first;
    return it->second;
}

/// GF(4) = GF(2)[a]/(a^2 + a + 1).
inline FieldCtxPtr GF4() {
    static FieldCtxPtr ctx = extend_field(F(2), Poly::from_ints(F(2), {1, 1, 1}));
    return ctx;
}

/// GF(8) = GF(2)[a]/(a^3 + a + 1).
inline FieldCtxPtr GF8() {
    static FieldCtxPtr ctx = extend_field(F(2), Poly::from_ints(F(2), {1, 1, 0, 1}));
    return ctx;
}

/// GF(9) = GF(3)[a]/(a^2 + 1).
inline FieldCtxPtr GF9() {
    static FieldCtxPtr ctx = extend_field(F(3), Poly::from_ints(F(3), {1, 0, 1}));
    return ctx;
}

/// GF(64) as the two-step tower GF(2)[a]/(a^2+a+1), then [b]/(b^3 + a).
inline FieldCtxPtr GF64Tower() {
    static FieldCtxPtr ctx = [] {
        FieldCtxPtr g4 = GF4();
        Poly mod(g4, {FE::generator(g4), FE::zero(g4), FE::zero(g4), FE::one(g4)}); // b^3 + a
        return extend_field(g4, mod);
    }();
    return ctx;
}

inline FE random_fe(const FieldCtxPtr& ctx, std::mt19937_64& rng) {
    u64 q_minus = static_cast<u64>(ctx->size() - 1);
    u64 idx = q_minus == ~u64(0) ? rng() : rng() % (q_minus + 1);
    return FE::from_index(ctx, idx);
}

inline FE random_nonzero_fe(const FieldCtxPtr& ctx, std::mt19937_64& rng) {
    u64 q_minus = static_cast<u64>(ctx->size() - 1);
    return FE::from_index(ctx, rng() % q_minus + 1);
}

inline Poly random_poly(const FieldCtxPtr& ctx, u32 max_deg, std::mt19937_64& rng) {
    u32 d = u32(rng() % (max_deg + 1));
    std::vector<FE> c;
    for (u32 i = 0; i <= d; ++i) c.push_back(random_fe(ctx, rng));
    return Poly(ctx, std::move(c));
}

inline Poly random_monic(const FieldCtxPtr& ctx, u32 deg, std::mt19937_64& rng) {
    std::vector<FE> c;
    for (u32 i = 0; i < deg; ++i) c.push_back(random_fe(ctx, rng));
    c.push_back(FE::one(ctx));
    return Poly(ctx, std::move(c));
}

inline Mat random_mat(const FieldCtxPtr& ctx, u32 r, u32 c, std::mt19937_64& rng) {
    Mat m(ctx, r, c);
    for (u32 i = 0; i < r; ++i)
        for (u32 j = 0; j < c; ++j) m.at(i, j) = random_fe(ctx, rng);
    return m;
}

inline Mat random_nonsingular(const FieldCtxPtr& ctx, u32 n, std::mt19937_64& rng) {
    while (true) {
        Mat m = random_mat(ctx, n, n, rng);
        if (!det(m).is_zero()) return m;
    }
}

inline std::vector<FE> random_vec(const FieldCtxPtr& ctx, u32 n, std::mt19937_64& rng) {
    std::vector<FE> v;
    for (u32 i = 0; i < n; ++i) v.push_back(random_fe(ctx, rng));
    return v;
}

/// Oracle: det(xI - A) by cofactor expansion over polynomial entries (small n).
inline Poly laplace_charpoly(const Mat& A) {
    const u32 n = A.rows();
    const FieldCtxPtr& ctx = A.ctx();
    std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) {
            M[i][j] = Poly::constant(-A.at(i, j));
            if (i == j) M[i][j] = M[i][j] + Poly::x(ctx);
        }
    // recursive first-column expansion
    std::function<Poly(std::vector<std::vector<Poly>>&)> ddet = [&](std::vector<std::vector<Poly>>& m) -> Poly {
        const size_t k = m.size();
        if (k == 1) return m[0][0];
        Poly acc = Poly::zero(ctx);
        for (size_t i = 0; i < k; ++i) {
            if (m[i][0].is_zero()) continue;
            std::vector<std::vector<Poly>> sub;
            for (size_t r = 0; r < k; ++r) {
                if (r == i) continue;
                sub.push_back(std::vector<Poly>(m[r].begin() + 1, m[r].end()));
            }
            Poly term = m[i][0] * ddet(sub);
            acc = (i % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    return ddet(M);
}

/// Oracle: length of the closed orbit of x under repeated multiplication by
/// A, by stepping until return (caller guarantees periodicity; capped).
/// Companion matrix of a monic polynomial (coefficients in the last column).
inline Mat companion(const Poly& f) {
    const FieldCtxPtr& ctx = f.ctx();
    u32 n = u32(f.degree());
    Mat C(ctx, n, n);
    for (u32 i = 0; i + 1 < n; ++i) C.at(i + 1, i) = FE::one(ctx);
    for (u32 i = 0; i < n; ++i) C.at(i, n - 1) = -f.coeff(i);
    return C;
}

inline u64 brute_orbit_length(const Mat& A, const std::vector<FE>& x0, u64 cap = 1u << 22) {
    std::vector<FE> x = A.apply(x0);
    u64 steps = 1;
    auto eq = [](const std::vector<FE>& u, const std::vector<FE>& v) {
        for (size_t i = 0; i < u.size(); ++i)
            if (u[i] != v[i]) return false;
        return true;
    };
    while (!eq(x, x0)) {
        x = A.apply(x);
        if (++steps > cap) raise(ErrorKind::StepCapExceeded, "oracle orbit exceeded cap");
    }
    return steps;
}

// ---------------------------------------------------------------------------
// Shared periodic example systems
// ---------------------------------------------------------------------------

// Three-phase shift-register weave over F2; monodromy [[1,1,1],[0,1,1],[0,1,0]].
inline Pfss shift_weave_f2() {
    auto f2 = F(2);
    return Pfss::from_ints(f2, {{{0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
                                {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}},
                                {{0, 1, 0}, {0, 0, 1}, {1, 0, 1}}});
}

// Three-phase first-column weave over F5; monodromy [[2,0,2],[2,0,4],[0,1,1]].
inline Pfss column_weave_f5() {
    auto f5 = F(5);
    return Pfss::from_ints(f5, {{{2, 1, 0}, {3, 0, 1}, {1, 0, 0}},
                                {{1, 1, 0}, {3, 0, 1}, {1, 0, 0}},
                                {{2, 1, 0}, {4, 0, 1}, {1, 0, 0}}});
}

// Two-phase pair over F2 whose monodromy [[0,1],[1,1]] has a square root.
inline Pfss shear_swap_f2() {
    auto f2 = F(2);
    return Pfss::from_ints(f2, {{{1, 1}, {0, 1}}, {{0, 1}, {1, 0}}});
}

// Two-phase pair over F2 whose monodromy [[1,1],[0,1]] has no square root.
inline Pfss column_pair_f2() {
    auto f2 = F(2);
    return Pfss::from_ints(f2, {{{1, 1}, {1, 0}}, {{1, 0}, {1, 1}}});
}

// N=3 system where a state recurs at a non-multiple of N mid-orbit: the
// orbit word of [1,0] is a,b,a,b,a,b,c,c,c with temporal period 9, even
// though x(2) = x(0).
inline Pfss echo_trap_f2() {
    auto f2 = F(2);
    return Pfss::from_ints(
        f2, {{{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}});
}

inline std::vector<FE> vec_of(const FieldCtxPtr& ctx, const std::vector<u64>& ints) {
    std::vector<FE> v;
    for (u64 c : ints) v.push_back(FE::from_int(ctx, c));
    return v;
}

} // namespace testsup
