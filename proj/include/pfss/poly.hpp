/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a finite-field tower element type,
 *        with exact division, gcd/xgcd, modular exponentiation, evaluation,
 *        and derivative. Coefficients are stored ascending; the zero
 *        polynomial has an empty coefficient vector and degree -1.
 */
#ifndef PFSS_POLY_HPP
#define PFSS_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace pfss {

class Poly {
  public:
    Poly() = default;

    /// From ascending coefficients; trailing zeros are trimmed.
    Poly(FieldCtxPtr ctx, std::vector<FE> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        for (auto& x : c_)
            if (!x.ctx()->same_as(*ctx_)) x = x.embedded(ctx_);
        trim();
    }

    static Poly zero(const FieldCtxPtr& ctx) { return Poly(ctx, {}); }
    static Poly constant(const FE& c) { return Poly(c.ctx(), {c}); }
    static Poly one(const FieldCtxPtr& ctx) { return Poly(ctx, {FE::one(ctx)}); }
    /// The monomial x.
    static Poly x(const FieldCtxPtr& ctx) { return Poly(ctx, {FE::zero(ctx), FE::one(ctx)}); }
    /// c * x^k.
    static Poly monomial(const FE& c, u32 k) {
        std::vector<FE> v(k + 1, FE::zero(c.ctx()));
        v[k] = c;
        return Poly(c.ctx(), std::move(v));
    }
    /// From ascending integer coefficients (reduced mod p).
    static Poly from_ints(const FieldCtxPtr& ctx, const std::vector<u64>& ints) {
        std::vector<FE> v;
        v.reserve(ints.size());
        for (u64 n : ints) v.push_back(FE::from_int(ctx, n));
        return Poly(ctx, std::move(v));
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of x^i (zero beyond the stored degree).
    FE coeff(u32 i) const { return i < c_.size() ? c_[i] : FE::zero(ctx_); }
    const std::vector<FE>& coeffs() const { return c_; }
    FE leading() const {
        if (c_.empty()) raise(ErrorKind::ZeroPolynomial, "zero polynomial has no leading coefficient");
        return c_.back();
    }

    Poly monic() const {
        if (is_zero()) raise(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
        if (is_monic()) return *this;
        return *this * constant(leading().inverse());
    }

    /// Re-interpret over a context extending this one (embeds coefficients).
    Poly embedded(const FieldCtxPtr& target) const {
        std::vector<FE> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(x.embedded(target));
        return Poly(target, std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        auto [x, y] = aligned(a, b);
        std::vector<FE> v(std::max(x.c_.size(), y.c_.size()), FE::zero(x.ctx_));
        for (size_t i = 0; i < v.size(); ++i) v[i] = x.coeff(u32(i)) + y.coeff(u32(i));
        return Poly(x.ctx_, std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        auto [x, y] = aligned(a, b);
        std::vector<FE> v(std::max(x.c_.size(), y.c_.size()), FE::zero(x.ctx_));
        for (size_t i = 0; i < v.size(); ++i) v[i] = x.coeff(u32(i)) - y.coeff(u32(i));
        return Poly(x.ctx_, std::move(v));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<FE> v = a.c_;
        for (auto& x : v) x = -x;
        return Poly(a.ctx_, std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        auto [x, y] = aligned(a, b);
        if (x.is_zero() || y.is_zero()) return zero(x.ctx_);
        std::vector<FE> v(x.c_.size() + y.c_.size() - 1, FE::zero(x.ctx_));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j].is_zero()) continue;
                v[i + j] = v[i + j] + x.c_[i] * y.c_[j];
            }
        }
        return Poly(x.ctx_, std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        auto [num, den] = aligned(a, b);
        if (den.is_zero()) raise(ErrorKind::ZeroPolynomial, "polynomial division by zero");
        if (num.degree() < den.degree()) return {zero(num.ctx_), num};
        FE lead_inv = den.leading().inverse();
        std::vector<FE> rem = num.c_;
        std::vector<FE> quo(size_t(num.degree() - den.degree()) + 1, FE::zero(num.ctx_));
        for (int k = num.degree() - den.degree(); k >= 0; --k) {
            FE q = rem[size_t(k + den.degree())] * lead_inv;
            if (q.is_zero()) continue;
            quo[size_t(k)] = q;
            for (int j = 0; j <= den.degree(); ++j)
                rem[size_t(k + j)] = rem[size_t(k + j)] - q * den.c_[size_t(j)];
        }
        return {Poly(num.ctx_, std::move(quo)), Poly(num.ctx_, std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Monic greatest common divisor (gcd(0,0) = 0).
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
    static std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
        auto [r0, r1] = aligned(a, b);
        Poly s0 = one(r0.ctx_), s1 = zero(r0.ctx_);
        Poly t0 = zero(r0.ctx_), t1 = one(r0.ctx_);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            Poly s2 = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            Poly t2 = t0 - q * t1;
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        FE inv = r0.leading().inverse();
        Poly c = constant(inv);
        return {r0 * c, s0 * c, t0 * c};
    }

    /// this^e mod m (m nonconstant).
    Poly powmod(u64 e, const Poly& m) const {
        if (m.degree() < 1) raise(ErrorKind::BadRange, "powmod modulus must have positive degree");
        Poly base = *this % m, acc = one(ctx_) % m;
        while (e) {
            if (e & 1) acc = (acc * base) % m;
            base = (base * base) % m;
            e >>= 1;
        }
        return acc;
    }

    FE eval(const FE& x) const {
        FE acc = FE::zero(ctx_);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return zero(ctx_);
        std::vector<FE> v(c_.size() - 1, FE::zero(ctx_));
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * FE::from_int(ctx_, i % ctx_->characteristic());
        return Poly(ctx_, std::move(v));
    }

    /// Substitute another polynomial: (this ∘ g)(x) = this(g(x)).
    Poly compose(const Poly& g) const {
        Poly acc = zero(ctx_);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(c_[i]);
        return acc;
    }

    /// Total order for canonical tie-breaking: by degree, then lexicographic
    /// on canonical coefficient indices from the highest power down.
    static int compare(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        for (size_t i = a.c_.size(); i-- > 0;) {
            u64 x = a.c_[i].index(), y = b.c_[i].index();
            if (x != y) return x < y ? -1 : 1;
        }
        return 0;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string coef = c_[i].to_string();
            bool composite = coef.find_first_of("+-") != std::string::npos && coef.size() > 1;
            std::string term;
            if (i == 0)
                term = coef;
            else {
                std::string v = i == 1 ? var : var + "^" + std::to_string(i);
                term = coef == "1" ? v : (composite ? "(" + coef + ")" : coef) + "*" + v;
            }
            if (!out.empty()) out += " + ";
            out += term;
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    static std::pair<Poly, Poly> aligned(const Poly& a, const Poly& b) {
        if (!a.ctx_ || !b.ctx_) raise(ErrorKind::FieldMismatch, "uninitialized polynomial");
        if (a.ctx_->same_as(*b.ctx_)) return {a, b};
        if (a.ctx_->prefix_of(*b.ctx_)) return {a.embedded(b.ctx_), b};
        if (b.ctx_->prefix_of(*a.ctx_)) return {a, b.embedded(a.ctx_)};
        raise(ErrorKind::FieldMismatch, "polynomials over unrelated field towers");
    }

    FieldCtxPtr ctx_;
    std::vector<FE> c_;
};

} // namespace pfss

#endif // PFSS_POLY_HPP
