/**
 * @file field.hpp
 * @brief Exact arithmetic in finite-field towers GF(p) = K0 ⊂ K1 ⊂ … ⊂ KL,
 *        where each step adjoins a root of an explicit monic modulus
 *        polynomial over the previous level.
 *
 * Representation. A FieldCtx stores the prime p and the tower steps; towers
 * are never flattened. An element of level L is a flat little-endian vector
 * of base-p digits of length [K_L : GF(p)]: the coefficient c_i of the
 * level-L generator occupies the i-th block of length [K_{L-1} : GF(p)],
 * recursively. With that layout:
 *   - embedding into a taller tower that extends this one is zero-padding,
 *   - the canonical integer index of an element is Σ digit_i · p^i, which
 *     for a single-step tower is exactly Σ c_i p^i with c_i the ascending
 *     polynomial coefficients.
 *
 * Arithmetic is schoolbook with monic reduction per level; inversion is the
 * extended Euclidean algorithm over the previous level (recursively down to
 * Fermat inversion in GF(p)). Everything is exact; there is no randomness
 * in this header.
 */
#ifndef PFSS_FIELD_HPP
#define PFSS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "zarith.hpp"

namespace pfss {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// One tower step: a monic modulus x^d + Σ_{i<d} lower[i]·x^i over the
/// previous level; lower[i] is stored as a flat element of that level.
struct TowerStep {
    u32 degree = 0;
    std::vector<std::vector<u64>> lower; ///< d coefficients, each of previous-level flat length

    bool operator==(const TowerStep& o) const = default;
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
  public:
    /// GF(p) for prime p.
    static FieldCtxPtr prime(u64 p) {
        if (!is_prime_u64(p)) raise(ErrorKind::BadRange, "field characteristic must be prime");
        return FieldCtxPtr(new FieldCtx(p, {}));
    }

    /**
     * Extend `parent` by a monic modulus of degree d >= 2 given by its lower
     * coefficients (flat elements of `parent`). Shape is validated here;
     * irreducibility is the caller's contract (the checked entry point that
     * tests irreducibility lives with the polynomial factorization code).
     */
    static FieldCtxPtr extended(const FieldCtxPtr& parent, u32 degree, std::vector<std::vector<u64>> lower) {
        if (!parent) raise(ErrorKind::FieldMismatch, "null parent context");
        if (degree < 2) raise(ErrorKind::BadRange, "extension degree must be at least 2");
        if (lower.size() != degree) raise(ErrorKind::BadRange, "modulus coefficient count must equal its degree");
        for (const auto& c : lower)
            if (c.size() != parent->abs_degree())
                raise(ErrorKind::BadRange, "modulus coefficient has wrong length for the parent context");
        std::vector<TowerStep> steps = parent->steps_;
        steps.push_back(TowerStep{degree, std::move(lower)});
        u128 size = pow_u128_checked(parent->p_, parent->abs_degree() * degree);
        if (size > (u128(1) << 64)) raise(ErrorKind::ExtensionBoundExceeded, "field would exceed 2^64 elements");
        return FieldCtxPtr(new FieldCtx(parent->p_, std::move(steps)));
    }

    u64 characteristic() const { return p_; }
    u32 levels() const { return static_cast<u32>(steps_.size()); }
    const TowerStep& step(u32 i) const { return steps_.at(i); }

    /// [K_level : GF(p)]; abs_degree(levels()) == abs_degree().
    u32 abs_degree(u32 level) const { return absdeg_.at(level); }
    u32 abs_degree() const { return absdeg_.back(); }

    /// Field size p^m as u128 (construction guarantees <= 2^64).
    u128 size() const { return size_; }
    /// Field size as u64; BadRange if it is exactly 2^64.
    u64 size_u64() const {
        if (size_ > ~u64(0)) raise(ErrorKind::BadRange, "field size does not fit in 64 bits");
        return static_cast<u64>(size_);
    }

    bool same_as(const FieldCtx& o) const {
        if (this == &o) return true;
        return p_ == o.p_ && steps_ == o.steps_;
    }

    /// True if this tower is an initial segment of o's tower (or equal).
    bool prefix_of(const FieldCtx& o) const {
        if (p_ != o.p_ || steps_.size() > o.steps_.size()) return false;
        for (size_t i = 0; i < steps_.size(); ++i)
            if (!(steps_[i] == o.steps_[i])) return false;
        return true;
    }

    /// The parent context (one step shorter); BadRange on a prime field.
    FieldCtxPtr parent() const {
        if (steps_.empty()) raise(ErrorKind::BadRange, "prime field has no parent context");
        std::vector<TowerStep> steps(steps_.begin(), steps_.end() - 1);
        return FieldCtxPtr(new FieldCtx(p_, std::move(steps)));
    }

    /// Human-readable tower description, e.g. "GF(5)" or "GF(2)[a]/(a^2+a+1)[b]/(b^3+a)".
    std::string description() const;

    // ----- raw flat-vector arithmetic (little-endian nested layout) -----

    bool raw_is_zero(const u64* a, u32 len) const {
        for (u32 i = 0; i < len; ++i)
            if (a[i]) return false;
        return true;
    }

    void raw_add(const u64* a, const u64* b, u64* out, u32 len) const {
        for (u32 i = 0; i < len; ++i) {
            u64 s = a[i] + b[i];
            out[i] = s >= p_ ? s - p_ : s;
        }
    }

    void raw_sub(const u64* a, const u64* b, u64* out, u32 len) const {
        for (u32 i = 0; i < len; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    }

    void raw_neg(const u64* a, u64* out, u32 len) const {
        for (u32 i = 0; i < len; ++i) out[i] = a[i] ? p_ - a[i] : 0;
    }

    /// out = a * b at the given tower level (lengths abs_degree(level)).
    void raw_mul_level(u32 level, const u64* a, const u64* b, u64* out) const {
        if (level == 0) {
            out[0] = mulmod(a[0], b[0], p_);
            return;
        }
        const u32 blk = absdeg_[level - 1];
        const u32 d = steps_[level - 1].degree;
        std::vector<u64> t(size_t(2 * d - 1) * blk, 0);
        std::vector<u64> tmp(blk);
        for (u32 i = 0; i < d; ++i) {
            if (raw_is_zero(a + size_t(i) * blk, blk)) continue;
            for (u32 j = 0; j < d; ++j) {
                if (raw_is_zero(b + size_t(j) * blk, blk)) continue;
                raw_mul_level(level - 1, a + size_t(i) * blk, b + size_t(j) * blk, tmp.data());
                raw_add(t.data() + size_t(i + j) * blk, tmp.data(), t.data() + size_t(i + j) * blk, blk);
            }
        }
        // monic reduction: x^k = -Σ_j lower[j] x^{k-d+j} for k from 2d-2 down to d
        const auto& lower = steps_[level - 1].lower;
        for (u32 k = 2 * d - 2; k >= d && k < 2 * d; --k) {
            u64* head = t.data() + size_t(k) * blk;
            if (raw_is_zero(head, blk)) continue;
            for (u32 j = 0; j < d; ++j) {
                if (raw_is_zero(lower[j].data(), blk)) continue;
                raw_mul_level(level - 1, head, lower[j].data(), tmp.data());
                u64* dst = t.data() + size_t(k - d + j) * blk;
                raw_sub(dst, tmp.data(), dst, blk);
            }
            for (u32 i = 0; i < blk; ++i) head[i] = 0;
        }
        for (u32 i = 0; i < d * blk; ++i) out[i] = t[i];
    }

    /// out = a^{-1} at the given tower level; DivisionByZero on zero input.
    void raw_inv_level(u32 level, const u64* a, u64* out) const;

  private:
    FieldCtx(u64 p, std::vector<TowerStep> steps) : p_(p), steps_(std::move(steps)) {
        absdeg_.assign(steps_.size() + 1, 1);
        for (size_t i = 0; i < steps_.size(); ++i) absdeg_[i + 1] = absdeg_[i] * steps_[i].degree;
        size_ = pow_u128_checked(p_, absdeg_.back());
        if (size_ > (u128(1) << 64)) raise(ErrorKind::ExtensionBoundExceeded, "field would exceed 2^64 elements");
    }

    u64 p_;
    std::vector<TowerStep> steps_;
    std::vector<u32> absdeg_;
    u128 size_;
};

namespace detail {

/// Internal dense polynomial over a tower level: vector of flat blocks.
using LevelPoly = std::vector<std::vector<u64>>;

inline int lp_degree(const FieldCtx& ctx, const LevelPoly& f, u32 blk) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (!ctx.raw_is_zero(f[size_t(i)].data(), blk)) return i;
    return -1;
}

/// In-place f -= c * g * x^shift over the given level.
inline void lp_submul(const FieldCtx& ctx, u32 level, LevelPoly& f, const std::vector<u64>& c, const LevelPoly& g,
                      size_t shift, u32 blk) {
    std::vector<u64> tmp(blk);
    for (size_t i = 0; i < g.size(); ++i) {
        if (ctx.raw_is_zero(g[i].data(), blk)) continue;
        ctx.raw_mul_level(level, c.data(), g[i].data(), tmp.data());
        if (f.size() < i + shift + 1) f.resize(i + shift + 1, std::vector<u64>(blk, 0));
        ctx.raw_sub(f[i + shift].data(), tmp.data(), f[i + shift].data(), blk);
    }
}

} // namespace detail

inline void FieldCtx::raw_inv_level(u32 level, const u64* a, u64* out) const {
    if (raw_is_zero(a, absdeg_[level])) raise(ErrorKind::DivisionByZero, "inverse of zero");
    if (level == 0) {
        out[0] = powmod(a[0], p_ - 2, p_);
        return;
    }
    const u32 blk = absdeg_[level - 1];
    const u32 d = steps_[level - 1].degree;
    using detail::LevelPoly;

    // r0 = modulus, r1 = a; maintain t with t * a ≡ r1 (mod modulus).
    LevelPoly r0(d + 1, std::vector<u64>(blk, 0));
    for (u32 i = 0; i < d; ++i) r0[i] = steps_[level - 1].lower[i];
    r0[d][0] = 1; // monic leading coefficient
    LevelPoly r1(d, std::vector<u64>(blk, 0));
    for (u32 i = 0; i < d; ++i)
        for (u32 j = 0; j < blk; ++j) r1[i][j] = a[size_t(i) * blk + j];
    LevelPoly t0(1, std::vector<u64>(blk, 0));
    LevelPoly t1(1, std::vector<u64>(blk, 0));
    t1[0][0] = 1;

    std::vector<u64> lead_inv(blk), coef(blk);
    int deg1 = detail::lp_degree(*this, r1, blk);
    while (deg1 > 0) {
        int deg0 = detail::lp_degree(*this, r0, blk);
        // divide r0 by r1, replacing r0 with the remainder and t0 accordingly
        raw_inv_level(level - 1, r1[size_t(deg1)].data(), lead_inv.data());
        while (deg0 >= deg1) {
            raw_mul_level(level - 1, r0[size_t(deg0)].data(), lead_inv.data(), coef.data());
            size_t shift = size_t(deg0 - deg1);
            detail::lp_submul(*this, level - 1, r0, coef, r1, shift, blk);
            detail::lp_submul(*this, level - 1, t0, coef, t1, shift, blk);
            deg0 = detail::lp_degree(*this, r0, blk);
        }
        std::swap(r0, r1);
        std::swap(t0, t1);
        deg1 = detail::lp_degree(*this, r1, blk);
    }
    if (deg1 < 0) raise(ErrorKind::DivisionByZero, "element is not invertible (modulus not irreducible?)");
    // r1 is a nonzero constant c: inverse = t1 / c, padded to d blocks.
    raw_inv_level(level - 1, r1[0].data(), lead_inv.data());
    for (u32 i = 0; i < d * blk; ++i) out[i] = 0;
    for (size_t i = 0; i < t1.size() && i < d; ++i) {
        raw_mul_level(level - 1, t1[i].data(), lead_inv.data(), coef.data());
        for (u32 j = 0; j < blk; ++j) out[i * blk + j] = coef[j];
    }
}

/**
 * An element of a finite-field tower: immutable value type carrying its
 * context. Arithmetic between different contexts embeds automatically when
 * one tower is a prefix of the other, and raises FieldMismatch otherwise.
 */
class FE {
  public:
    FE() = default;

    FE(FieldCtxPtr ctx, std::vector<u64> flat) : ctx_(std::move(ctx)), c_(std::move(flat)) {
        if (!ctx_) raise(ErrorKind::FieldMismatch, "null field context");
        if (c_.size() != ctx_->abs_degree()) raise(ErrorKind::BadRange, "element has wrong coefficient length");
        for (auto& v : c_) v %= ctx_->characteristic();
    }

    static FE zero(const FieldCtxPtr& ctx) { return FE(ctx, std::vector<u64>(ctx->abs_degree(), 0)); }
    static FE one(const FieldCtxPtr& ctx) {
        std::vector<u64> v(ctx->abs_degree(), 0);
        v[0] = 1;
        return FE(ctx, std::move(v));
    }
    /// Embedding of the integer n (i.e. n mod p in the prime subfield).
    static FE from_int(const FieldCtxPtr& ctx, u64 n) {
        std::vector<u64> v(ctx->abs_degree(), 0);
        v[0] = n % ctx->characteristic();
        return FE(ctx, std::move(v));
    }
    /// Element with canonical index i (mixed-radix base-p digits of i).
    static FE from_index(const FieldCtxPtr& ctx, u64 index) {
        std::vector<u64> v(ctx->abs_degree(), 0);
        u64 p = ctx->characteristic();
        for (u32 k = 0; k < ctx->abs_degree() && index; ++k) {
            v[k] = index % p;
            index /= p;
        }
        if (index) raise(ErrorKind::BadRange, "canonical index exceeds field size");
        return FE(ctx, std::move(v));
    }
    /// Generator adjoined by the top tower step (BadRange on a prime field).
    static FE generator(const FieldCtxPtr& ctx) {
        if (ctx->levels() == 0) raise(ErrorKind::BadRange, "prime field has no adjoined generator");
        std::vector<u64> v(ctx->abs_degree(), 0);
        v[ctx->abs_degree(ctx->levels() - 1)] = 1;
        return FE(ctx, std::move(v));
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<u64>& flat() const { return c_; }
    bool valid() const { return ctx_ != nullptr; }

    bool is_zero() const { return ctx_->raw_is_zero(c_.data(), u32(c_.size())); }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    /// Canonical integer index Σ digit_i · p^i (total order on the field).
    u64 index() const {
        u64 p = ctx_->characteristic(), idx = 0;
        for (size_t i = c_.size(); i-- > 0;) idx = idx * p + c_[i];
        return idx;
    }

    /// Embed into a context whose tower extends this element's tower.
    FE embedded(const FieldCtxPtr& target) const {
        if (ctx_->same_as(*target)) return FE(target, c_);
        if (!ctx_->prefix_of(*target))
            raise(ErrorKind::NotAnExtension, "target context does not extend the element's context");
        std::vector<u64> v(target->abs_degree(), 0);
        for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
        return FE(target, std::move(v));
    }

    /// True if the element lies in the subfield reached by `level` tower steps
    /// (all higher nested coefficients vanish).
    bool in_level(u32 level) const {
        u32 keep = ctx_->abs_degree(level);
        for (size_t i = keep; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    friend FE operator+(const FE& a, const FE& b) {
        auto [x, y] = FE::aligned(a, b);
        std::vector<u64> out(x.c_.size());
        x.ctx_->raw_add(x.c_.data(), y.c_.data(), out.data(), u32(out.size()));
        return FE(x.ctx_, std::move(out));
    }
    friend FE operator-(const FE& a, const FE& b) {
        auto [x, y] = FE::aligned(a, b);
        std::vector<u64> out(x.c_.size());
        x.ctx_->raw_sub(x.c_.data(), y.c_.data(), out.data(), u32(out.size()));
        return FE(x.ctx_, std::move(out));
    }
    friend FE operator-(const FE& a) {
        std::vector<u64> out(a.c_.size());
        a.ctx_->raw_neg(a.c_.data(), out.data(), u32(out.size()));
        return FE(a.ctx_, std::move(out));
    }
    friend FE operator*(const FE& a, const FE& b) {
        auto [x, y] = FE::aligned(a, b);
        std::vector<u64> out(x.c_.size());
        x.ctx_->raw_mul_level(x.ctx_->levels(), x.c_.data(), y.c_.data(), out.data());
        return FE(x.ctx_, std::move(out));
    }
    friend FE operator/(const FE& a, const FE& b) { return a * b.inverse(); }

    FE inverse() const {
        if (is_zero()) raise(ErrorKind::DivisionByZero, "division by zero field element");
        std::vector<u64> out(c_.size());
        ctx_->raw_inv_level(ctx_->levels(), c_.data(), out.data());
        return FE(ctx_, std::move(out));
    }

    FE pow(u64 e) const {
        FE base = *this, acc = FE::one(ctx_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// x ↦ x^p, the Frobenius automorphism over the prime field.
    FE frobenius() const { return pow(ctx_->characteristic()); }

    /// The unique y with y^p = x (Frobenius is bijective): p^{m-1}-th power.
    FE inv_frobenius() const {
        FE y = *this;
        for (u32 i = 0; i + 1 < ctx_->abs_degree(); ++i) y = y.frobenius();
        return y;
    }

    friend bool operator==(const FE& a, const FE& b) {
        if (a.ctx_->same_as(*b.ctx_)) return a.c_ == b.c_;
        auto [x, y] = FE::aligned(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const FE& a, const FE& b) { return !(a == b); }

    /// Rendering in polynomial notation with per-level generators a, b, c, …
    std::string to_string() const { return render(ctx_->levels(), c_.data()); }

  private:
    static std::pair<FE, FE> aligned(const FE& a, const FE& b) {
        if (!a.ctx_ || !b.ctx_) raise(ErrorKind::FieldMismatch, "uninitialized field element");
        if (a.ctx_->same_as(*b.ctx_)) return {a, b};
        if (a.ctx_->prefix_of(*b.ctx_)) return {a.embedded(b.ctx_), b};
        if (b.ctx_->prefix_of(*a.ctx_)) return {a, b.embedded(a.ctx_)};
        raise(ErrorKind::FieldMismatch, "elements from unrelated field towers");
    }

    std::string render(u32 level, const u64* a) const;

    FieldCtxPtr ctx_;
    std::vector<u64> c_;
};

inline std::string FE::render(u32 level, const u64* a) const {
    if (level == 0) return std::to_string(a[0]);
    const u32 blk = ctx_->abs_degree(level - 1);
    const u32 d = ctx_->step(level - 1).degree;
    const char sym = static_cast<char>('a' + level - 1);
    std::string out;
    for (u32 i = d; i-- > 0;) {
        const u64* block = a + size_t(i) * blk;
        if (ctx_->raw_is_zero(block, blk)) continue;
        std::string coef = render(level - 1, block);
        bool composite = coef.find_first_of("+-") != std::string::npos && coef.size() > 1;
        std::string term;
        if (i == 0) {
            term = coef;
        } else {
            std::string gen = (i == 1) ? std::string(1, sym) : std::string(1, sym) + "^" + std::to_string(i);
            if (coef == "1")
                term = gen;
            else
                term = (composite ? "(" + coef + ")" : coef) + "*" + gen;
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out.empty() ? "0" : out;
}

inline std::string FieldCtx::description() const {
    std::string out = "GF(" + std::to_string(p_) + ")";
    for (u32 l = 0; l < levels(); ++l) {
        const char sym = static_cast<char>('a' + l);
        const auto& st = steps_[l];
        std::string mod = std::string(1, sym) + "^" + std::to_string(st.degree);
        // print the lower coefficients via a temporary element of the parent level
        for (u32 i = st.degree; i-- > 0;) {
            if (raw_is_zero(st.lower[i].data(), absdeg_[l])) continue;
            // render coefficient: reuse FE::render through a scratch element of this ctx
            // (coefficients live at parent level l)
            FE scratch(std::const_pointer_cast<const FieldCtx>(shared_from_this()),
                       [&] {
                           std::vector<u64> v(abs_degree(), 0);
                           for (u32 j = 0; j < absdeg_[l]; ++j) v[j] = st.lower[i][j];
                           return v;
                       }());
            std::string coef = scratch.to_string();
            bool composite = coef.find_first_of("+-") != std::string::npos && coef.size() > 1;
            std::string term;
            if (i == 0)
                term = coef;
            else {
                std::string gen = (i == 1) ? std::string(1, sym) : std::string(1, sym) + "^" + std::to_string(i);
                term = coef == "1" ? gen : (composite ? "(" + coef + ")" : coef) + "*" + gen;
            }
            mod += " + " + term;
        }
        out += "[" + std::string(1, sym) + "]/(" + mod + ")";
    }
    return out;
}

} // namespace pfss

#endif // PFSS_FIELD_HPP
