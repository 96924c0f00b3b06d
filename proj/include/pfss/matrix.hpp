/**
 * @file matrix.hpp
 * @brief Dense matrices over a finite-field tower: construction, arithmetic,
 *        powers, embedding into extension towers, and formatting. States are
 *        column vectors; a system step is x ↦ A·x.
 */
#ifndef PFSS_MATRIX_HPP
#define PFSS_MATRIX_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "field.hpp"

namespace pfss {

class Mat {
  public:
    Mat() = default;

    Mat(FieldCtxPtr ctx, u32 rows, u32 cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(size_t(rows) * cols, FE::zero(ctx_)) {}

    /// From a row-major grid of elements (embedded into ctx as needed).
    Mat(FieldCtxPtr ctx, const std::vector<std::vector<FE>>& grid) : ctx_(std::move(ctx)) {
        rows_ = u32(grid.size());
        cols_ = rows_ ? u32(grid[0].size()) : 0;
        a_.reserve(size_t(rows_) * cols_);
        for (const auto& row : grid) {
            if (row.size() != cols_) raise(ErrorKind::BadRange, "ragged matrix rows");
            for (const auto& x : row) a_.push_back(x.ctx()->same_as(*ctx_) ? x : x.embedded(ctx_));
        }
    }

    /// From a row-major grid of integers (reduced mod p).
    static Mat from_ints(const FieldCtxPtr& ctx, const std::vector<std::vector<u64>>& grid) {
        Mat m(ctx, u32(grid.size()), grid.empty() ? 0 : u32(grid[0].size()));
        for (u32 i = 0; i < m.rows_; ++i) {
            if (grid[i].size() != m.cols_) raise(ErrorKind::BadRange, "ragged matrix rows");
            for (u32 j = 0; j < m.cols_; ++j) m.at(i, j) = FE::from_int(ctx, grid[i][j]);
        }
        return m;
    }

    static Mat identity(const FieldCtxPtr& ctx, u32 n) {
        Mat m(ctx, n, n);
        for (u32 i = 0; i < n; ++i) m.at(i, i) = FE::one(ctx);
        return m;
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    u32 rows() const { return rows_; }
    u32 cols() const { return cols_; }
    bool valid() const { return ctx_ != nullptr; }
    bool is_square() const { return rows_ == cols_; }

    FE& at(u32 i, u32 j) { return a_[size_t(i) * cols_ + j]; }
    const FE& at(u32 i, u32 j) const { return a_[size_t(i) * cols_ + j]; }

    std::vector<FE> row(u32 i) const {
        return std::vector<FE>(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
    }
    std::vector<FE> col(u32 j) const {
        std::vector<FE> v;
        v.reserve(rows_);
        for (u32 i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    Mat transposed() const {
        Mat m(ctx_, cols_, rows_);
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    FE trace() const {
        require_square();
        FE t = FE::zero(ctx_);
        for (u32 i = 0; i < rows_; ++i) t = t + at(i, i);
        return t;
    }

    Mat embedded(const FieldCtxPtr& target) const {
        Mat m(target, rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].embedded(target);
        return m;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        auto [x, y] = aligned(a, b);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) raise(ErrorKind::BadRange, "matrix dimension mismatch in +");
        Mat m(x.ctx_, x.rows_, x.cols_);
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] + y.a_[k];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        auto [x, y] = aligned(a, b);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) raise(ErrorKind::BadRange, "matrix dimension mismatch in -");
        Mat m(x.ctx_, x.rows_, x.cols_);
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] - y.a_[k];
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        auto [x, y] = aligned(a, b);
        if (x.cols_ != y.rows_) raise(ErrorKind::BadRange, "matrix dimension mismatch in *");
        Mat m(x.ctx_, x.rows_, y.cols_);
        for (u32 i = 0; i < x.rows_; ++i)
            for (u32 k = 0; k < x.cols_; ++k) {
                const FE& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (u32 j = 0; j < y.cols_; ++j) {
                    const FE& ykj = y.at(k, j);
                    if (ykj.is_zero()) continue;
                    m.at(i, j) = m.at(i, j) + xik * ykj;
                }
            }
        return m;
    }
    friend Mat operator*(const FE& c, const Mat& a) {
        Mat m(a.ctx_, a.rows_, a.cols_);
        FE cc = c.ctx()->same_as(*a.ctx_) ? c : c.embedded(a.ctx_);
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = cc * a.a_[k];
        return m;
    }

    /// Matrix-vector product A·x (x as column vector).
    std::vector<FE> apply(const std::vector<FE>& x) const {
        if (x.size() != cols_) raise(ErrorKind::BadRange, "vector length mismatch in matrix apply");
        std::vector<FE> y(rows_, FE::zero(ctx_));
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    Mat pow(u64 e) const {
        require_square();
        Mat base = *this, acc = identity(ctx_, rows_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t k = 0; k < a.a_.size(); ++k)
            if (a.a_[k] != b.a_[k]) return false;
        return true;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    bool is_identity() const {
        if (!is_square()) return false;
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j)
                if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::string to_string() const {
        std::string out = "[";
        for (u32 i = 0; i < rows_; ++i) {
            out += i ? "; " : "";
            out += "[";
            for (u32 j = 0; j < cols_; ++j) {
                out += j ? ", " : "";
                out += at(i, j).to_string();
            }
            out += "]";
        }
        return out + "]";
    }

  private:
    void require_square() const {
        if (!is_square()) raise(ErrorKind::BadRange, "operation requires a square matrix");
    }

    static std::pair<Mat, Mat> aligned(const Mat& a, const Mat& b) {
        if (!a.ctx_ || !b.ctx_) raise(ErrorKind::FieldMismatch, "uninitialized matrix");
        if (a.ctx_->same_as(*b.ctx_)) return {a, b};
        if (a.ctx_->prefix_of(*b.ctx_)) return {a.embedded(b.ctx_), b};
        if (b.ctx_->prefix_of(*a.ctx_)) return {a, b.embedded(a.ctx_)};
        raise(ErrorKind::FieldMismatch, "matrices over unrelated field towers");
    }

    FieldCtxPtr ctx_;
    u32 rows_ = 0, cols_ = 0;
    std::vector<FE> a_;
};

/// Embed a state vector into an extension tower.
inline std::vector<FE> embed_vector(const std::vector<FE>& v, const FieldCtxPtr& target) {
    std::vector<FE> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.embedded(target));
    return out;
}

inline bool vector_is_zero(const std::vector<FE>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline std::string vector_to_string(const std::vector<FE>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        out += i ? ", " : "";
        out += v[i].to_string();
    }
    return out + "]";
}

} // namespace pfss

#endif // PFSS_MATRIX_HPP
