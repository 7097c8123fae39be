#pragma once

// Exact dense linear algebra over Q, plus a small floating fallback used when
// a bending complex carries angles without rational cosine/sine.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bendlab/rational.hpp"

namespace bendlab {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error("matrix entry count does not match shape");
  }
  /// Row-major nested initializer, e.g. {{1, 2}, {3, 4}}.
  RationalMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RationalMatrix column(std::span<const Rational> v) {
    return RationalMatrix(v.size(), 1, std::vector<Rational>(v.begin(), v.end()));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Rational>& entries() const { return data_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalVector column_vector(std::size_t c) const {
    RationalVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }

  /// Copy of the block [r0, r0+nr) x [c0, c0+nc).
  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
    RationalMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const RationalMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// Row-major flattening, used to treat matrices as vectors.
  RationalVector flatten() const {
    RationalVector v;
    v.reserve(data_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) v.push_back((*this)(i, j));
    return v;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  RationalMatrix& operator*=(const Rational& s) {
    for (auto& q : data_) q *= s;
    return *this;
  }

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator-(RationalMatrix a) {
    for (auto& q : a.data_) q = -q;
    return a;
  }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) == 0) continue;
          t = aik * b(k, j);
          c(i, j) += t;
        }
      }
    return c;
  }

  friend RationalVector operator*(const RationalMatrix& a, std::span<const Rational> v) {
    if (a.cols_ != v.size()) throw Error("matrix-vector shape mismatch");
    RationalVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) out[i] += a(i, j) * v[j];
    return out;
  }
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v) {
    return a * std::span<const Rational>(v);
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Stacks blocks vertically; all must share a column count.
inline RationalMatrix vstack(std::span<const RationalMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0, cols = blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error("vstack column mismatch");
    rows += b.rows();
  }
  RationalMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

/// Matrix whose columns are the given vectors (all of length `rows`).
inline RationalMatrix from_columns(std::span<const RationalVector> cols, std::size_t rows) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

inline bool is_zero_vector(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

struct RrefResult {
  RationalMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination. Pivot is the first nonzero entry scanning the
/// current column from the current row down.
inline RrefResult rref_rank(const RationalMatrix& m) {
  RrefResult out{m, 0, {}};
  RationalMatrix& a = out.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  Rational factor, t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) swap(a(p, j), a(r, j));
    if (a(r, c) != 1) {
      Rational inv = 1 / a(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a(r, j)) != 0) a(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      factor = a(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(a(r, j)) == 0) continue;
        t = factor * a(r, j);
        a(i, j) -= t;
      }
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref_rank(m).rank; }

/// Basis of {v : m v = 0}, one vector per free column, read off the RREF.
inline std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const RrefResult rr = rref_rank(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivot_columns) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivot_columns[i]] = -rr.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with A x = b, or nullopt when b is outside the column space.
inline std::optional<RationalVector> in_column_space(const RationalMatrix& a,
                                                     std::span<const Rational> b) {
  if (b.size() != a.rows()) throw Error("in_column_space: right-hand side has wrong length");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  const RrefResult rr = rref_rank(aug);
  if (!rr.pivot_columns.empty() && rr.pivot_columns.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivot_columns[i]] = rr.reduced(i, a.cols());
  return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, RationalMatrix::identity(n));
  const RrefResult rr = rref_rank(aug);
  if (rr.rank < n || rr.pivot_columns[n - 1] != n - 1) return std::nullopt;
  return rr.reduced.block(0, n, n, n);
}

inline Rational determinant(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

inline RationalMatrix power(const RationalMatrix& m, unsigned k) {
  RationalMatrix out = RationalMatrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

/// Dimension of span(a) + span(b) minus dimension of span(b): how many new
/// directions the vectors of `a` add.
inline std::size_t added_rank(std::span<const RationalVector> a, std::span<const RationalVector> b,
                              std::size_t length) {
  std::vector<RationalVector> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return rank(from_columns(all, length)) - rank(from_columns(b, length));
}

// ---------------------------------------------------------------------------
// Floating fallback

inline constexpr double kDefaultRankTolerance = 1e-9;

struct FloatMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;
  double rank_tolerance = kDefaultRankTolerance;

  FloatMatrix() = default;
  FloatMatrix(std::size_t r, std::size_t c, double tol = kDefaultRankTolerance)
      : rows(r), cols(c), entries(r * c, 0.0), rank_tolerance(tol) {
    if (!(tol > 0)) throw Error("rank tolerance must be positive");
  }

  double& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Full-pivot elimination; entries below tolerance * |first pivot| count as zero.
inline std::size_t float_rank(const FloatMatrix& m) {
  std::vector<double> a = m.entries;
  const std::size_t rows = m.rows, cols = m.cols;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * cols + j]; };
  std::vector<std::size_t> colperm(cols);
  for (std::size_t j = 0; j < cols; ++j) colperm[j] = j;
  double scale = 0;
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t pi = r, pj = r;
    double best = 0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          pi = i;
          pj = j;
        }
    if (r == 0) scale = best;
    if (best == 0 || best <= m.rank_tolerance * scale) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(r, j), at(pi, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, r), at(i, pj));
    for (std::size_t i = r + 1; i < rows; ++i) {
      double f = at(i, r) / at(r, r);
      if (f == 0) continue;
      for (std::size_t j = r; j < cols; ++j) at(i, j) -= f * at(r, j);
    }
  }
  return r;
}

inline FloatMatrix to_float(const RationalMatrix& m, double tol = kDefaultRankTolerance) {
  FloatMatrix f(m.rows(), m.cols(), tol);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = m(i, j).get_d();
  return f;
}

}  // namespace bendlab
