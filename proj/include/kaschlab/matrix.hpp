#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kaschlab/error.hpp"
#include "kaschlab/field.hpp"

namespace kaschlab {

template <ExactField F>
using Vector = std::vector<typename F::Element>;

/// Dense row-major matrix over an exact field. Vectors are rows: a linear map
/// is applied as v ↦ v·M throughout the library.
template <ExactField F>
class Matrix {
 public:
  using Element = typename F::Element;

  explicit Matrix(F field, std::size_t rows = 0, std::size_t cols = 0)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == c, ErrorCode::DimensionMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (auto v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorCode::DimensionMismatch, "row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.row_begin(i));
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  auto row_begin(std::size_t r) { return data_.begin() + static_cast<std::ptrdiff_t>(r * cols_); }
  auto row_begin(std::size_t r) const { return data_.begin() + static_cast<std::ptrdiff_t>(r * cols_); }
  std::span<const Element> row_span(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector<F> row(std::size_t r) const { return Vector<F>(row_begin(r), row_begin(r) + static_cast<std::ptrdiff_t>(cols_)); }
  void set_row(std::size_t r, std::span<const Element> v) {
    require(v.size() == cols_, ErrorCode::DimensionMismatch, "set_row length");
    std::copy(v.begin(), v.end(), row_begin(r));
  }
  void append_row(std::span<const Element> v) {
    require(v.size() == cols_ || rows_ == 0, ErrorCode::DimensionMismatch, "append_row length");
    if (rows_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Element& e) { return field_.is_zero(e); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_rows(std::span<const std::size_t> indices) const {
    Matrix m(field_, indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) m.set_row(i, row_span(indices[i]));
    return m;
  }

  Matrix select_cols(std::span<const std::size_t> indices) const {
    Matrix m(field_, rows_, indices.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < indices.size(); ++j) m(i, j) = (*this)(i, indices[j]);
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, ErrorCode::DimensionMismatch,
            "product of " + shape() + " and " + o.shape());
    Matrix p(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) = field_.add(p(i, j), field_.mul(a, o(k, j)));
      }
    return p;
  }

  Matrix operator+(const Matrix& o) const { return combine(o, [&](const Element& a, const Element& b) { return field_.add(a, b); }); }
  Matrix operator-(const Matrix& o) const { return combine(o, [&](const Element& a, const Element& b) { return field_.sub(a, b); }); }

  Matrix scaled(const Element& s) const {
    Matrix m(*this);
    for (auto& e : m.data_) e = field_.mul(e, s);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : ", [";
      for (std::size_t j = 0; j < cols_; ++j) s += (j == 0 ? "" : ", ") + field_.to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  template <class Op>
  Matrix combine(const Matrix& o, Op op) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch,
            "elementwise op on " + shape() + " and " + o.shape());
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = op(data_[i], o.data_[i]);
    return m;
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

template <ExactField F>
Vector<F> zero_vector(const F& f, std::size_t n) {
  return Vector<F>(n, f.zero());
}

template <ExactField F>
Vector<F> unit_vector(const F& f, std::size_t n, std::size_t i) {
  Vector<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <ExactField F>
bool is_zero_vector(const F& f, std::span<const typename F::Element> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& e) { return f.is_zero(e); });
}

/// v·M
template <ExactField F>
Vector<F> apply(std::span<const typename F::Element> v, const Matrix<F>& m) {
  const F& f = m.field();
  require(v.size() == m.rows(), ErrorCode::DimensionMismatch, "vector length vs matrix rows");
  Vector<F> out(m.cols(), f.zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (f.is_zero(v[k])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
  }
  return out;
}

/// y += s·x
template <ExactField F>
void axpy(const F& f, const typename F::Element& s, std::span<const typename F::Element> x,
          std::span<typename F::Element> y) {
  if (f.is_zero(s)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(s, x[i]));
}

// ---------------------------------------------------------------------------
// Gaussian elimination

template <ExactField F>
struct RrefResult {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form; pivots are the first non-zero entry in column
/// order so the output is reproducible. Zero rows are kept at the bottom.
template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  const std::size_t rank = pivots.size();
  return {std::move(m), std::move(pivots), rank};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

/// Rows of the reduced echelon form that are non-zero: a canonical basis of
/// the row space.
template <ExactField F>
Matrix<F> row_basis(const Matrix<F>& m) {
  auto r = rref(m);
  Matrix<F> b(m.field(), r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) b.set_row(i, r.reduced.row_span(i));
  return b;
}

/// Right null space: rows v with m·vᵀ = 0, one per free column, in column order.
template <ExactField F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix<F> basis(f, 0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    basis.append_row(v);
  }
  return basis;
}

/// Rows v with v·m = 0.
template <ExactField F>
Matrix<F> left_kernel_basis(const Matrix<F>& m) {
  return kernel_basis(m.transpose());
}

/// Some X with a·X = b, or nothing when the system is inconsistent. Free
/// variables are set to zero, so the answer is deterministic.
template <ExactField F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.rows() == b.rows(), ErrorCode::DimensionMismatch,
          "solve: a has " + std::to_string(a.rows()) + " rows, b has " + std::to_string(b.rows()));
  const F& f = a.field();
  Matrix<F> aug(f, a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  auto r = rref(std::move(aug));
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t c = r.pivots[i];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = r.reduced(i, a.cols() + j);
  }
  require(a * x == b, ErrorCode::ExtensionSystemInconsistent, "solve: verification failed");
  return x;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Matrix<F>::identity(a.field(), a.rows()));
}

template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() == 0 && a.cols() != b.cols()) return b;
  require(a.cols() == b.cols() || b.rows() == 0, ErrorCode::DimensionMismatch, "vstack column mismatch");
  Matrix<F> m(a);
  for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row_span(i));
  return m;
}

template <ExactField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "hstack row mismatch");
  Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <ExactField F>
Matrix<F> sum_rowspaces(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.cols() == b.cols(), ErrorCode::DimensionMismatch, "sum_rowspaces column mismatch");
  return row_basis(vstack(a, b));
}

template <ExactField F>
Matrix<F> intersect_rowspaces(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.cols() == b.cols(), ErrorCode::DimensionMismatch, "intersect_rowspaces column mismatch");
  const Matrix<F> ba = row_basis(a);
  const Matrix<F> bb = row_basis(b);
  // x·A + y·B = 0  ⇒  x·A lies in both spaces.
  const Matrix<F> relations = left_kernel_basis(vstack(ba, bb));
  Matrix<F> out(a.field(), 0, a.cols());
  for (std::size_t i = 0; i < relations.rows(); ++i) {
    auto x = relations.row(i);
    x.resize(ba.rows());
    out.append_row(apply<F>(x, ba));
  }
  return row_basis(out);
}

template <ExactField F>
bool subspace_contains(const Matrix<F>& a, std::span<const typename F::Element> v) {
  require(a.cols() == v.size(), ErrorCode::DimensionMismatch, "subspace_contains length mismatch");
  Matrix<F> single(a.field(), 0, a.cols());
  single.append_row(v);
  return rank(vstack(a, single)) == rank(a);
}

/// Incrementally built semi-echelon basis. Each stored row has a leading 1 at
/// its pivot and zeros at all earlier pivots, so one forward pass reduces a
/// vector. Optionally tracks every stored row as a combination of the
/// original vectors that were inserted.
template <ExactField F>
class EchelonBasis {
 public:
  using Element = typename F::Element;

  EchelonBasis(F field, std::size_t width, bool track = false)
      : field_(std::move(field)), width_(width), track_(track) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v in place; returns the coefficients c with v_in = Σ c_t w_t + v_out.
  Vector<F> reduce(Vector<F>& v) const {
    Vector<F> coeffs(rows_.size(), field_.zero());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const Element c = v[pivots_[t]];
      if (field_.is_zero(c)) continue;
      coeffs[t] = c;
      axpy<F>(field_, field_.neg(c), rows_[t], v);
    }
    return coeffs;
  }

  bool contains(Vector<F> v) const {
    reduce(v);
    return is_zero_vector<F>(field_, v);
  }

  /// Inserts v; returns true when it enlarged the span.
  bool insert(Vector<F> v) { return insert_tracked(std::move(v)).has_value(); }

  /// When v is dependent returns nothing; the dependency (in terms of the
  /// originally inserted vectors) is available through express().
  std::optional<std::size_t> insert_tracked(Vector<F> v) {
    Vector<F> coeffs = reduce(v);
    std::size_t lead = 0;
    while (lead < width_ && field_.is_zero(v[lead])) ++lead;
    if (lead == width_) return std::nullopt;
    const Element inv = field_.inv(v[lead]);
    for (auto& e : v) e = field_.mul(e, inv);
    if (track_) {
      // w_new = (v_in − Σ c_t w_t) / lead, expressed over inserted originals.
      Vector<F> combo(originals_ + 1, field_.zero());
      combo[originals_] = field_.one();
      for (std::size_t t = 0; t < coeffs.size(); ++t)
        if (!field_.is_zero(coeffs[t]))
          for (std::size_t s = 0; s < combos_[t].size(); ++s)
            combo[s] = field_.sub(combo[s], field_.mul(coeffs[t], combos_[t][s]));
      for (auto& e : combo) e = field_.mul(e, inv);
      combos_.push_back(std::move(combo));
    }
    ++originals_;
    rows_.push_back(std::move(v));
    pivots_.push_back(lead);
    return rows_.size() - 1;
  }

  /// For v in the span, coefficients over the inserted originals (tracking only).
  std::optional<Vector<F>> express(Vector<F> v) const {
    Vector<F> coeffs = reduce(v);
    if (!is_zero_vector<F>(field_, v)) return std::nullopt;
    Vector<F> out(originals_, field_.zero());
    for (std::size_t t = 0; t < coeffs.size(); ++t)
      if (!field_.is_zero(coeffs[t]))
        for (std::size_t s = 0; s < combos_[t].size(); ++s) out[s] = field_.add(out[s], field_.mul(coeffs[t], combos_[t][s]));
    return out;
  }

  Matrix<F> basis() const { return Matrix<F>::from_rows(field_, width_, rows_); }

 private:
  F field_;
  std::size_t width_;
  bool track_;
  std::size_t originals_ = 0;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<F>> combos_;
};

}  // namespace kaschlab
