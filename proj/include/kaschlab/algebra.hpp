#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kaschlab/matrix.hpp"

namespace kaschlab {

/// Raw, unvalidated description of an algebra by structure constants:
/// b_i · b_j = Σ_k constants[(i·d + j)·d + k] · b_k.
template <ExactField F>
struct AlgebraData {
  F field;
  std::string name;
  std::vector<std::string> labels;
  std::vector<typename F::Element> constants;
  Vector<F> unit;

  std::size_t dim() const { return labels.size(); }
  typename F::Element& at(std::size_t i, std::size_t j, std::size_t k) { return constants[(i * dim() + j) * dim() + k]; }
  const typename F::Element& at(std::size_t i, std::size_t j, std::size_t k) const {
    return constants[(i * dim() + j) * dim() + k];
  }

  static AlgebraData zeros(F field, std::string name, std::vector<std::string> labels) {
    const std::size_t d = labels.size();
    AlgebraData a{field, std::move(name), std::move(labels), {}, {}};
    a.constants.assign(d * d * d, field.zero());
    a.unit.assign(d, field.zero());
    return a;
  }
};

struct Violation {
  enum class Kind { Shape, Associativity, LeftUnit, RightUnit };
  Kind kind;
  std::size_t i = 0, j = 0, l = 0;

  std::string describe(const std::vector<std::string>& labels) const {
    auto lab = [&](std::size_t x) { return x < labels.size() ? labels[x] : std::to_string(x); };
    switch (kind) {
      case Kind::Shape: return "malformed structure-constant array";
      case Kind::Associativity: return "(" + lab(i) + "*" + lab(j) + ")*" + lab(l) + " != " + lab(i) + "*(" + lab(j) + "*" + lab(l) + ")";
      case Kind::LeftUnit: return "1*" + lab(i) + " != " + lab(i);
      case Kind::RightUnit: return lab(i) + "*1 != " + lab(i);
    }
    return {};
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

namespace detail {

/// Sparse product of two coordinate vectors through the structure constants.
template <ExactField F>
Vector<F> multiply(const AlgebraData<F>& a, std::span<const typename F::Element> x,
                   std::span<const typename F::Element> y) {
  const F& f = a.field;
  const std::size_t d = a.dim();
  Vector<F> out(d, f.zero());
  for (std::size_t i = 0; i < d; ++i) {
    if (f.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (f.is_zero(y[j])) continue;
      const auto xy = f.mul(x[i], y[j]);
      const auto* row = &a.constants[(i * d + j) * d];
      for (std::size_t k = 0; k < d; ++k)
        if (!f.is_zero(row[k])) out[k] = f.add(out[k], f.mul(xy, row[k]));
    }
  }
  return out;
}

}  // namespace detail

/// Lists every failing associativity and unit identity.
template <ExactField F>
ValidationReport validate(const AlgebraData<F>& a) {
  ValidationReport report;
  const std::size_t d = a.dim();
  if (d == 0 || a.constants.size() != d * d * d || a.unit.size() != d) {
    report.violations.push_back({Violation::Kind::Shape});
    return report;
  }
  const F& f = a.field;
  auto basis = [&](std::size_t i) { return unit_vector(f, d, i); };
  std::vector<Vector<F>> products(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      products[i * d + j] = Vector<F>(a.constants.begin() + static_cast<std::ptrdiff_t>((i * d + j) * d),
                                      a.constants.begin() + static_cast<std::ptrdiff_t>((i * d + j + 1) * d));
  for (std::size_t i = 0; i < d; ++i) {
    const auto bi = basis(i);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        const auto lhs = detail::multiply<F>(a, products[i * d + j], basis(l));
        const auto rhs = detail::multiply<F>(a, bi, products[j * d + l]);
        if (lhs != rhs) report.violations.push_back({Violation::Kind::Associativity, i, j, l});
      }
    if (detail::multiply<F>(a, a.unit, bi) != bi) report.violations.push_back({Violation::Kind::LeftUnit, i});
    if (detail::multiply<F>(a, bi, a.unit) != bi) report.violations.push_back({Violation::Kind::RightUnit, i});
  }
  return report;
}

/// Solves 1·b_i = b_i = b_i·1 for the unit; nothing when no unit exists.
template <ExactField F>
std::optional<Vector<F>> detect_unit(const AlgebraData<F>& a) {
  const F& f = a.field;
  const std::size_t d = a.dim();
  // Unknown u (length d): Σ_m u_m c[m][i][k] = δ_ik and Σ_m u_m c[i][m][k] = δ_ik.
  Matrix<F> system(f, d, 2 * d * d);
  Matrix<F> rhs(f, 1, 2 * d * d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        system(m, i * d + k) = a.at(m, i, k);
        system(m, d * d + i * d + k) = a.at(i, m, k);
      }
  for (std::size_t i = 0; i < d; ++i) {
    rhs(0, i * d + i) = f.one();
    rhs(0, d * d + i * d + i) = f.one();
  }
  // u·system = rhs  ⇔  systemᵀ·uᵀ = rhsᵀ
  auto sol = solve(system.transpose(), rhs.transpose());
  if (!sol) return std::nullopt;
  return sol->transpose().row(0);
}

/// A validated finite-dimensional unital associative algebra. Immutable; the
/// commutativity flag and an algebra-generating subset of the basis are
/// computed once at construction.
template <ExactField F>
class Algebra {
 public:
  using Element = typename F::Element;

  explicit Algebra(AlgebraData<F> data) : data_(std::move(data)) {
    const auto report = validate(data_);
    if (!report.valid())
      fail(ErrorCode::InvalidAlgebra, "algebra '" + data_.name + "': " + report.violations.front().describe(data_.labels) +
                                          " (" + std::to_string(report.violations.size()) + " violation(s))");
    commutative_ = compute_commutative();
    generators_ = compute_generators();
  }

  /// Builds an algebra whose unit is found by solving the unit equations.
  static Algebra with_detected_unit(AlgebraData<F> data) {
    auto unit = detect_unit(data);
    require(unit.has_value(), ErrorCode::NonUnitalResult, "algebra '" + data.name + "' has no unit");
    data.unit = std::move(*unit);
    return Algebra(std::move(data));
  }

  const F& field() const { return data_.field; }
  std::size_t dim() const { return data_.dim(); }
  const std::string& name() const { return data_.name; }
  const std::vector<std::string>& labels() const { return data_.labels; }
  const Vector<F>& unit() const { return data_.unit; }
  const AlgebraData<F>& data() const { return data_; }
  const Element& constant(std::size_t i, std::size_t j, std::size_t k) const { return data_.at(i, j, k); }
  bool is_commutative() const { return commutative_; }
  const std::vector<std::size_t>& generators() const { return generators_; }

  Vector<F> basis_vector(std::size_t i) const { return unit_vector(field(), dim(), i); }
  Vector<F> zero() const { return zero_vector(field(), dim()); }

  Vector<F> multiply(std::span<const Element> x, std::span<const Element> y) const {
    require(x.size() == dim() && y.size() == dim(), ErrorCode::DimensionMismatch, "element length != algebra dim");
    return detail::multiply<F>(data_, x, y);
  }

  /// Matrix of y ↦ x·y in row convention.
  Matrix<F> left_mult_matrix(std::span<const Element> x) const {
    require(x.size() == dim(), ErrorCode::DimensionMismatch, "element length != algebra dim");
    const F& f = field();
    Matrix<F> m(f, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      if (f.is_zero(x[j])) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < dim(); ++k) m(i, k) = f.add(m(i, k), f.mul(x[j], constant(j, i, k)));
    }
    return m;
  }

  /// Matrix of y ↦ y·x in row convention.
  Matrix<F> right_mult_matrix(std::span<const Element> x) const {
    require(x.size() == dim(), ErrorCode::DimensionMismatch, "element length != algebra dim");
    const F& f = field();
    Matrix<F> m(f, dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      if (f.is_zero(x[j])) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < dim(); ++k) m(i, k) = f.add(m(i, k), f.mul(x[j], constant(i, j, k)));
    }
    return m;
  }

  /// Structural equality: field, dimension, constants and unit (names and
  /// labels ignored).
  bool same_structure(const Algebra& o) const {
    return field().spec() == o.field().spec() && data_.constants == o.data_.constants && data_.unit == o.data_.unit;
  }

 private:
  bool compute_commutative() const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (!(constant(i, j, k) == constant(j, i, k))) return false;
    return true;
  }

  std::vector<std::size_t> compute_generators() const {
    // Greedy: add b_i whenever it escapes the subalgebra generated so far.
    std::vector<std::size_t> gens;
    EchelonBasis<F> span(field(), dim());
    std::vector<Vector<F>> words;
    auto close = [&](std::size_t from) {
      for (std::size_t w = from; w < words.size(); ++w)
        for (auto g : gens) {
          auto v = multiply(words[w], basis_vector(g));
          if (span.insert(v)) words.push_back(std::move(v));
        }
    };
    span.insert(unit());
    words.push_back(unit());
    for (std::size_t i = 0; i < dim() && span.size() < dim(); ++i) {
      if (span.contains(basis_vector(i))) continue;
      gens.push_back(i);
      // New generator: every existing word times it, then the closure.
      const std::size_t before = words.size();
      for (std::size_t w = 0; w < before; ++w)
        for (auto g : gens) {
          auto v = multiply(words[w], basis_vector(g));
          if (span.insert(v)) words.push_back(std::move(v));
        }
      close(before);
    }
    return gens;
  }

  AlgebraData<F> data_;
  bool commutative_ = false;
  std::vector<std::size_t> generators_;
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

template <ExactField F>
AlgebraPtr<F> share(Algebra<F> a) {
  return std::make_shared<const Algebra<F>>(std::move(a));
}

}  // namespace kaschlab
