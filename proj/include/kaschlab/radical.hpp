#pragma once

#include <string>
#include <vector>

#include "kaschlab/algebra.hpp"

namespace kaschlab {

/// Jacobson radical J of an algebra together with the data needed to pass
/// to the semisimple quotient A/J.
template <ExactField F>
struct RadicalData {
  /// Reduced echelon rows spanning J.
  Matrix<F> basis;
  std::vector<std::size_t> pivots;
  /// Smallest k with J^k = 0; 1 when J = 0.
  std::size_t nilpotency_index = 1;
  /// Rows spanning J modulo J². They generate J as a left and as a right ideal.
  Matrix<F> generators;
  /// Basis indices of A whose images form a basis of A/J.
  std::vector<std::size_t> complement;

  std::size_t dim() const { return basis.rows(); }

  /// Coordinates in A/J of an element of A.
  Vector<F> project(Vector<F> v) const {
    const F& f = basis.field();
    for (std::size_t s = 0; s < pivots.size(); ++s) axpy<F>(f, f.neg(v[pivots[s]]), basis.row_span(s), v);
    Vector<F> out;
    out.reserve(complement.size());
    for (auto i : complement) out.push_back(v[i]);
    return out;
  }

  /// The element of A with the given A/J coordinates on the complement basis.
  Vector<F> section(std::span<const typename F::Element> coords, std::size_t dim_a) const {
    const F& f = basis.field();
    Vector<F> v(dim_a, f.zero());
    for (std::size_t s = 0; s < complement.size(); ++s) v[complement[s]] = coords[s];
    return v;
  }
};

namespace detail {

template <ExactField F>
Matrix<F> trace_form(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  Vector<F> traces(d, f.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) traces[k] = f.add(traces[k], a.constant(k, i, i));
  // Tr(L_{b_i} L_{b_j}) = Tr(L_{b_i b_j}) = Σ_k c_ijk Tr(L_{b_k})
  Matrix<F> g(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (!f.is_zero(a.constant(i, j, k))) g(i, j) = f.add(g(i, j), f.mul(a.constant(i, j, k), traces[k]));
  return g;
}

template <ExactField F>
Matrix<F> product_space(const Algebra<F>& a, const Matrix<F>& left, const Matrix<F>& right) {
  EchelonBasis<F> span(a.field(), a.dim());
  for (std::size_t s = 0; s < left.rows(); ++s)
    for (std::size_t t = 0; t < right.rows(); ++t) span.insert(a.multiply(left.row_span(s), right.row_span(t)));
  return row_basis(span.basis().rows() == 0 ? Matrix<F>(a.field(), 0, a.dim()) : span.basis());
}

template <ExactField F>
AlgebraData<F> quotient_data(const Algebra<F>& a, const RadicalData<F>& rad) {
  std::vector<std::string> labels;
  for (auto i : rad.complement) labels.push_back(a.labels()[i]);
  auto data = AlgebraData<F>::zeros(a.field(), a.name() + "_ss", labels);
  const std::size_t q = labels.size();
  for (std::size_t s = 0; s < q; ++s)
    for (std::size_t t = 0; t < q; ++t) {
      const auto c = rad.project(a.multiply(a.basis_vector(rad.complement[s]), a.basis_vector(rad.complement[t])));
      for (std::size_t k = 0; k < q; ++k) data.at(s, t, k) = c[k];
    }
  data.unit = rad.project(a.unit());
  return data;
}

}  // namespace detail

namespace detail {

template <ExactField F>
RadicalData<F> trace_radical(const Algebra<F>& a);

}  // namespace detail

/// Jacobson radical via the trace form {x : Tr(L_x L_y) = 0 for all y}. The
/// result is verified (two-sided ideal, nilpotent, quotient with
/// non-degenerate trace form) before it is returned; a verified candidate is
/// the radical in every characteristic. In characteristic 0 or p > dim A the
/// verification cannot fail; for 0 < p <= dim A a failed verification is
/// reported as UnsupportedCharacteristic.
template <ExactField F>
RadicalData<F> radical(const Algebra<F>& a) {
  const auto p = a.field().characteristic();
  if (p == 0 || p > a.dim()) return detail::trace_radical(a);
  try {
    return detail::trace_radical(a);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RadicalVerificationFailed) throw;
    fail(ErrorCode::UnsupportedCharacteristic, "trace-form radical failed in characteristic " + std::to_string(p) +
                                                   " <= dim A = " + std::to_string(a.dim()) + " (" + e.what() + ")");
  }
}

namespace detail {

template <ExactField F>
RadicalData<F> trace_radical(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t d = a.dim();

  RadicalData<F> rad{Matrix<F>(f, 0, d), {}, 1, Matrix<F>(f, 0, d), {}};
  const auto red = rref(kernel_basis(detail::trace_form(a)));
  rad.basis = Matrix<F>(f, red.rank, d);
  for (std::size_t s = 0; s < red.rank; ++s) rad.basis.set_row(s, red.reduced.row_span(s));
  rad.pivots = red.pivots;

  for (std::size_t s = 0; s < rad.dim(); ++s)
    for (std::size_t i = 0; i < d; ++i) {
      const bool closed = subspace_contains(rad.basis, a.multiply(rad.basis.row_span(s), a.basis_vector(i))) &&
                          subspace_contains(rad.basis, a.multiply(a.basis_vector(i), rad.basis.row_span(s)));
      require(closed, ErrorCode::RadicalVerificationFailed, "trace-form kernel is not a two-sided ideal");
    }

  Matrix<F> power = rad.basis;
  Matrix<F> square(f, 0, d);
  rad.nilpotency_index = 1;
  while (power.rows() > 0) {
    require(rad.nilpotency_index <= d, ErrorCode::RadicalVerificationFailed,
            "trace-form kernel is not nilpotent (characteristic too small for this algebra?)");
    power = detail::product_space(a, power, rad.basis);
    if (rad.nilpotency_index == 1) square = power;
    ++rad.nilpotency_index;
  }
  if (rad.dim() == 0) rad.nilpotency_index = 1;

  EchelonBasis<F> modulo_square(f, d);
  for (std::size_t s = 0; s < square.rows(); ++s) modulo_square.insert(square.row(s));
  rad.generators = Matrix<F>(f, 0, d);
  for (std::size_t s = 0; s < rad.dim(); ++s)
    if (modulo_square.insert(rad.basis.row(s))) rad.generators.append_row(rad.basis.row_span(s));

  std::vector<bool> is_pivot(d, false);
  for (auto q : rad.pivots) is_pivot[q] = true;
  for (std::size_t i = 0; i < d; ++i)
    if (!is_pivot[i]) rad.complement.push_back(i);

  // A/J must be semisimple: its own trace form is non-degenerate.
  const auto quotient = detail::quotient_data(a, rad);
  require(rank(detail::trace_form(Algebra<F>(quotient))) == quotient.dim(), ErrorCode::RadicalVerificationFailed,
          "A/J is not semisimple");
  return rad;
}

}  // namespace detail

/// Structure constants of A/J on the complement basis.
template <ExactField F>
Algebra<F> semisimple_quotient(const Algebra<F>& a, const RadicalData<F>& rad) {
  return Algebra<F>(detail::quotient_data(a, rad));
}

}  // namespace kaschlab
