#pragma once

#include <set>
#include <string>
#include <vector>

#include "kaschlab/algebra.hpp"

namespace kaschlab {

/// Cayley table of a finite group on {0, …, n−1} with 0 the identity.
struct GroupTable {
  std::size_t order = 1;
  std::vector<std::size_t> table{0};

  std::size_t mul(std::size_t g, std::size_t h) const { return table[g * order + h]; }

  static GroupTable cyclic(std::size_t n) {
    require(n >= 1, ErrorCode::InvalidAction, "cyclic group of order 0");
    GroupTable g{n, std::vector<std::size_t>(n * n)};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    return g;
  }

  void check() const {
    require(order >= 1 && table.size() == order * order, ErrorCode::InvalidAction, "malformed group table");
    for (std::size_t g = 0; g < order; ++g) {
      require(mul(0, g) == g && mul(g, 0) == g, ErrorCode::InvalidAction, "element 0 is not the identity");
      bool has_inverse = false;
      for (std::size_t h = 0; h < order; ++h) {
        require(mul(g, h) < order, ErrorCode::InvalidAction, "group table entry out of range");
        has_inverse = has_inverse || mul(g, h) == 0;
        for (std::size_t k = 0; k < order; ++k)
          require(mul(mul(g, h), k) == mul(g, mul(h, k)), ErrorCode::InvalidAction, "group table is not associative");
      }
      require(has_inverse, ErrorCode::InvalidAction, "group element without inverse");
    }
  }
};

/// A group acting on an algebra by automorphisms; g·a = a·images[g].
template <ExactField F>
struct GroupAction {
  GroupTable group;
  std::vector<Matrix<F>> images;

  /// Checks the automorphism and homomorphism identities; throws InvalidAction.
  void check(const Algebra<F>& a) const {
    group.check();
    require(images.size() == group.order, ErrorCode::InvalidAction, "one image per group element required");
    const std::size_t d = a.dim();
    for (std::size_t g = 0; g < group.order; ++g) {
      const auto& m = images[g];
      require(m.rows() == d && m.cols() == d, ErrorCode::InvalidAction, "automorphism matrix has wrong shape");
      require(rank(m) == d, ErrorCode::InvalidAction, "group element acts non-invertibly");
      require(apply<F>(a.unit(), m) == a.unit(), ErrorCode::InvalidAction, "action does not fix the unit");
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const auto lhs = apply<F>(a.multiply(a.basis_vector(i), a.basis_vector(j)), m);
          const auto rhs = a.multiply(m.row(i), m.row(j));
          require(lhs == rhs, ErrorCode::InvalidAction,
                  "action is not multiplicative on " + a.labels()[i] + "*" + a.labels()[j]);
        }
    }
    require(images[0] == Matrix<F>::identity(a.field(), d), ErrorCode::InvalidAction, "identity acts non-trivially");
    for (std::size_t g = 0; g < group.order; ++g)
      for (std::size_t h = 0; h < group.order; ++h)
        require(images[group.mul(g, h)] == images[h] * images[g], ErrorCode::InvalidAction,
                "action does not respect the group law");
  }

  /// Cyclic group of order n generated by one automorphism.
  static GroupAction cyclic(const Algebra<F>& a, const Matrix<F>& generator, std::size_t n) {
    GroupAction act{GroupTable::cyclic(n), {}};
    auto power = Matrix<F>::identity(a.field(), a.dim());
    for (std::size_t k = 0; k < n; ++k) {
      act.images.push_back(power);
      power = power * generator;
    }
    require(power == Matrix<F>::identity(a.field(), a.dim()), ErrorCode::InvalidAction,
            "generator does not have order dividing " + std::to_string(n));
    act.check(a);
    return act;
  }

  static GroupAction trivial(const Algebra<F>& a, const GroupTable& g) {
    GroupAction act{g, std::vector<Matrix<F>>(g.order, Matrix<F>::identity(a.field(), a.dim()))};
    act.check(a);
    return act;
  }

  /// The exchange (x, y) ↦ (y, x) on an algebra of even dimension 2m whose
  /// first and second halves of the basis are the two factors of a product.
  static GroupAction swap(const Algebra<F>& a) {
    require(a.dim() % 2 == 0, ErrorCode::InvalidAction, "swap action needs an even-dimensional product algebra");
    const std::size_t m = a.dim() / 2;
    Matrix<F> sigma(a.field(), a.dim(), a.dim());
    for (std::size_t i = 0; i < m; ++i) {
      sigma(i, i + m) = a.field().one();
      sigma(i + m, i) = a.field().one();
    }
    return cyclic(a, sigma, 2);
  }
};

/// An (A, A)-bimodule: a·m = m·left[a], m·a = m·right[a], one matrix per basis element.
template <ExactField F>
struct Bimodule {
  std::size_t dim = 0;
  std::vector<Matrix<F>> left;
  std::vector<Matrix<F>> right;

  static Bimodule regular(const Algebra<F>& a) {
    Bimodule m{a.dim(), {}, {}};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      m.left.push_back(a.left_mult_matrix(a.basis_vector(i)));
      m.right.push_back(a.right_mult_matrix(a.basis_vector(i)));
    }
    return m;
  }

  /// D(A) = Hom_k(A, k) with (a·f)(x) = f(x·a) and (f·a)(x) = f(a·x).
  static Bimodule dual_regular(const Algebra<F>& a) {
    Bimodule m{a.dim(), {}, {}};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      m.left.push_back(a.right_mult_matrix(a.basis_vector(i)).transpose());
      m.right.push_back(a.left_mult_matrix(a.basis_vector(i)).transpose());
    }
    return m;
  }
};

namespace detail {

inline std::string index_label(const std::string& stem, std::size_t i, std::size_t j, std::size_t n) {
  return n < 10 ? stem + std::to_string(i + 1) + std::to_string(j + 1)
                : stem + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

inline std::vector<std::string> disjoint_labels(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                                bool second) {
  std::set<std::string> seen(a.begin(), a.end());
  bool clash = false;
  for (const auto& l : b) clash = clash || seen.count(l) > 0;
  const auto& src = second ? b : a;
  if (!clash) return src;
  std::vector<std::string> out;
  for (const auto& l : src) out.push_back(l + (second ? "_2" : "_1"));
  return out;
}

}  // namespace detail

template <ExactField F>
Algebra<F> matrix_algebra(const F& f, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidAlgebra, "matrix algebra of size 0");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back(detail::index_label("E", i, j, n));
  auto data = AlgebraData<F>::zeros(f, "M" + std::to_string(n), labels);
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) data.at(idx(i, j), idx(j, l), idx(i, l)) = f.one();
  for (std::size_t i = 0; i < n; ++i) data.unit[idx(i, i)] = f.one();
  return Algebra<F>(std::move(data));
}

/// Upper triangular n×n matrices; basis E_ij (i ≤ j) in row-major order.
template <ExactField F>
Algebra<F> triangular_algebra(const F& f, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidAlgebra, "triangular algebra of size 0");
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      index[i][j] = labels.size();
      labels.push_back(detail::index_label("E", i, j, n));
    }
  auto data = AlgebraData<F>::zeros(f, "T" + std::to_string(n), labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t l = j; l < n; ++l) data.at(index[i][j], index[j][l], index[i][l]) = f.one();
  for (std::size_t i = 0; i < n; ++i) data.unit[index[i][i]] = f.one();
  return Algebra<F>(std::move(data));
}

/// k[x]/(x^n) with basis e, x, x2, …
template <ExactField F>
Algebra<F> truncated_poly(const F& f, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidAlgebra, "truncated polynomial algebra of degree 0");
  std::vector<std::string> labels{"e"};
  for (std::size_t i = 1; i < n; ++i) labels.push_back(i == 1 ? "x" : "x" + std::to_string(i));
  auto data = AlgebraData<F>::zeros(f, n == 2 ? "dual_numbers" : "trunc" + std::to_string(n), labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) data.at(i, j, i + j) = f.one();
  data.unit[0] = f.one();
  return Algebra<F>(std::move(data));
}

template <ExactField F>
Algebra<F> product(const Algebra<F>& a, const Algebra<F>& b) {
  require(a.field().spec() == b.field().spec(), ErrorCode::AlgebraMismatch, "product over different fields");
  auto labels = detail::disjoint_labels(a.labels(), b.labels(), false);
  auto second = detail::disjoint_labels(a.labels(), b.labels(), true);
  labels.insert(labels.end(), second.begin(), second.end());
  const std::size_t m = a.dim();
  auto data = AlgebraData<F>::zeros(a.field(), a.name() + "_x_" + b.name(), labels);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) data.at(i, j, k) = a.constant(i, j, k);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) data.at(m + i, m + j, m + k) = b.constant(i, j, k);
  for (std::size_t i = 0; i < m; ++i) data.unit[i] = a.unit()[i];
  for (std::size_t i = 0; i < b.dim(); ++i) data.unit[m + i] = b.unit()[i];
  return Algebra<F>(std::move(data));
}

template <ExactField F>
Algebra<F> opposite(const Algebra<F>& a) {
  auto data = a.data();
  const std::string& n = a.name();
  data.name = n.size() > 3 && n.ends_with("_op") ? n.substr(0, n.size() - 3) : n + "_op";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) data.at(i, j, k) = a.constant(j, i, k);
  return Algebra<F>(std::move(data));
}

/// Group algebra with basis g0 (identity), g1, …
template <ExactField F>
Algebra<F> group_algebra(const F& f, const GroupTable& g) {
  g.check();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < g.order; ++i) labels.push_back("g" + std::to_string(i));
  auto data = AlgebraData<F>::zeros(f, "kG" + std::to_string(g.order), labels);
  for (std::size_t a = 0; a < g.order; ++a)
    for (std::size_t b = 0; b < g.order; ++b) data.at(a, b, g.mul(a, b)) = f.one();
  data.unit[0] = f.one();
  return Algebra<F>(std::move(data));
}

/// A*G: basis a_i·ḡ at index g·dim(A) + i, with (a ḡ)(b h̄) = a (g·b) (gh)‾.
template <ExactField F>
Algebra<F> skew_group_algebra(const Algebra<F>& a, const GroupAction<F>& action) {
  action.check(a);
  const F& f = a.field();
  const std::size_t d = a.dim(), n = action.group.order;
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i) labels.push_back(g == 0 ? a.labels()[i] : a.labels()[i] + "_g" + std::to_string(g));
  auto data = AlgebraData<F>::zeros(f, a.name() + "_skew" + std::to_string(n), labels);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t gh = action.group.mul(g, h);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const auto prod = a.multiply(a.basis_vector(i), action.images[g].row(j));
          for (std::size_t k = 0; k < d; ++k) data.at(g * d + i, h * d + j, gh * d + k) = prod[k];
        }
    }
  for (std::size_t i = 0; i < d; ++i) data.unit[i] = a.unit()[i];
  return Algebra<F>(std::move(data));
}

/// Subalgebra A^G of elements fixed by every group element.
template <ExactField F>
Algebra<F> fixed_ring(const Algebra<F>& a, const GroupAction<F>& action) {
  action.check(a);
  const F& f = a.field();
  const std::size_t d = a.dim();
  Matrix<F> stacked(f, d, 0);
  for (const auto& m : action.images) stacked = hstack(stacked, m - Matrix<F>::identity(f, d));
  const auto fixed = rref(left_kernel_basis(stacked));
  const std::size_t r = fixed.rank;
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < r; ++s) {
    const auto row = fixed.reduced.row_span(s);
    const auto nonzero = std::count_if(row.begin(), row.end(), [&](const auto& e) { return !f.is_zero(e); });
    labels.push_back(nonzero == 1 ? a.labels()[fixed.pivots[s]] : "f" + std::to_string(s + 1));
  }
  auto data = AlgebraData<F>::zeros(f, a.name() + "_fixed", labels);
  // Rows are in reduced echelon form, so coordinates are the pivot entries.
  auto coords = [&](const Vector<F>& v) {
    Vector<F> c(r, f.zero());
    for (std::size_t s = 0; s < r; ++s) c[s] = v[fixed.pivots[s]];
    return c;
  };
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      const auto c = coords(a.multiply(fixed.reduced.row_span(s), fixed.reduced.row_span(t)));
      for (std::size_t k = 0; k < r; ++k) data.at(s, t, k) = c[k];
    }
  data.unit = coords(a.unit());
  return Algebra<F>(std::move(data));
}

/// A ⋉ M on A ⊕ M: (a, m)(a', m') = (aa', a·m' + m·a').
template <ExactField F>
Algebra<F> trivial_extension(const Algebra<F>& a, const Bimodule<F>& m) {
  const F& f = a.field();
  const std::size_t d = a.dim(), k = m.dim;
  require(m.left.size() == d && m.right.size() == d, ErrorCode::InvalidAlgebra, "bimodule needs one matrix per basis element");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      require(m.left[i] * m.right[j] == m.right[j] * m.left[i], ErrorCode::InvalidAlgebra,
              "left and right actions of the bimodule do not commute");
  auto labels = a.labels();
  for (std::size_t s = 0; s < k; ++s) labels.push_back("m" + std::to_string(s + 1));
  auto data = AlgebraData<F>::zeros(f, a.name() + "_ext", labels);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) data.at(i, j, l) = a.constant(i, j, l);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = 0; t < k; ++t) {
        data.at(i, d + s, d + t) = m.left[i](s, t);
        data.at(d + s, i, d + t) = m.right[i](s, t);
      }
  for (std::size_t i = 0; i < d; ++i) data.unit[i] = a.unit()[i];
  return Algebra<F>(std::move(data));
}

/// A / I for a two-sided ideal I spanned by the rows of `ideal`. The basis of
/// the quotient is the set of basis elements outside the echelon pivots.
template <ExactField F>
Algebra<F> quotient_by_ideal(const Algebra<F>& a, const Matrix<F>& ideal) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  require(ideal.cols() == d || ideal.rows() == 0, ErrorCode::DimensionMismatch, "ideal vectors have wrong length");
  const auto red = rref(ideal.rows() == 0 ? Matrix<F>(f, 0, d) : ideal);
  const Matrix<F> basis = row_basis(red.reduced);
  for (std::size_t s = 0; s < basis.rows(); ++s)
    for (std::size_t i = 0; i < d; ++i) {
      require(subspace_contains(basis, a.multiply(basis.row_span(s), a.basis_vector(i))), ErrorCode::NotAnIdeal,
              "span is not closed under right multiplication by " + a.labels()[i]);
      require(subspace_contains(basis, a.multiply(a.basis_vector(i), basis.row_span(s))), ErrorCode::NotAnIdeal,
              "span is not closed under left multiplication by " + a.labels()[i]);
    }
  require(red.rank < d, ErrorCode::NonUnitalResult, "quotient by the whole algebra is zero");
  std::vector<bool> is_pivot(d, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::size_t> keep;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i)
    if (!is_pivot[i]) {
      keep.push_back(i);
      labels.push_back(a.labels()[i]);
    }
  auto project = [&](Vector<F> v) {
    for (std::size_t s = 0; s < red.rank; ++s) axpy<F>(f, f.neg(v[red.pivots[s]]), red.reduced.row_span(s), v);
    Vector<F> c;
    for (auto i : keep) c.push_back(v[i]);
    return c;
  };
  auto data = AlgebraData<F>::zeros(f, a.name() + "_quo", labels);
  for (std::size_t s = 0; s < keep.size(); ++s)
    for (std::size_t t = 0; t < keep.size(); ++t) {
      const auto c = project(a.multiply(a.basis_vector(keep[s]), a.basis_vector(keep[t])));
      for (std::size_t k = 0; k < keep.size(); ++k) data.at(s, t, k) = c[k];
    }
  data.unit = project(a.unit());
  return Algebra<F>(std::move(data));
}

/// M_n(A) = M_n(k) ⊗ A with basis E_ij ⊗ b_k at index (i·n + j)·dim(A) + k.
template <ExactField F>
Algebra<F> matrix_amplification(const Algebra<F>& a, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidAlgebra, "amplification of size 0");
  const std::size_t d = a.dim();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k) labels.push_back(detail::index_label("E", i, j, n) + "_" + a.labels()[k]);
  auto data = AlgebraData<F>::zeros(a.field(), "M" + std::to_string(n) + "_" + a.name(), labels);
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * d + k; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            for (std::size_t k = 0; k < d; ++k) data.at(idx(i, j, p), idx(j, l, q), idx(i, l, k)) = a.constant(p, q, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) data.unit[idx(i, i, k)] = a.unit()[k];
  return Algebra<F>(std::move(data));
}

}  // namespace kaschlab
