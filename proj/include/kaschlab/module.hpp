#pragma once

#include <string>
#include <vector>

#include "kaschlab/radical.hpp"

namespace kaschlab {

enum class Side { Right, Left };

inline Side other(Side s) { return s == Side::Right ? Side::Left : Side::Right; }
inline std::string to_string(Side s) { return s == Side::Right ? "right" : "left"; }

/// A finite-dimensional module over a fixed algebra, given by one action
/// matrix per basis element, acting on coordinate rows:
///   right module  m·b = m · act[b],   act[b_i b_j] = act[b_i] · act[b_j]
///   left module   b·m = m · act[b],   act[b_i b_j] = act[b_j] · act[b_i]
template <ExactField F>
class ModuleRep {
 public:
  struct Trusted {};

  ModuleRep(Trusted, AlgebraPtr<F> algebra, Side side, std::size_t dim, std::vector<Matrix<F>> actions, std::string label)
      : algebra_(std::move(algebra)), side_(side), dim_(dim), actions_(std::move(actions)), label_(std::move(label)) {}

  /// Checks the shape, unit and multiplicativity identities; throws InvalidModule.
  static ModuleRep make(AlgebraPtr<F> algebra, Side side, std::size_t dim, std::vector<Matrix<F>> actions,
                        std::string label = "M") {
    ModuleRep m(Trusted{}, std::move(algebra), side, dim, std::move(actions), std::move(label));
    m.check();
    return m;
  }

  const AlgebraPtr<F>& algebra_ptr() const { return algebra_; }
  const Algebra<F>& algebra() const { return *algebra_; }
  const F& field() const { return algebra_->field(); }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix<F>>& actions() const { return actions_; }
  const Matrix<F>& action(std::size_t i) const { return actions_[i]; }
  const std::string& label() const { return label_; }
  ModuleRep relabeled(std::string label) const {
    ModuleRep m(*this);
    m.label_ = std::move(label);
    return m;
  }

  /// Matrix of the action of an arbitrary algebra element.
  Matrix<F> action_of(std::span<const typename F::Element> x) const {
    Matrix<F> out(field(), dim_, dim_);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!field().is_zero(x[i])) out = out + actions_[i].scaled(x[i]);
    return out;
  }

  void check() const {
    const Algebra<F>& a = *algebra_;
    require(actions_.size() == a.dim(), ErrorCode::InvalidModule, label_ + ": need one action matrix per basis element");
    for (const auto& m : actions_)
      require(m.rows() == dim_ && m.cols() == dim_, ErrorCode::InvalidModule, label_ + ": action matrix has wrong shape");
    require(action_of(a.unit()) == Matrix<F>::identity(field(), dim_), ErrorCode::InvalidModule,
            label_ + ": the unit does not act as the identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        const auto lhs = action_of(a.multiply(a.basis_vector(i), a.basis_vector(j)));
        const auto rhs = side_ == Side::Right ? actions_[i] * actions_[j] : actions_[j] * actions_[i];
        require(lhs == rhs, ErrorCode::InvalidModule,
                label_ + ": action is not multiplicative on " + a.labels()[i] + "*" + a.labels()[j]);
      }
  }

 private:
  AlgebraPtr<F> algebra_;
  Side side_;
  std::size_t dim_;
  std::vector<Matrix<F>> actions_;
  std::string label_;
};

/// Module homomorphisms M → N as dim M × dim N matrices acting on rows:
/// m ↦ m·f, with act_M(b)·f = f·act_N(b) for every basis element b.
template <ExactField F>
struct HomSpace {
  std::vector<Matrix<F>> basis;
  std::size_t dim() const { return basis.size(); }
};

/// A submodule with its inclusion; inclusion rows are the reduced echelon
/// basis of the subspace inside the ambient module.
template <ExactField F>
struct Submodule {
  ModuleRep<F> module;
  Matrix<F> inclusion;
};

/// A quotient with its projection (dim M × dim Q).
template <ExactField F>
struct Quotient {
  ModuleRep<F> module;
  Matrix<F> projection;
};

namespace detail {

template <ExactField F>
void require_compatible(const ModuleRep<F>& m, const ModuleRep<F>& n) {
  require(m.side() == n.side(), ErrorCode::SideMismatch, "modules '" + m.label() + "' and '" + n.label() + "' live on different sides");
  require(m.algebra_ptr() == n.algebra_ptr(), ErrorCode::AlgebraMismatch,
          "modules '" + m.label() + "' and '" + n.label() + "' are over different algebras");
}

/// Coordinates of v in the span of reduced echelon rows with the given pivots.
template <ExactField F>
Vector<F> echelon_coords(const F& f, const Matrix<F>& rows, const std::vector<std::size_t>& pivots,
                         std::span<const typename F::Element> v) {
  Vector<F> c(pivots.size(), f.zero());
  Vector<F> rest(v.begin(), v.end());
  for (std::size_t s = 0; s < pivots.size(); ++s) {
    c[s] = rest[pivots[s]];
    if (!f.is_zero(c[s])) axpy<F>(f, f.neg(c[s]), rows.row_span(s), rest);
  }
  require(is_zero_vector<F>(f, rest), ErrorCode::NotASubmodule, "vector escapes the subspace");
  return c;
}

}  // namespace detail

template <ExactField F>
ModuleRep<F> regular_module(const AlgebraPtr<F>& a, Side side) {
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < a->dim(); ++i)
    acts.push_back(side == Side::Right ? a->right_mult_matrix(a->basis_vector(i)) : a->left_mult_matrix(a->basis_vector(i)));
  return ModuleRep<F>(typename ModuleRep<F>::Trusted{}, a, side, a->dim(), std::move(acts), side == Side::Right ? "A_A" : "_AA");
}

/// Smallest submodule containing the given rows; returned as reduced echelon rows.
template <ExactField F>
Matrix<F> spin(const ModuleRep<F>& m, const Matrix<F>& vectors) {
  const F& f = m.field();
  EchelonBasis<F> span(f, m.dim());
  std::vector<Vector<F>> queue;
  for (std::size_t s = 0; s < vectors.rows(); ++s)
    if (span.insert(vectors.row(s))) queue.push_back(vectors.row(s));
  const auto& gens = m.algebra().generators();
  for (std::size_t w = 0; w < queue.size(); ++w)
    for (auto g : gens) {
      auto v = apply<F>(queue[w], m.action(g));
      if (span.insert(v)) queue.push_back(std::move(v));
    }
  if (queue.empty()) return Matrix<F>(f, 0, m.dim());
  return row_basis(Matrix<F>::from_rows(f, m.dim(), queue));
}

template <ExactField F>
Matrix<F> spin(const ModuleRep<F>& m, std::span<const typename F::Element> v) {
  Matrix<F> one(m.field(), 0, m.dim());
  one.append_row(v);
  return spin(m, one);
}

/// Basis of Hom(M, N). M is presented by spinning a generating set: a
/// homomorphism is fixed by the images of the generators, and every linear
/// dependency met while spinning becomes one linear condition on them.
template <ExactField F>
HomSpace<F> hom_space(const ModuleRep<F>& m, const ModuleRep<F>& n) {
  detail::require_compatible(m, n);
  const F& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const auto& gens = m.algebra().generators();

  // Each spun vector w carries T_w (unknowns × dn) with image(w) = X · T_w.
  EchelonBasis<F> span(f, dm, true);
  std::vector<Vector<F>> words;
  std::vector<Matrix<F>> images;
  std::size_t unknowns = 0;
  std::vector<Matrix<F>> conditions;

  auto process = [&](std::size_t from) {
    for (std::size_t w = from; w < words.size(); ++w)
      for (auto g : gens) {
        auto v = apply<F>(words[w], m.action(g));
        Matrix<F> t = images[w] * n.action(g);
        if (auto c = span.express(v)) {
          for (std::size_t s = 0; s < c->size(); ++s)
            if (!f.is_zero((*c)[s])) t = t - images[s].scaled((*c)[s]);
          if (!t.is_zero()) conditions.push_back(std::move(t));
        } else {
          span.insert(v);
          words.push_back(std::move(v));
          images.push_back(std::move(t));
        }
      }
  };

  // Generators of M: standard basis vectors outside the submodule spun so far.
  std::vector<std::size_t> module_gens;
  {
    Matrix<F> spun(f, 0, dm);
    for (std::size_t k = 0; k < dm && spun.rows() < dm; ++k) {
      const auto e = unit_vector(f, dm, k);
      if (spun.rows() > 0 && subspace_contains(spun, e)) continue;
      module_gens.push_back(k);
      spun = spin(m, vstack(spun, Matrix<F>::from_rows(f, dm, {e})));
    }
  }
  unknowns = module_gens.size();
  std::size_t next = 0;
  for (auto k : module_gens) {
    auto e = unit_vector(f, dm, k);
    Matrix<F> t(f, unknowns * dn, dn);
    for (std::size_t c = 0; c < dn; ++c) t(next * dn + c, c) = f.one();
    ++next;
    const std::size_t from = words.size();
    span.insert(e);
    words.push_back(std::move(e));
    images.push_back(std::move(t));
    process(from);
  }

  // Solutions X (rows) with X · T = 0 for every condition T.
  Matrix<F> system(f, unknowns * dn, conditions.size() * dn);
  for (std::size_t c = 0; c < conditions.size(); ++c)
    for (std::size_t r = 0; r < unknowns * dn; ++r)
      for (std::size_t k = 0; k < dn; ++k) system(r, c * dn + k) = conditions[c](r, k);
  const Matrix<F> solutions = system.cols() == 0 ? Matrix<F>::identity(f, unknowns * dn) : left_kernel_basis(system);

  // f in the standard basis: W · f = Y with W the spun words.
  const auto w_inv = *inverse(Matrix<F>::from_rows(f, dm, words));
  HomSpace<F> out;
  for (std::size_t s = 0; s < solutions.rows(); ++s) {
    Matrix<F> y(f, dm, dn);
    for (std::size_t w = 0; w < dm; ++w) y.set_row(w, apply<F>(solutions.row_span(s), images[w]));
    out.basis.push_back(w_inv * y);
  }
  return out;
}

template <ExactField F>
std::size_t hom_dim(const ModuleRep<F>& m, const ModuleRep<F>& n) {
  return hom_space(m, n).dim();
}

/// True when f: M → N intertwines the actions.
template <ExactField F>
bool is_homomorphism(const ModuleRep<F>& m, const ModuleRep<F>& n, const Matrix<F>& f) {
  if (f.rows() != m.dim() || f.cols() != n.dim()) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (!(m.action(i) * f == f * n.action(i))) return false;
  return true;
}

template <ExactField F>
Submodule<F> submodule_from_vectors(const ModuleRep<F>& m, const Matrix<F>& vectors, std::string label = "") {
  const F& f = m.field();
  require(vectors.rows() == 0 || vectors.cols() == m.dim(), ErrorCode::DimensionMismatch, "vectors do not lie in the module");
  const auto red = rref(vectors.rows() == 0 ? Matrix<F>(f, 0, m.dim()) : vectors);
  Matrix<F> basis(f, red.rank, m.dim());
  for (std::size_t s = 0; s < red.rank; ++s) basis.set_row(s, red.reduced.row_span(s));
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix<F> act(f, red.rank, red.rank);
    for (std::size_t s = 0; s < red.rank; ++s) {
      const auto image = apply<F>(basis.row_span(s), m.action(i));
      act.set_row(s, detail::echelon_coords(f, basis, red.pivots, image));
    }
    acts.push_back(std::move(act));
  }
  return {ModuleRep<F>(typename ModuleRep<F>::Trusted{}, m.algebra_ptr(), m.side(), red.rank, std::move(acts),
                       label.empty() ? "sub(" + m.label() + ")" : label),
          std::move(basis)};
}

template <ExactField F>
Quotient<F> quotient_module(const ModuleRep<F>& m, const Matrix<F>& sub, std::string label = "") {
  const F& f = m.field();
  const std::size_t d = m.dim();
  const auto red = rref(sub.rows() == 0 ? Matrix<F>(f, 0, d) : sub);
  for (std::size_t s = 0; s < red.rank; ++s)
    for (std::size_t i = 0; i < m.algebra().dim(); ++i)
      require(subspace_contains(row_basis(red.reduced), apply<F>(red.reduced.row_span(s), m.action(i))),
              ErrorCode::NotASubmodule, "subspace of '" + m.label() + "' is not closed under the action");
  std::vector<bool> is_pivot(d, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < d; ++k)
    if (!is_pivot[k]) keep.push_back(k);
  auto project = [&](Vector<F> v) {
    for (std::size_t s = 0; s < red.rank; ++s) axpy<F>(f, f.neg(v[red.pivots[s]]), red.reduced.row_span(s), v);
    Vector<F> c;
    c.reserve(keep.size());
    for (auto k : keep) c.push_back(v[k]);
    return c;
  };
  Matrix<F> projection(f, d, keep.size());
  for (std::size_t k = 0; k < d; ++k) projection.set_row(k, project(unit_vector(f, d, k)));
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix<F> act(f, keep.size(), keep.size());
    for (std::size_t s = 0; s < keep.size(); ++s) act.set_row(s, project(m.action(i).row(keep[s])));
    acts.push_back(std::move(act));
  }
  return {ModuleRep<F>(typename ModuleRep<F>::Trusted{}, m.algebra_ptr(), m.side(), keep.size(), std::move(acts),
                       label.empty() ? m.label() + "/sub" : label),
          std::move(projection)};
}

template <ExactField F>
ModuleRep<F> direct_sum(const std::vector<ModuleRep<F>>& parts, std::string label = "") {
  require(!parts.empty(), ErrorCode::InvalidModule, "direct sum of no modules");
  for (const auto& p : parts) detail::require_compatible(parts.front(), p);
  const F& f = parts.front().field();
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  std::vector<Matrix<F>> acts;
  for (std::size_t i = 0; i < parts.front().algebra().dim(); ++i) {
    Matrix<F> act(f, total, total);
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t r = 0; r < p.dim(); ++r)
        for (std::size_t c = 0; c < p.dim(); ++c) act(off + r, off + c) = p.action(i)(r, c);
      off += p.dim();
    }
    acts.push_back(std::move(act));
  }
  if (label.empty())
    for (const auto& p : parts) label += (label.empty() ? "" : "+") + p.label();
  return ModuleRep<F>(typename ModuleRep<F>::Trusted{}, parts.front().algebra_ptr(), parts.front().side(), total,
                      std::move(acts), label);
}

/// n copies of M; the zero module when n = 0.
template <ExactField F>
ModuleRep<F> power(const ModuleRep<F>& m, std::size_t n) {
  if (n == 0) return ModuleRep<F>(typename ModuleRep<F>::Trusted{}, m.algebra_ptr(), m.side(), 0,
                                  std::vector<Matrix<F>>(m.algebra().dim(), Matrix<F>(m.field(), 0, 0)), "0");
  return direct_sum(std::vector<ModuleRep<F>>(n, m), m.label() + "^" + std::to_string(n));
}

/// D(M) = Hom_k(M, k) on the opposite side; action matrices are transposed.
template <ExactField F>
ModuleRep<F> dual_module(const ModuleRep<F>& m) {
  std::vector<Matrix<F>> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  const std::string& l = m.label();
  const std::string label = l.starts_with("D(") && l.ends_with(")") ? l.substr(2, l.size() - 3) : "D(" + l + ")";
  return ModuleRep<F>(typename ModuleRep<F>::Trusted{}, m.algebra_ptr(), other(m.side()), m.dim(), std::move(acts), label);
}

/// M·J (right) or J·M (left) as reduced echelon rows.
template <ExactField F>
Matrix<F> radical_submodule(const ModuleRep<F>& m, const RadicalData<F>& rad) {
  const F& f = m.field();
  EchelonBasis<F> span(f, m.dim());
  for (std::size_t s = 0; s < rad.generators.rows(); ++s) {
    const auto act = m.action_of(rad.generators.row_span(s));
    for (std::size_t r = 0; r < m.dim(); ++r) span.insert(act.row(r));
  }
  return span.size() == 0 ? Matrix<F>(f, 0, m.dim()) : row_basis(span.basis());
}

/// Annihilator of J in M as reduced echelon rows.
template <ExactField F>
Matrix<F> socle(const ModuleRep<F>& m, const RadicalData<F>& rad) {
  const F& f = m.field();
  if (m.dim() == 0) return Matrix<F>(f, 0, 0);
  Matrix<F> stacked(f, m.dim(), 0);
  for (std::size_t s = 0; s < rad.generators.rows(); ++s) stacked = hstack(stacked, m.action_of(rad.generators.row_span(s)));
  if (stacked.cols() == 0) return Matrix<F>::identity(f, m.dim());
  const auto k = left_kernel_basis(stacked);
  return k.rows() == 0 ? Matrix<F>(f, 0, m.dim()) : row_basis(k);
}

template <ExactField F>
Quotient<F> top_quotient(const ModuleRep<F>& m, const RadicalData<F>& rad) {
  return quotient_module(m, radical_submodule(m, rad), "top(" + m.label() + ")");
}

template <ExactField F>
Submodule<F> socle_submodule(const ModuleRep<F>& m, const RadicalData<F>& rad) {
  return submodule_from_vectors(m, socle(m, rad), "soc(" + m.label() + ")");
}

template <ExactField F>
bool is_semisimple(const ModuleRep<F>& m, const RadicalData<F>& rad) {
  return radical_submodule(m, rad).rows() == 0;
}

}  // namespace kaschlab
