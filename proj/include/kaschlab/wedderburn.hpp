#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kaschlab/module.hpp"
#include "kaschlab/polynomial.hpp"

namespace kaschlab {

/// Structure of A: radical, a complete set of primitive orthogonal
/// idempotents grouped into isomorphism classes, and the simple modules on
/// both sides. Class i owns the right simple top(e_i A) and the left simple
/// top(A e_i) for its representative e_i.
template <ExactField F>
struct Structure {
  AlgebraPtr<F> algebra;
  RadicalData<F> rad;
  std::vector<Vector<F>> idempotents;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> multiplicities;
  std::vector<ModuleRep<F>> right_simples;
  std::vector<ModuleRep<F>> left_simples;
  /// dim End(S_i).
  std::vector<std::size_t> endo_dims;

  const Algebra<F>& alg() const { return *algebra; }
  std::size_t classes() const { return representatives.size(); }
  const ModuleRep<F>& simple(Side side, std::size_t i) const {
    return side == Side::Right ? right_simples[i] : left_simples[i];
  }
  const std::vector<ModuleRep<F>>& simples(Side side) const { return side == Side::Right ? right_simples : left_simples; }
  const Vector<F>& representative(std::size_t i) const { return idempotents[representatives[i]]; }
};

namespace detail {

/// p(z) inside an algebra where e acts as the unit of the corner containing z.
template <ExactField F>
Vector<F> eval_at(const Algebra<F>& a, const Poly<F>& p, const Vector<F>& z, const Vector<F>& e) {
  const F& f = a.field();
  Vector<F> acc = a.zero();
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = a.multiply(acc, z);
    axpy<F>(f, *it, e, acc);
  }
  return acc;
}

/// Minimal polynomial of z in the corner with unit e.
template <ExactField F>
Poly<F> minimal_polynomial(const Algebra<F>& a, const Vector<F>& z, const Vector<F>& e) {
  const F& f = a.field();
  EchelonBasis<F> powers(f, a.dim(), true);
  Vector<F> p = e;
  for (std::size_t k = 0;; ++k) {
    if (auto c = powers.express(p)) {
      std::vector<typename F::Element> coeffs(k + 1, f.zero());
      for (std::size_t i = 0; i < c->size(); ++i) coeffs[i] = f.neg((*c)[i]);
      coeffs[k] = f.one();
      return Poly<F>(f, std::move(coeffs));
    }
    powers.insert(p);
    p = a.multiply(p, z);
  }
}

/// Splits μ = u·v with gcd(u, v) = 1 and both non-constant, if possible.
template <ExactField F>
std::optional<std::pair<Poly<F>, Poly<F>>> coprime_split(const Poly<F>& mu) {
  const F& f = mu.field;
  auto separate = [&](const Poly<F>& g) -> std::optional<std::pair<Poly<F>, Poly<F>>> {
    // u = part of μ supported on the prime factors of g.
    if (g.degree() <= 0) return std::nullopt;
    Poly<F> u = gcd(mu, g);
    for (long i = 0; i < mu.degree(); ++i) u = gcd(mu, u * g);
    Poly<F> v = divmod(mu, u).first;
    if (u.degree() <= 0 || v.degree() <= 0) return std::nullopt;
    return std::pair{u, v.monic()};
  };
  for (const auto& root : factor_linear_roots(mu))
    if (auto s = separate(Poly<F>(f, {f.neg(root), f.one()}))) return s;
  if constexpr (std::is_same_v<F, PrimeField>) {
    // Distinct-degree pieces: gcd(μ, x^(p^k) − x) collects factors of degree dividing k.
    const auto x = Poly<F>::x(f);
    auto y = x;
    const auto m = mu.monic();
    for (long k = 1; 2 * k <= mu.degree(); ++k) {
      y = powmod(y, f.characteristic(), m);
      if (auto s = separate(gcd(m, y - x))) return s;
    }
  }
  return std::nullopt;
}

template <ExactField F>
std::uint64_t structure_seed(const Algebra<F>& a) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        for (char ch : a.field().to_string(a.constant(i, j, k)) + ",") {
          h ^= static_cast<unsigned char>(ch);
          h *= 1099511628211ULL;
        }
  return h;
}

/// Deterministic candidate elements of the corner spanned by `basis`: the
/// basis, pairwise sums, then 64 pseudo-random combinations.
template <ExactField F>
std::vector<Vector<F>> corner_candidates(const Algebra<F>& a, const Matrix<F>& basis, std::uint64_t seed) {
  const F& f = a.field();
  std::vector<Vector<F>> out;
  for (std::size_t s = 0; s < basis.rows(); ++s) out.push_back(basis.row(s));
  for (std::size_t s = 0; s < basis.rows(); ++s)
    for (std::size_t t = s + 1; t < basis.rows(); ++t) {
      auto v = basis.row(s);
      axpy<F>(f, f.one(), basis.row_span(t), v);
      out.push_back(std::move(v));
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coeff(-3, 3);
  for (int r = 0; r < 64; ++r) {
    Vector<F> v = a.zero();
    for (std::size_t s = 0; s < basis.rows(); ++s) {
      std::int64_t c = coeff(rng);
      if constexpr (std::is_same_v<F, PrimeField>) c = static_cast<std::int64_t>(rng() % f.characteristic());
      axpy<F>(f, f.from_int(c), basis.row_span(s), v);
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <ExactField F>
Matrix<F> corner_basis(const Algebra<F>& a, const Vector<F>& e) {
  EchelonBasis<F> span(a.field(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) span.insert(a.multiply(a.multiply(e, a.basis_vector(i)), e));
  return span.size() == 0 ? Matrix<F>(a.field(), 0, a.dim()) : row_basis(span.basis());
}

/// True when the corner eBe (a commutative algebra over GF(p)) is a field:
/// some element has an irreducible minimal polynomial of degree dim eBe.
template <ExactField F>
bool corner_is_field(const Algebra<F>& a, const Matrix<F>& basis, const Vector<F>& e,
                     const std::vector<Vector<F>>& candidates) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    return false;
  } else {
    for (std::size_t s = 0; s < basis.rows(); ++s)
      for (std::size_t t = 0; t < basis.rows(); ++t)
        if (a.multiply(basis.row_span(s), basis.row_span(t)) != a.multiply(basis.row_span(t), basis.row_span(s))) return false;
    for (const auto& z : candidates) {
      const auto mu = minimal_polynomial(a, z, e);
      if (static_cast<std::size_t>(mu.degree()) == basis.rows() && is_irreducible(mu)) return true;
    }
    return false;
  }
}

/// Complete set of primitive orthogonal idempotents of a semisimple algebra.
template <ExactField F>
std::vector<Vector<F>> split_semisimple(const Algebra<F>& b, std::uint64_t seed) {
  std::vector<Vector<F>> done, work{b.unit()};
  while (!work.empty()) {
    const auto e = work.back();
    work.pop_back();
    const auto corner = corner_basis(b, e);
    if (corner.rows() == 1) {
      done.push_back(e);
      continue;
    }
    const auto candidates = corner_candidates(b, corner, seed ^ (done.size() * 0x9e3779b97f4a7c15ULL));
    bool split = false;
    for (const auto& z : candidates) {
      const auto mu = minimal_polynomial(b, z, e);
      if (mu.degree() < 2) continue;
      auto parts = coprime_split(mu);
      if (!parts) continue;
      auto [u, v] = *parts;
      auto [g, s, t] = ext_gcd(u, v);
      // t·v ≡ 1 mod u and ≡ 0 mod v.
      const auto idem = eval_at(b, t * v, z, e);
      Vector<F> rest = e;
      axpy<F>(b.field(), b.field().neg(b.field().one()), idem, rest);
      require(b.multiply(idem, idem) == idem && !is_zero_vector<F>(b.field(), idem) && !is_zero_vector<F>(b.field(), rest),
              ErrorCode::SplittingFailed, "splitting produced a degenerate idempotent");
      work.push_back(rest);
      work.push_back(idem);
      split = true;
      break;
    }
    if (split) continue;
    require(corner_is_field(b, corner, e, candidates), ErrorCode::SplittingFailed,
            "could not split an idempotent of '" + b.name() + "' over " + b.field().spec().to_string() +
                " (a simple component is probably not split over this field; try GF(p))");
    done.push_back(e);
  }
  return done;
}

/// Lifts a complete orthogonal set of idempotents of A/J to A.
template <ExactField F>
std::vector<Vector<F>> lift_idempotents(const Algebra<F>& a, const RadicalData<F>& rad, const std::vector<Vector<F>>& bar) {
  const F& f = a.field();
  std::vector<Vector<F>> lifted;
  Vector<F> remaining = a.unit();
  for (std::size_t k = 0; k + 1 < bar.size(); ++k) {
    auto x = rad.section(bar[k], a.dim());
    auto y = a.multiply(a.multiply(remaining, x), remaining);
    std::size_t steps = 0;
    while (true) {
      const auto y2 = a.multiply(y, y);
      if (y2 == y) break;
      require(++steps <= rad.nilpotency_index + 2, ErrorCode::SplittingFailed, "idempotent lifting did not converge");
      // y ← 3y² − 2y³
      const auto y3 = a.multiply(y2, y);
      Vector<F> next(a.dim(), f.zero());
      axpy<F>(f, f.from_int(3), y2, next);
      axpy<F>(f, f.from_int(-2), y3, next);
      y = std::move(next);
    }
    lifted.push_back(y);
    axpy<F>(f, f.neg(f.one()), y, remaining);
  }
  lifted.push_back(remaining);
  return lifted;
}

}  // namespace detail

/// e·A as a right module (side Right) or A·e as a left module.
template <ExactField F>
Submodule<F> principal_module(const AlgebraPtr<F>& a, const Vector<F>& e, Side side, std::string label = "") {
  const auto rows = side == Side::Right ? a->left_mult_matrix(e) : a->right_mult_matrix(e);
  return submodule_from_vectors(regular_module(a, side), rows, std::move(label));
}

template <ExactField F>
Structure<F> structure(AlgebraPtr<F> a) {
  const F& f = a->field();
  Structure<F> st{a, radical(*a), {}, {}, {}, {}, {}, {}, {}};
  const auto quotient = semisimple_quotient(*a, st.rad);
  auto bar = detail::split_semisimple(quotient, detail::structure_seed(*a));
  // Canonical order: by the first basis position where the idempotent is non-zero.
  auto leading = [&](const Vector<F>& v) {
    std::size_t i = 0;
    while (i < v.size() && f.is_zero(v[i])) ++i;
    return i;
  };
  std::stable_sort(bar.begin(), bar.end(), [&](const Vector<F>& x, const Vector<F>& y) { return leading(x) < leading(y); });
  st.idempotents = detail::lift_idempotents(*a, st.rad, bar);

  // Idempotent invariants.
  Vector<F> sum = a->zero();
  for (std::size_t i = 0; i < st.idempotents.size(); ++i) {
    const auto& e = st.idempotents[i];
    require(a->multiply(e, e) == e, ErrorCode::InvariantViolation, "lifted element is not idempotent");
    for (std::size_t j = 0; j < st.idempotents.size(); ++j)
      if (i != j)
        require(is_zero_vector<F>(f, a->multiply(e, st.idempotents[j])), ErrorCode::InvariantViolation,
                "lifted idempotents are not orthogonal");
    axpy<F>(f, f.one(), e, sum);
  }
  require(sum == a->unit(), ErrorCode::InvariantViolation, "idempotents do not sum to 1");

  // Tops of the e_i A and their isomorphism classes.
  std::vector<ModuleRep<F>> tops;
  for (std::size_t i = 0; i < st.idempotents.size(); ++i) {
    const auto p = principal_module(a, st.idempotents[i], Side::Right);
    tops.push_back(top_quotient(p.module, st.rad).module);
  }
  st.class_of.assign(st.idempotents.size(), 0);
  for (std::size_t i = 0; i < st.idempotents.size(); ++i) {
    bool found = false;
    for (std::size_t c = 0; c < st.representatives.size() && !found; ++c)
      if (hom_dim(tops[st.representatives[c]], tops[i]) > 0) {
        st.class_of[i] = c;
        ++st.multiplicities[c];
        found = true;
      }
    if (!found) {
      st.class_of[i] = st.representatives.size();
      st.representatives.push_back(i);
      st.multiplicities.push_back(1);
    }
  }

  std::size_t total = 0;
  for (std::size_t c = 0; c < st.classes(); ++c) {
    const auto& e = st.idempotents[st.representatives[c]];
    const std::string name = "S" + std::to_string(c + 1);
    auto right = tops[st.representatives[c]].relabeled(name);
    auto left = top_quotient(principal_module(a, e, Side::Left).module, st.rad).module.relabeled(name + "'");
    const std::size_t endo = hom_dim(right, right);
    require(endo == hom_dim(left, left), ErrorCode::InvariantViolation, "left and right simples disagree on End");
    for (std::size_t k = 0; k < right.dim(); ++k)
      require(spin(right, unit_vector(f, right.dim(), k)).rows() == right.dim(), ErrorCode::InvariantViolation,
              name + " is not simple");
    total += st.multiplicities[c] * right.dim();
    st.right_simples.push_back(std::move(right));
    st.left_simples.push_back(std::move(left));
    st.endo_dims.push_back(endo);
  }
  for (std::size_t c = 0; c < st.classes(); ++c)
    for (std::size_t d = 0; d < st.classes(); ++d)
      if (c != d)
        require(hom_dim(st.right_simples[c], st.right_simples[d]) == 0, ErrorCode::InvariantViolation,
                "simples of different classes are isomorphic");
  require(total == a->dim() - st.rad.dim(), ErrorCode::InvariantViolation, "simple modules do not exhaust A/J");
  return st;
}

/// Multiplicity of each simple class in a semisimple module X.
template <ExactField F>
std::vector<std::size_t> decompose_semisimple(const ModuleRep<F>& x, const Structure<F>& st) {
  require(x.algebra_ptr() == st.algebra, ErrorCode::AlgebraMismatch, "module over a different algebra");
  std::vector<std::size_t> mult(st.classes(), 0);
  if (x.dim() == 0) return mult;
  require(is_semisimple(x, st.rad), ErrorCode::NotSemisimple, "module '" + x.label() + "' is not semisimple");
  std::size_t total = 0;
  for (std::size_t c = 0; c < st.classes(); ++c) {
    const auto& s = st.simple(x.side(), c);
    mult[c] = hom_dim(s, x) / st.endo_dims[c];
    total += mult[c] * s.dim();
  }
  require(total == x.dim(), ErrorCode::IncompleteDecomposition,
          "decomposition of '" + x.label() + "' does not account for every dimension");
  return mult;
}

template <ExactField F>
std::vector<std::size_t> socle_multiplicities(const ModuleRep<F>& m, const Structure<F>& st) {
  return decompose_semisimple(socle_submodule(m, st.rad).module, st);
}

template <ExactField F>
std::vector<std::size_t> top_multiplicities(const ModuleRep<F>& m, const Structure<F>& st) {
  return decompose_semisimple(top_quotient(m, st.rad).module, st);
}

}  // namespace kaschlab
