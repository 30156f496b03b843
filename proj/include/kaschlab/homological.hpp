#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kaschlab/wedderburn.hpp"

namespace kaschlab {

/// Outcome of the dimension-after-top test: M is projective iff
/// dim M = Σ m_i dim P_i where top(M) = ⊕ S_i^{m_i}.
struct ProjectivityTest {
  bool holds = false;
  std::vector<std::size_t> top_multiplicities;
  std::size_t module_dim = 0;
  std::size_t cover_dim = 0;
};

template <ExactField F>
struct ProjectiveCover {
  ModuleRep<F> cover;
  /// dim P × dim M, surjective.
  Matrix<F> surjection;
  std::vector<std::size_t> multiplicities;
};

template <ExactField F>
struct HullEmbedding {
  ModuleRep<F> module;
  ModuleRep<F> hull;
  /// dim M × dim E, injective.
  Matrix<F> embedding;
  std::vector<std::size_t> multiplicities;
};

/// e_i A (right) or A e_i (left) for the representative of class i.
template <ExactField F>
ModuleRep<F> projective_indecomposable(const Structure<F>& st, std::size_t i, Side side = Side::Right) {
  return principal_module(st.algebra, st.representative(i), side,
                          side == Side::Right ? "P" + std::to_string(i + 1) : "P" + std::to_string(i + 1) + "'")
      .module;
}

/// D(A e_i) (right) or D(e_i A) (left): the injective hull of S_i.
template <ExactField F>
ModuleRep<F> injective_indecomposable(const Structure<F>& st, std::size_t i, Side side = Side::Right) {
  return dual_module(projective_indecomposable(st, i, other(side)))
      .relabeled(side == Side::Right ? "E" + std::to_string(i + 1) : "E" + std::to_string(i + 1) + "'");
}

template <ExactField F>
ProjectivityTest projectivity_test(const ModuleRep<F>& m, const Structure<F>& st) {
  ProjectivityTest t;
  t.module_dim = m.dim();
  t.top_multiplicities = top_multiplicities(m, st);
  for (std::size_t c = 0; c < st.classes(); ++c)
    if (t.top_multiplicities[c] > 0)
      t.cover_dim += t.top_multiplicities[c] * projective_indecomposable(st, c, m.side()).dim();
  t.holds = t.cover_dim == t.module_dim;
  return t;
}

template <ExactField F>
bool is_projective(const ModuleRep<F>& m, const Structure<F>& st) {
  return projectivity_test(m, st).holds;
}

/// M is injective iff D(M) is projective.
template <ExactField F>
ProjectivityTest injectivity_test(const ModuleRep<F>& m, const Structure<F>& st) {
  return projectivity_test(dual_module(m), st);
}

template <ExactField F>
bool is_injective(const ModuleRep<F>& m, const Structure<F>& st) {
  return injectivity_test(m, st).holds;
}

/// P(M) = ⊕ P_i^{m_i} → M, built from elements v ∈ M·e_i chosen greedily until
/// they generate M modulo its radical; e_i a ↦ v·a.
template <ExactField F>
ProjectiveCover<F> projective_cover(const ModuleRep<F>& m, const Structure<F>& st) {
  const F& f = m.field();
  ProjectiveCover<F> out{power(m, 0), Matrix<F>(f, 0, m.dim()), std::vector<std::size_t>(st.classes(), 0)};
  const Matrix<F> rad = radical_submodule(m, st.rad);
  Matrix<F> reached = rad;
  std::vector<ModuleRep<F>> parts;
  std::vector<Matrix<F>> blocks;
  for (std::size_t c = 0; c < st.classes() && reached.rows() < m.dim(); ++c) {
    const auto& e = st.representative(c);
    const auto p = principal_module(st.algebra, e, m.side());
    const Matrix<F> me = m.action_of(e);
    for (std::size_t r = 0; r < m.dim() && reached.rows() < m.dim(); ++r) {
      const auto v = me.row(r);
      if (is_zero_vector<F>(f, v)) continue;
      const auto grown = sum_rowspaces(reached, spin(m, v));
      if (grown.rows() == reached.rows()) continue;
      reached = grown;
      // Rows of the inclusion are elements of e A (or A e) in A-coordinates.
      Matrix<F> block(f, p.module.dim(), m.dim());
      for (std::size_t s = 0; s < p.module.dim(); ++s) block.set_row(s, apply<F>(v, m.action_of(p.inclusion.row_span(s))));
      parts.push_back(p.module.relabeled("P" + std::to_string(c + 1) + (m.side() == Side::Left ? "'" : "")));
      blocks.push_back(std::move(block));
      ++out.multiplicities[c];
    }
  }
  require(reached.rows() == m.dim(), ErrorCode::InvariantViolation, "chosen elements do not generate '" + m.label() + "'");
  if (parts.empty()) return out;
  out.cover = direct_sum(parts, "P(" + m.label() + ")");
  for (const auto& b : blocks) out.surjection = vstack(out.surjection, b);
  require(is_homomorphism(out.cover, m, out.surjection) && rank(out.surjection) == m.dim(), ErrorCode::InvariantViolation,
          "projective cover map is not a surjective homomorphism");
  return out;
}

/// E(M) = D(P(D(M))) with M ↪ E(M) the transpose of P(D(M)) ↠ D(M).
template <ExactField F>
HullEmbedding<F> injective_hull(const ModuleRep<F>& m, const Structure<F>& st) {
  const F& f = m.field();
  if (m.dim() == 0) return {m, m, Matrix<F>(f, 0, 0), std::vector<std::size_t>(st.classes(), 0)};
  const auto cover = projective_cover(dual_module(m), st);
  HullEmbedding<F> h{m, dual_module(cover.cover).relabeled("E(" + m.label() + ")"), cover.surjection.transpose(),
                     cover.multiplicities};
  require(rank(h.embedding) == m.dim() && is_homomorphism(m, h.hull, h.embedding), ErrorCode::ExtensionSystemInconsistent,
          "hull map of '" + m.label() + "' is not an injective homomorphism");
  // Essential: the socle of M maps onto the socle of E(M).
  const auto soc_m = socle(m, st.rad);
  const auto soc_e = socle(h.hull, st.rad);
  require(soc_m.rows() == soc_e.rows() && (soc_m.rows() == 0 || rank(soc_m * h.embedding) == soc_e.rows()),
          ErrorCode::InvariantViolation, "hull of '" + m.label() + "' is not essential");
  return h;
}

/// Every map M → S through a maximal right ideal lifts along A → S. Finite
/// fields only: the canonical maps A → S are enumerated up to scalars.
template <ExactField F>
bool is_max_projective(const ModuleRep<F>& m, const Structure<F>& st) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    fail(ErrorCode::UnsupportedField, "max-projectivity is decided by enumeration and needs a finite field");
  } else {
    const F& f = m.field();
    const auto p = f.characteristic();
    const auto reg = regular_module(st.algebra, m.side());
    const auto to_a = hom_space(m, reg);
    for (std::size_t c = 0; c < st.classes(); ++c) {
      const auto& s = st.simple(m.side(), c);
      const double budget = std::pow(static_cast<double>(p), static_cast<double>(s.dim())) - 1.0;
      require(budget <= 1e6, ErrorCode::UnsupportedField,
              "max-projectivity enumeration over " + f.spec().to_string() + " with dim S = " + std::to_string(s.dim()) +
                  " exceeds the 10^6 budget");
      const std::size_t target = hom_dim(m, s);
      if (target == 0) continue;
      // φ(a) = s0·a (right) or a·s0 (left) for s0 ≠ 0 with leading coordinate 1.
      std::vector<std::uint32_t> s0(s.dim(), 0);
      const std::uint64_t total = static_cast<std::uint64_t>(budget) + 1;
      for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t x = code;
        for (std::size_t k = 0; k < s.dim(); ++k, x /= p) s0[k] = static_cast<std::uint32_t>(x % p);
        std::size_t lead = 0;
        while (s0[lead] == 0) ++lead;
        if (s0[lead] != 1) continue;
        Matrix<F> phi(f, reg.dim(), s.dim());
        for (std::size_t i = 0; i < reg.dim(); ++i) phi.set_row(i, apply<F>(s0, s.action(i)));
        EchelonBasis<F> image(f, m.dim() * s.dim());
        for (const auto& g : to_a.basis) {
          const auto comp = g * phi;
          Vector<F> flat(comp.rows() * comp.cols());
          for (std::size_t r = 0; r < comp.rows(); ++r)
            for (std::size_t k = 0; k < comp.cols(); ++k) flat[r * comp.cols() + k] = comp(r, k);
          image.insert(std::move(flat));
        }
        if (image.size() < target) return false;
      }
    }
    return true;
  }
}

/// c_ij = multiplicity of S_j in a composition series of e_i A, read off
/// the radical layers.
template <ExactField F>
std::vector<std::vector<std::size_t>> cartan_matrix(const Structure<F>& st) {
  std::vector<std::vector<std::size_t>> c;
  for (std::size_t i = 0; i < st.classes(); ++i) {
    std::vector<std::size_t> row(st.classes(), 0);
    auto layer = projective_indecomposable(st, i);
    while (layer.dim() > 0) {
      const auto mult = top_multiplicities(layer, st);
      for (std::size_t j = 0; j < st.classes(); ++j) row[j] += mult[j];
      layer = submodule_from_vectors(layer, radical_submodule(layer, st.rad)).module;
    }
    c.push_back(std::move(row));
  }
  return c;
}

/// J as a one-sided ideal (a submodule of the regular module).
template <ExactField F>
ModuleRep<F> radical_ideal(const Structure<F>& st, Side side = Side::Right) {
  return submodule_from_vectors(regular_module(st.algebra, side), st.rad.basis, side == Side::Right ? "J_A" : "_AJ").module;
}

/// Hereditary iff J is projective.
template <ExactField F>
bool is_hereditary(const Structure<F>& st, Side side = Side::Right) {
  return is_projective(radical_ideal(st, side), st);
}

/// Composition length of the socle.
template <ExactField F>
std::size_t goldie_dimension(const ModuleRep<F>& m, const Structure<F>& st) {
  std::size_t n = 0;
  for (auto k : socle_multiplicities(m, st)) n += k;
  return n;
}

}  // namespace kaschlab
