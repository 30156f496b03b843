#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kaschlab/homological.hpp"

namespace kaschlab {

/// Evidence behind one decision. `dims` holds one Hom dimension (or flag)
/// per simple class; `failing_class` is the first class that broke it.
struct Witness {
  bool holds = false;
  std::string text;
  std::vector<std::size_t> dims;
  std::optional<std::size_t> failing_class;
  /// Optional explicit maps (e.g. embeddings S_i → A), as rows of strings.
  std::vector<std::vector<std::vector<std::string>>> matrices;
};

struct RouteResult {
  std::string route;
  Witness witness;
  bool holds() const { return witness.holds; }
};

struct DualKaschResult {
  bool holds = false;
  std::array<RouteResult, 4> routes;
};

struct NakayamaPermutation {
  /// 1-based: soc(e_i A) ≅ S_{map[i-1]}.
  std::vector<std::size_t> map;
  /// witness[i][j] = dim Hom(S_j, soc(e_i A)).
  std::vector<std::vector<std::size_t>> witness;
  bool is_identity() const {
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] != i + 1) return false;
    return true;
  }
};

struct SideReport {
  bool kasch = false;
  bool dual_kasch = false;
  std::array<RouteResult, 4> routes;
  bool strongly_dual_kasch = false;
  bool self_injective = false;
  bool v_ring = false;
  bool gv_ring = false;
  bool h_ring = false;
  bool hereditary = false;
  bool retractable_ER = false;
  bool coretractable_ER = false;
  bool projective_ER = false;
  /// Absent over QQ or when enumeration exceeds its budget.
  std::optional<bool> max_projective_ER;
  std::vector<bool> simple_projective;
  std::vector<bool> simple_injective;
  /// E(A) ≅ ⊕ E_i^{m_i}.
  std::vector<std::size_t> hull_multiplicities;
};

struct PropertyReport {
  std::string name;
  std::string field;
  std::size_t dim = 0;
  std::size_t classes = 0;
  bool commutative = false;
  std::vector<std::size_t> simple_dims;
  std::vector<std::size_t> endo_dims;
  std::vector<std::vector<std::size_t>> cartan;
  SideReport right;
  SideReport left;
  bool qf = false;
  bool weakly_symmetric = false;
  std::optional<NakayamaPermutation> nakayama;
  std::optional<bool> condition_c;
  std::map<std::string, Witness> certificates;
  bool routes_consistent = true;

  const SideReport& side(Side s) const { return s == Side::Right ? right : left; }

  /// Every boolean property under its stable key.
  std::map<std::string, bool> booleans() const {
    std::map<std::string, bool> out;
    for (Side s : {Side::Right, Side::Left}) {
      const auto& r = side(s);
      const std::string suf = s == Side::Right ? "_right" : "_left";
      out["kasch" + suf] = r.kasch;
      out["dual_kasch" + suf] = r.dual_kasch;
      out["strongly_dual_kasch" + suf] = r.strongly_dual_kasch;
      out["self_injective" + suf] = r.self_injective;
      out["v_ring" + suf] = r.v_ring;
      out["gv_ring" + suf] = r.gv_ring;
      out["h_ring" + suf] = r.h_ring;
      out["hereditary" + suf] = r.hereditary;
      out["retractable_ER" + suf] = r.retractable_ER;
      out["coretractable_ER" + suf] = r.coretractable_ER;
      out["projective_ER" + suf] = r.projective_ER;
      if (r.max_projective_ER) out["max_projective_ER" + suf] = *r.max_projective_ER;
      for (std::size_t k = 0; k < r.routes.size(); ++k) out["dk" + std::to_string(k + 1) + suf] = r.routes[k].holds();
    }
    out["qf"] = qf;
    out["weakly_symmetric"] = weakly_symmetric;
    out["commutative"] = commutative;
    if (condition_c) out["condition_c"] = *condition_c;
    return out;
  }
};

namespace detail {

inline std::string class_name(std::size_t i) { return std::to_string(i + 1); }

inline std::string simple_name(std::size_t i, Side side) {
  return "S" + class_name(i) + (side == Side::Left ? "'" : "");
}

inline std::string principal_name(std::size_t i, Side side) {
  return side == Side::Right ? "e" + class_name(i) + "·A" : "A·e" + class_name(i);
}

template <ExactField F>
std::vector<std::vector<std::string>> matrix_strings(const Matrix<F>& m) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.field().to_string(m(i, j));
  return out;
}

/// Per-class predicate sweep: holds iff every dims[i] > 0.
inline Witness all_positive(std::vector<std::size_t> dims, const std::function<std::string(std::size_t)>& text) {
  Witness w;
  w.dims = std::move(dims);
  w.holds = true;
  for (std::size_t i = 0; i < w.dims.size(); ++i)
    if (w.dims[i] == 0) {
      w.holds = false;
      w.failing_class = i;
      w.text = text(i);
      return w;
    }
  return w;
}

template <ExactField F>
Vector<F> flatten(const Matrix<F>& m) {
  Vector<F> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

}  // namespace detail

/// Every simple module of the side embeds in A.
template <ExactField F>
Witness kasch(const Structure<F>& st, Side side = Side::Right) {
  const auto reg = regular_module(st.algebra, side);
  std::vector<std::size_t> dims;
  for (const auto& s : st.simples(side)) dims.push_back(hom_dim(s, reg));
  auto w = detail::all_positive(std::move(dims), [&](std::size_t i) {
    return "Hom(" + detail::simple_name(i, side) + ", A) = 0";
  });
  if (w.holds) {
    for (const auto& s : st.simples(side)) w.matrices.push_back(detail::matrix_strings(hom_space(s, reg).basis.front()));
    w.text = "every simple embeds in A";
  }
  return w;
}

/// E(A) for the regular module of the side.
template <ExactField F>
HullEmbedding<F> regular_hull(const Structure<F>& st, Side side = Side::Right) {
  return injective_hull(regular_module(st.algebra, side), st);
}

/// Runs the four dual Kasch routes and throws RouteDisagreement unless they
/// all agree.
template <ExactField F>
DualKaschResult dual_kasch(const Structure<F>& st, Side side, const HullEmbedding<F>& hull) {
  const auto& e = hull.hull;
  const std::string e_name = side == Side::Right ? "E(A_A)" : "E(_AA)";
  DualKaschResult out;

  std::vector<std::size_t> dk1;
  for (const auto& s : st.simples(side)) dk1.push_back(hom_dim(e, s));
  out.routes[0] = {"DK1", detail::all_positive(std::move(dk1), [&](std::size_t i) {
                     return "Hom(" + e_name + ", " + detail::simple_name(i, side) + ") = 0";
                   })};

  // Restriction Hom(E(A), S) → Hom(A, S), h ↦ ι·h.
  Witness dk2;
  dk2.holds = true;
  for (std::size_t i = 0; i < st.classes(); ++i) {
    const auto& s = st.simple(side, i);
    const auto target = hom_dim(hull.module, s);
    EchelonBasis<F> image(st.alg().field(), hull.module.dim() * s.dim());
    for (const auto& h : hom_space(e, s).basis) image.insert(detail::flatten(hull.embedding * h));
    dk2.dims.push_back(image.size());
    if (image.size() != target && dk2.holds) {
      dk2.holds = false;
      dk2.failing_class = i;
      dk2.text = "restriction Hom(" + e_name + ", " + detail::simple_name(i, side) + ") → Hom(A, " +
                 detail::simple_name(i, side) + ") has rank " + std::to_string(image.size()) + " < " + std::to_string(target);
    }
  }
  out.routes[1] = {"DK2", std::move(dk2)};

  std::vector<std::size_t> dk3;
  for (std::size_t i = 0; i < st.classes(); ++i) {
    const auto h = injective_hull(projective_indecomposable(st, i, side), st);
    dk3.push_back(hom_dim(h.hull, st.simple(side, i)));
  }
  out.routes[2] = {"DK3", detail::all_positive(std::move(dk3), [&](std::size_t i) {
                     return "Hom(E(" + detail::principal_name(i, side) + "), " + detail::simple_name(i, side) + ") = 0";
                   })};

  auto dk4 = kasch(st, other(side));
  dk4.matrices.clear();
  if (!dk4.holds) dk4.text = "not " + std::string(side == Side::Right ? "left" : "right") + " Kasch: " + dk4.text;
  out.routes[3] = {"DK4", std::move(dk4)};

  out.holds = out.routes[0].holds();
  for (const auto& r : out.routes)
    if (r.holds() != out.holds) {
      std::string detail;
      for (const auto& q : out.routes) detail += " " + q.route + "=" + (q.holds() ? "true" : "false") + " [" + q.witness.text + "]";
      fail(ErrorCode::RouteDisagreement, "dual Kasch routes disagree on '" + st.alg().name() + "' (" + to_string(side) + "):" + detail);
    }
  return out;
}

template <ExactField F>
DualKaschResult dual_kasch(const Structure<F>& st, Side side = Side::Right) {
  return dual_kasch(st, side, regular_hull(st, side));
}

/// Every simple S_i is an image of its own hull E(S_i).
template <ExactField F>
Witness strongly_dual_kasch(const Structure<F>& st, Side side = Side::Right) {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < st.classes(); ++i) {
    const auto e = injective_indecomposable(st, i, side);
    const auto d = hom_dim(e, st.simple(side, i));
    const bool in_top = top_multiplicities(e, st)[i] > 0;
    require(in_top == (d > 0), ErrorCode::InvariantViolation,
            "strongly dual Kasch cross-check failed for class " + detail::class_name(i));
    dims.push_back(d);
  }
  return detail::all_positive(std::move(dims), [&](std::size_t i) {
    return "Hom(E(" + detail::simple_name(i, side) + "), " + detail::simple_name(i, side) + ") = 0";
  });
}

template <ExactField F>
bool self_injective(const Structure<F>& st, Side side = Side::Right) {
  return is_injective(regular_module(st.algebra, side), st);
}

/// Right and left self-injectivity coincide at finite dimension.
template <ExactField F>
bool qf(const Structure<F>& st) {
  const bool r = self_injective(st, Side::Right);
  require(r == self_injective(st, Side::Left), ErrorCode::InvariantViolation,
          "right and left self-injectivity differ on '" + st.alg().name() + "'");
  return r;
}

template <ExactField F>
NakayamaPermutation nakayama_permutation(const Structure<F>& st) {
  require(self_injective(st, Side::Right), ErrorCode::NotSelfInjective,
          "Nakayama permutation requested for '" + st.alg().name() + "', which is not self-injective");
  NakayamaPermutation pi;
  std::vector<bool> used(st.classes(), false);
  for (std::size_t i = 0; i < st.classes(); ++i) {
    const auto soc = socle_multiplicities(projective_indecomposable(st, i), st);
    std::optional<std::size_t> j;
    for (std::size_t k = 0; k < soc.size(); ++k)
      if (soc[k] > 0) {
        require(!j && soc[k] == 1, ErrorCode::InvariantViolation, "socle of e" + detail::class_name(i) + "A is not simple");
        j = k;
      }
    require(j.has_value() && !used[*j], ErrorCode::InvariantViolation, "Nakayama map is not a bijection");
    used[*j] = true;
    pi.map.push_back(*j + 1);
    pi.witness.push_back(soc);
  }
  return pi;
}

template <ExactField F>
bool weakly_symmetric(const Structure<F>& st) {
  return self_injective(st, Side::Right) && nakayama_permutation(st).is_identity();
}

template <ExactField F>
bool v_ring(const Structure<F>& st, Side side = Side::Right) {
  for (const auto& s : st.simples(side))
    if (!is_injective(s, st)) return false;
  return true;
}

template <ExactField F>
bool gv_ring(const Structure<F>& st, Side side = Side::Right) {
  for (const auto& s : st.simples(side))
    if (!is_injective(s, st) && !is_projective(s, st)) return false;
  return true;
}

template <ExactField F>
Witness h_ring(const Structure<F>& st, Side side = Side::Right) {
  std::vector<ModuleRep<F>> hulls;
  for (std::size_t i = 0; i < st.classes(); ++i) hulls.push_back(injective_indecomposable(st, i, side));
  Witness w;
  w.holds = true;
  for (std::size_t i = 0; i < st.classes(); ++i)
    for (std::size_t j = 0; j < st.classes(); ++j) {
      if (i == j) continue;
      const auto d = hom_dim(hulls[i], hulls[j]);
      w.dims.push_back(d);
      if (d > 0 && w.holds) {
        w.holds = false;
        w.failing_class = i;
        w.text = "Hom(E(" + detail::simple_name(i, side) + "), E(" + detail::simple_name(j, side) + ")) = " + std::to_string(d);
      }
    }
  return w;
}

/// Hom(M, K) ≠ 0 for every non-zero submodule K: each simple class in
/// soc(M) must be an image of M.
template <ExactField F>
bool retractable(const ModuleRep<F>& m, const Structure<F>& st) {
  const auto soc = socle_multiplicities(m, st);
  for (std::size_t i = 0; i < st.classes(); ++i)
    if (soc[i] > 0 && hom_dim(m, st.simple(m.side(), i)) == 0) return false;
  return true;
}

/// Hom(M/K, M) ≠ 0 for every proper submodule K: each simple class in
/// top(M) must occur in soc(M).
template <ExactField F>
bool coretractable(const ModuleRep<F>& m, const Structure<F>& st) {
  const auto top = top_multiplicities(m, st);
  const auto soc = socle_multiplicities(m, st);
  for (std::size_t i = 0; i < st.classes(); ++i)
    if (top[i] > 0 && soc[i] == 0) return false;
  return true;
}

/// 𝔪E ≠ E for every maximal ideal 𝔪 = ann(S_i), E = E(A).
template <ExactField F>
Witness commutative_condition_c(const Structure<F>& st) {
  const auto& a = st.alg();
  require(a.is_commutative(), ErrorCode::NotCommutative, "condition (c) needs a commutative algebra, got '" + a.name() + "'");
  const F& f = a.field();
  const auto e = regular_hull(st, Side::Right).hull;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < st.classes(); ++i) {
    const auto& s = st.simple(Side::Right, i);
    Matrix<F> acts(f, a.dim(), s.dim() * s.dim());
    for (std::size_t b = 0; b < a.dim(); ++b) acts.set_row(b, detail::flatten(s.action(b)));
    const auto m = left_kernel_basis(acts);
    Matrix<F> me(f, 0, e.dim());
    for (std::size_t r = 0; r < m.rows(); ++r) me = sum_rowspaces(me, e.action_of(m.row(r)));
    dims.push_back(e.dim() - me.rows());
  }
  return detail::all_positive(std::move(dims), [&](std::size_t i) {
    return "m" + detail::class_name(i) + "·E(A) = E(A)";
  });
}

namespace detail {

template <ExactField F>
SideReport side_report(const Structure<F>& st, Side side, std::map<std::string, Witness>& certs) {
  const std::string suf = side == Side::Right ? "_right" : "_left";
  SideReport r;
  auto k = kasch(st, side);
  r.kasch = k.holds;
  certs["kasch" + suf] = std::move(k);

  const auto hull = regular_hull(st, side);
  r.hull_multiplicities = hull.multiplicities;
  const auto dk = dual_kasch(st, side, hull);
  r.dual_kasch = dk.holds;
  r.routes = dk.routes;
  Witness dkw;
  dkw.holds = dk.holds;
  if (!dk.holds) {
    dkw = dk.routes[2].witness;
  }
  certs["dual_kasch" + suf] = std::move(dkw);

  auto sdk = strongly_dual_kasch(st, side);
  r.strongly_dual_kasch = sdk.holds;
  certs["strongly_dual_kasch" + suf] = std::move(sdk);

  r.self_injective = self_injective(st, side);
  for (const auto& s : st.simples(side)) {
    r.simple_projective.push_back(is_projective(s, st));
    r.simple_injective.push_back(is_injective(s, st));
  }
  r.v_ring = v_ring(st, side);
  r.gv_ring = gv_ring(st, side);
  auto h = h_ring(st, side);
  r.h_ring = h.holds;
  certs["h_ring" + suf] = std::move(h);
  r.hereditary = is_hereditary(st, side);
  r.retractable_ER = retractable(hull.hull, st);
  r.coretractable_ER = coretractable(hull.hull, st);
  r.projective_ER = is_projective(hull.hull, st);
  try {
    r.max_projective_ER = is_max_projective(hull.hull, st);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedField) throw;
  }
  return r;
}

}  // namespace detail

/// Failed report invariants (empty when consistent).
inline std::vector<std::string> report_violations(const PropertyReport& r) {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) v.push_back(what);
  };
  check(!r.qf || (r.right.self_injective && r.left.self_injective && r.right.kasch && r.left.kasch),
        "qf implies self-injective and Kasch on both sides");
  for (Side s : {Side::Right, Side::Left}) {
    const auto& x = r.side(s);
    const std::string side = std::string(" (") + to_string(s) + ")";
    check(!x.strongly_dual_kasch || x.dual_kasch, "strongly dual Kasch implies dual Kasch" + side);
    check(!x.v_ring || (x.gv_ring && x.dual_kasch && x.strongly_dual_kasch), "V-ring implies GV, dual Kasch, strongly dual Kasch" + side);
    check(!x.self_injective || x.dual_kasch, "self-injective implies dual Kasch" + side);
    for (const auto& route : x.routes) check(route.holds() == x.dual_kasch, route.route + " agrees with dual Kasch" + side);
  }
  check(!r.nakayama || r.qf, "Nakayama permutation only for self-injective algebras");
  return v;
}

/// Runs every decider on both sides. Throws RouteDisagreement or
/// InvariantViolation on an inconsistent result.
template <ExactField F>
PropertyReport analyze(const Structure<F>& st) {
  const auto& a = st.alg();
  PropertyReport r;
  r.name = a.name();
  r.field = a.field().spec().to_string();
  r.dim = a.dim();
  r.classes = st.classes();
  r.commutative = a.is_commutative();
  for (const auto& s : st.right_simples) r.simple_dims.push_back(s.dim());
  r.endo_dims = st.endo_dims;
  r.cartan = cartan_matrix(st);
  r.right = detail::side_report(st, Side::Right, r.certificates);
  r.left = detail::side_report(st, Side::Left, r.certificates);
  r.qf = qf(st);
  if (r.qf) {
    r.nakayama = nakayama_permutation(st);
    r.weakly_symmetric = r.nakayama->is_identity();
  }
  if (r.commutative) {
    auto c = commutative_condition_c(st);
    r.condition_c = c.holds;
    r.certificates["condition_c"] = std::move(c);
  }
  const auto bad = report_violations(r);
  if (!bad.empty()) {
    std::string msg;
    for (const auto& b : bad) msg += "; " + b;
    fail(ErrorCode::InvariantViolation, "report for '" + r.name + "' is inconsistent" + msg);
  }
  return r;
}

template <ExactField F>
PropertyReport analyze(AlgebraPtr<F> a) {
  return analyze(structure(std::move(a)));
}

struct TheoremCheck {
  std::string name;
  bool applicable = false;
  bool holds = true;
};

/// The implications between the deciders that must hold on every algebra.
inline std::vector<TheoremCheck> theorem_checks(const PropertyReport& r) {
  std::vector<TheoremCheck> out;
  auto add = [&](std::string name, bool applicable, bool holds) { out.push_back({std::move(name), applicable, !applicable || holds}); };
  for (Side s : {Side::Right, Side::Left}) {
    const auto& x = r.side(s);
    const std::string suf = s == Side::Right ? " (right)" : " (left)";
    const auto n = x.simple_projective.size();
    bool proj_simples_injective = true;
    for (std::size_t i = 0; i < n; ++i)
      if (x.simple_projective[i] && !x.simple_injective[i]) proj_simples_injective = false;
    add("dual Kasch: projective simples are injective" + suf, x.dual_kasch, proj_simples_injective);
    add("self-injective iff dual Kasch and E(A) projective" + suf, true,
        x.self_injective == (x.dual_kasch && x.projective_ER));
    add("self-injective iff dual Kasch and E(A) max-projective" + suf, x.max_projective_ER.has_value(),
        x.max_projective_ER && x.self_injective == (x.dual_kasch && *x.max_projective_ER));
    add("QF iff dual Kasch and E(A) projective" + suf, true, r.qf == (x.dual_kasch && x.projective_ER));
    add("self-injective: strongly dual Kasch iff Nakayama identity" + suf, x.self_injective,
        r.nakayama && x.strongly_dual_kasch == r.nakayama->is_identity());
    add("H-ring implies strongly dual Kasch" + suf, x.h_ring, x.strongly_dual_kasch);
    add("dual Kasch and (hereditary or GV) implies V-ring" + suf, x.dual_kasch && (x.hereditary || x.gv_ring), x.v_ring);
    add("E(A) retractable and Kasch implies dual Kasch" + suf, x.retractable_ER && x.kasch, x.dual_kasch);
    add("E(A) coretractable and dual Kasch implies Kasch" + suf, x.coretractable_ER && x.dual_kasch, x.kasch);
    add("commutative Kasch implies strongly dual Kasch" + suf, r.commutative && x.kasch, x.strongly_dual_kasch);
    add("commutative: Kasch iff dual Kasch" + suf, r.commutative, x.kasch == x.dual_kasch);
    add("commutative: dual Kasch iff condition (c)" + suf, r.commutative, r.condition_c && *r.condition_c == x.dual_kasch);
    add("dual Kasch on one side iff Kasch on the other" + suf, true, x.dual_kasch == r.side(other(s)).kasch);
  }
  return out;
}

inline std::vector<std::string> theorem_violations(const PropertyReport& r) {
  std::vector<std::string> out;
  for (const auto& c : theorem_checks(r))
    if (!c.holds) out.push_back(c.name);
  return out;
}

/// Boolean properties that must survive Morita equivalence.
inline std::map<std::string, bool> morita_booleans(const PropertyReport& r) {
  auto b = r.booleans();
  b.erase("commutative");
  b.erase("condition_c");
  b.erase("max_projective_ER_right");
  b.erase("max_projective_ER_left");
  return b;
}

}  // namespace kaschlab
