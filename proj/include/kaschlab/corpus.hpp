#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "kaschlab/constructors.hpp"
#include "kaschlab/dsl.hpp"
#include "kaschlab/properties.hpp"

namespace kaschlab {

struct CorpusOptions {
  std::size_t count = 200;
  std::size_t dim_max = 12;
  FieldSpec field = FieldSpec::prime(101);
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
  /// Morita check (analysis of M2(A)) for items up to this dimension.
  std::size_t morita_dim_max = 6;
};

struct CorpusItem {
  std::size_t index = 0;
  std::string name;
  std::size_t dim = 0;
  std::string serialized;
  std::optional<PropertyReport> report;
  std::vector<std::string> violations;
  bool route_disagreement = false;
  bool morita_checked = false;
};

struct CorpusSummary {
  CorpusOptions options;
  std::vector<CorpusItem> items;

  std::size_t violation_count() const {
    std::size_t n = 0;
    for (const auto& i : items) n += i.violations.size();
    return n;
  }
  std::size_t route_disagreements() const {
    std::size_t n = 0;
    for (const auto& i : items) n += i.route_disagreement ? 1 : 0;
    return n;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Composable arrow sequences of exactly the given length.
inline std::vector<std::vector<std::size_t>> paths_of_length(const QuiverPresentation& q, std::size_t len) {
  std::map<std::string, std::size_t> vidx;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) vidx[q.vertices[v]] = v;
  std::vector<std::vector<std::size_t>> layer;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) layer.push_back({a});
  for (std::size_t l = 1; l < len; ++l) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : layer)
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[p.back()].target == q.arrows[a].source) {
          auto x = p;
          x.push_back(a);
          next.push_back(std::move(x));
        }
    layer = std::move(next);
  }
  return len == 0 ? std::vector<std::vector<std::size_t>>{} : layer;
}

inline PathTerm path_term(const QuiverPresentation& q, const std::vector<std::size_t>& p, long coeff) {
  PathTerm t{mpq_class(coeff), {}, {}};
  for (auto a : p) t.path.push_back(q.arrows[a].label);
  return t;
}

inline std::string path_text(const PathTerm& t) {
  std::string s;
  for (std::size_t k = 0; k < t.path.size(); ++k) s += (k ? "*" : "") + t.path[k];
  return s;
}

/// One random presentation: either a local commutative algebra on loops or
/// a small quiver with monomial and binomial relations.
inline QuiverPresentation random_presentation(std::mt19937_64& rng) {
  QuiverPresentation q;
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  if (rng() % 4 == 0) {
    q.vertices = {"v"};
    const auto loops = pick(1, 2);
    for (std::size_t a = 0; a < loops; ++a) q.arrows.push_back({std::string(1, static_cast<char>('a' + a)), "v", "v"});
    q.nilpotency = pick(2, loops == 1 ? 6 : 4);
    if (loops == 2) {
      q.relations.push_back({{path_term(q, {0, 1}, 1), path_term(q, {1, 0}, -1)}, {}});
      if (rng() % 2) q.relations.push_back({{path_term(q, {rng() % 2, rng() % 2}, 1)}, {}});
    }
    return q;
  }
  const auto nv = pick(1, 3);
  for (std::size_t v = 0; v < nv; ++v) q.vertices.push_back(std::to_string(v + 1));
  const auto na = pick(nv == 1 ? 1 : nv - 1, nv + 2);
  for (std::size_t a = 0; a < na; ++a)
    q.arrows.push_back({std::string(1, static_cast<char>('a' + a)), q.vertices[rng() % nv], q.vertices[rng() % nv]});
  q.nilpotency = pick(2, 4);
  const auto nrel = pick(0, 3);
  for (std::size_t r = 0; r < nrel; ++r) {
    const auto len = pick(1, q.nilpotency - 1) + (q.nilpotency > 2 ? 1 : 0);
    if (len >= q.nilpotency) continue;
    const auto paths = paths_of_length(q, len);
    if (paths.empty()) continue;
    const auto& p = paths[rng() % paths.size()];
    std::vector<std::vector<std::size_t>> parallel;
    for (const auto& x : paths)
      if (x != p && q.arrows[x.front()].source == q.arrows[p.front()].source &&
          q.arrows[x.back()].target == q.arrows[p.back()].target)
        parallel.push_back(x);
    if (!parallel.empty() && rng() % 2) {
      const auto c = static_cast<long>(1 + rng() % 100);
      q.relations.push_back({{path_term(q, p, 1), path_term(q, parallel[rng() % parallel.size()], -c)}, {}});
    } else {
      q.relations.push_back({{path_term(q, p, 1)}, {}});
    }
  }
  return q;
}

}  // namespace detail

/// Quiver document text for a presentation.
inline std::string quiver_text(const std::string& name, const FieldSpec& field, const QuiverPresentation& q) {
  std::string s = "quiver " + name + " over " + field.to_string() + " {\n  vertices ";
  for (std::size_t v = 0; v < q.vertices.size(); ++v) s += (v ? ", " : "") + q.vertices[v];
  s += ";\n";
  for (const auto& a : q.arrows) s += "  arrow " + a.label + ": " + a.source + " -> " + a.target + ";\n";
  if (!q.relations.empty()) {
    s += "  relations ";
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
      const auto& terms = q.relations[r].terms;
      s += r ? ", " : "";
      s += detail::path_text(terms.front());
      s += " = ";
      if (terms.size() == 1) {
        s += "0";
      } else {
        const mpq_class c = -terms[1].coeff;
        s += (c == 1 ? "" : c.get_str() + " ") + detail::path_text(terms[1]);
      }
    }
    s += ";\n";
  }
  s += "  nilpotency " + std::to_string(q.nilpotency) + ";\n}\n";
  return s;
}

/// Deterministic item `index` of the corpus for `seed`: a counter-based
/// stream, independent of every other item.
template <ExactField F>
std::pair<std::string, Algebra<F>> corpus_algebra(std::uint64_t seed, std::size_t index, std::size_t dim_max, const F& f) {
  std::mt19937_64 rng(detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(index + 1)));
  const std::string name = "q" + std::to_string(seed) + "_" + std::to_string(index);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto q = detail::random_presentation(rng);
    auto doc = parse(quiver_text(name, f.spec(), q));
    auto a = to_algebra(doc, f);
    if (a.dim() <= dim_max) return {quiver_text(name, f.spec(), q), std::move(a)};
  }
  fail(ErrorCode::InvariantViolation, "corpus generator found no algebra of dimension <= " + std::to_string(dim_max));
}

/// A random module over `a`: a cyclic submodule vA of the regular module,
/// the quotient A/vA, or a subquotient vA/wA with w in vA.
template <ExactField F>
ModuleRep<F> random_module(const AlgebraPtr<F>& a, Side side, std::mt19937_64& rng) {
  const F& f = a->field();
  const auto reg = regular_module(a, side);
  auto random_vector = [&](const Matrix<F>& span) {
    Vector<F> v(reg.dim(), f.zero());
    for (std::size_t s = 0; s < span.rows(); ++s)
      if (rng() % 2) axpy<F>(f, f.from_int(static_cast<std::int64_t>(rng() % 7) - 3), span.row_span(s), v);
    return v;
  };
  const auto whole = Matrix<F>::identity(f, reg.dim());
  const auto cyclic = spin(reg, random_vector(whole));
  switch (rng() % 3) {
    case 0:
      return submodule_from_vectors(reg, cyclic, "vA").module;
    case 1:
      return quotient_module(reg, cyclic, "A/vA").module;
    default: {
      auto inner = spin(reg, random_vector(cyclic));
      const auto sub = submodule_from_vectors(reg, cyclic, "vA");
      // Coordinates of wA inside vA.
      Matrix<F> coords(f, 0, sub.module.dim());
      if (inner.rows() > 0) {
        const auto x = solve(sub.inclusion.transpose(), inner.transpose());
        require(x.has_value(), ErrorCode::InvariantViolation, "wA is not contained in vA");
        coords = x->transpose();
      }
      return quotient_module(sub.module, coords, "vA/wA").module;
    }
  }
}

namespace detail {

template <ExactField F>
CorpusItem corpus_item(const CorpusOptions& opt, std::size_t index, const F& f) {
  CorpusItem item;
  item.index = index;
  auto [text, alg] = corpus_algebra(opt.seed, index, opt.dim_max, f);
  item.name = alg.name();
  item.dim = alg.dim();
  item.serialized = serialize(alg);
  try {
    auto report = analyze(share(alg));
    for (auto& v : theorem_violations(report)) item.violations.push_back(std::move(v));
    if (alg.dim() <= opt.morita_dim_max) {
      item.morita_checked = true;
      const auto amp = analyze(share(matrix_amplification(alg, 2)));
      if (morita_booleans(amp) != morita_booleans(report)) item.violations.push_back("Morita invariance under M2(A)");
      if (amp.nakayama.has_value() != report.nakayama.has_value() ||
          (amp.nakayama && amp.nakayama->map != report.nakayama->map))
        item.violations.push_back("Morita invariance of the Nakayama permutation");
    }
    item.report = std::move(report);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RouteDisagreement) item.route_disagreement = true;
    item.violations.push_back(e.what());
  }
  return item;
}

}  // namespace detail

/// Generates and analyzes the corpus; items are analyzed in parallel and
/// assembled in index order.
inline CorpusSummary run_corpus(const CorpusOptions& opt) {
  if (opt.field.is_prime_field())
    require(opt.field.characteristic > opt.dim_max, ErrorCode::UnsupportedCharacteristic,
            "corpus over " + opt.field.to_string() + " needs p > dim-max = " + std::to_string(opt.dim_max));
  CorpusSummary s{opt, std::vector<CorpusItem>(opt.count)};
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(opt.count);
  auto worker = [&]() {
    for (std::size_t i = next++; i < opt.count; i = next++) {
      try {
        s.items[i] = visit_field(opt.field, [&](const auto& f) { return detail::corpus_item(opt, i, f); });
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const auto jobs = std::max<std::size_t>(1, std::min(opt.jobs, opt.count));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) fail(ErrorCode::InvariantViolation, "corpus generation failed: " + e);
  return s;
}

}  // namespace kaschlab
