// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "grammar_cases.hpp"
#include "kaschlab/kaschlab.hpp"

using namespace kaschlab;

namespace {

// Pinned limits. All property comparisons are exact.
constexpr double kGoldenSeconds = 1.0;
constexpr double kCorpusSeconds = 120.0;
constexpr std::size_t kCorpusCount = 200;
constexpr std::size_t kCorpusDimMax = 12;
constexpr std::uint64_t kCorpusSeed = 7;
constexpr std::size_t kModulePairs = 100;
constexpr std::size_t kNegativeCases = 20;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void verdict(int n, bool pass, const std::string& title, const std::string& detail) {
  std::printf("criterion %2d %s  %s: %s\n", n, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", x);
  return buf;
}

std::size_t jobs() {
  if (const char* env = std::getenv("KASCHLAB_JOBS")) {
    const auto n = std::strtoul(env, nullptr, 10);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Expect {
  std::string key;
  Json value;
};

/// Criterion 1 checks are stated here directly, not read from the manifest.
std::vector<Expect> stated_expectations(const std::string& algebra) {
  if (algebra == "T2" || algebra == "T3")
    return {{"kasch_right", false}, {"kasch_left", false}, {"dual_kasch_right", false}, {"dual_kasch_left", false}};
  if (algebra == "R4")
    return {{"qf", true},
            {"nakayama", Json::array({2, 1})},
            {"weakly_symmetric", false},
            {"strongly_dual_kasch_right", false},
            {"strongly_dual_kasch_left", false},
            {"dual_kasch_right", true},
            {"dual_kasch_left", true}};
  if (algebra == "A5")
    return {{"kasch_right", true}, {"kasch_left", false}, {"dual_kasch_left", true}, {"dual_kasch_right", false}};
  if (algebra == "A5_op")
    return {{"kasch_left", true}, {"kasch_right", false}, {"dual_kasch_right", true}, {"dual_kasch_left", false}};
  return {};
}

void criterion_goldens(const std::vector<GoldenResult>& goldens, const std::vector<GoldenCase>& cases) {
  std::size_t stated = 0, ok = 0, reproduced = 0;
  double worst = 0;
  std::string bad;
  for (const auto* name : {"T2", "T3", "R4", "A5", "A5_op"})
    for (const auto& field : {FieldSpec::rationals(), FieldSpec::prime(101)}) {
      const auto t0 = Clock::now();
      const auto doc = parse(read_file(std::string(KASCHLAB_SOURCE_DIR) + "/algebras/" + name + ".alg"));
      const auto props = report_json(analyze_document(doc, field), {})["properties"];
      worst = std::max(worst, since(t0));
      for (const auto& e : stated_expectations(name)) {
        ++stated;
        if (props[e.key] == e.value) ++ok;
        else bad += std::string(" ") + name + "/" + field.to_string() + ":" + e.key;
      }
    }
  for (std::size_t i = 0; i < goldens.size(); ++i) {
    worst = std::max(worst, goldens[i].seconds);
    if (goldens[i].pass) ++reproduced;
    else bad += " golden:" + cases[i].name;
  }
  const bool pass = ok == stated && reproduced == goldens.size() && worst < kGoldenSeconds;
  verdict(1, pass, "golden reproduction over QQ and GF(101)",
          std::to_string(ok) + "/" + std::to_string(stated) + " stated values, " + std::to_string(reproduced) + "/" +
              std::to_string(goldens.size()) + " golden files byte-identical, slowest " + fmt(worst) + " (limit " +
              fmt(kGoldenSeconds) + ")" + bad);
}

bool routes_agree(const PropertyReport& r) {
  for (Side s : {Side::Right, Side::Left})
    for (const auto& route : r.side(s).routes)
      if (route.holds() != r.side(s).dual_kasch) return false;
  return true;
}

void criterion_routes(const CorpusSummary& s, const std::vector<GoldenResult>& goldens, double seconds) {
  std::size_t disagreements = s.route_disagreements();
  std::size_t missing = 0;
  for (const auto& g : goldens)
    if (!g.report || !routes_agree(*g.report)) ++disagreements;
  for (const auto& item : s.items) {
    if (!item.report) ++missing;
    else if (!routes_agree(*item.report)) ++disagreements;
  }
  const bool pass = disagreements == 0 && missing == 0 && s.items.size() == kCorpusCount && seconds < kCorpusSeconds;
  verdict(2, pass, "DK1=DK2=DK3=DK4 on goldens and corpus",
          std::to_string(goldens.size()) + " goldens + " + std::to_string(s.items.size()) + " corpus algebras, " +
              std::to_string(disagreements) + " disagreements, " + std::to_string(missing) + " unanalyzed, " + fmt(seconds) +
              " (limit " + fmt(kCorpusSeconds) + ")");
}

void criterion_theorems(const CorpusSummary& s) {
  std::size_t violations = 0, applicable = 0;
  std::string first;
  for (const auto& item : s.items) {
    if (!item.report) continue;
    for (const auto& c : theorem_checks(*item.report)) {
      applicable += c.applicable ? 1 : 0;
      if (c.applicable && !c.holds) {
        ++violations;
        if (first.empty()) first = " first: " + item.name + " " + c.name;
      }
    }
    for (const auto& v : report_violations(*item.report)) {
      ++violations;
      if (first.empty()) first = " first: " + item.name + " " + v;
    }
  }
  verdict(3, violations == 0 && applicable > 0, "theorem invariants on the corpus",
          std::to_string(applicable) + " applicable checks, " + std::to_string(violations) + " violations" + first);
}

template <ExactField F>
std::size_t duality_failures(const AlgebraPtr<F>& a, std::mt19937_64& rng, std::size_t& checked) {
  std::size_t bad = 0;
  for (std::size_t k = 0; k < kModulePairs; ++k) {
    const Side side = k % 2 == 0 ? Side::Right : Side::Left;
    const auto m = random_module(a, side, rng);
    const auto n = random_module(a, side, rng);
    if (hom_dim(m, n) != hom_dim(dual_module(n), dual_module(m))) ++bad;
    const auto dd = dual_module(dual_module(m));
    if (dd.side() != m.side() || dd.actions() != m.actions()) ++bad;
    ++checked;
  }
  return bad;
}

void criterion_duality(const CorpusSummary& s) {
  const auto t0 = Clock::now();
  std::size_t checked = 0, bad = 0;
  for (const auto& item : s.items) {
    std::mt19937_64 rng(detail::splitmix64(item.index + 0xD0A1));
    const auto doc = parse(item.serialized);
    bad += with_algebra(doc, [&](auto alg) { return duality_failures(share(std::move(alg)), rng, checked); });
  }
  verdict(4, bad == 0 && checked == kModulePairs * s.items.size(), "duality functor on random module pairs",
          std::to_string(checked) + " pairs over " + std::to_string(s.items.size()) + " algebras, " + std::to_string(bad) +
              " failures, " + fmt(since(t0)));
}

void criterion_morita(const std::vector<GoldenCase>& cases) {
  std::size_t ok = 0;
  std::string bad;
  for (const auto& g : cases) {
    const auto doc = parse(read_file(std::string(KASCHLAB_SOURCE_DIR) + "/" + g.algebra));
    const bool same = with_algebra(
        doc,
        [](auto a) {
          const auto base = analyze(share(a));
          const auto amp = analyze(share(matrix_amplification(a, 2)));
          const bool naka = base.nakayama.has_value() == amp.nakayama.has_value() &&
                            (!base.nakayama || base.nakayama->map == amp.nakayama->map);
          return morita_booleans(base) == morita_booleans(amp) && naka;
        },
        g.field);
    if (same) ++ok;
    else bad += " " + g.name;
  }
  verdict(5, ok == cases.size(), "Morita invariance under M2(-) on every golden",
          std::to_string(ok) + "/" + std::to_string(cases.size()) + " agree" + bad);
}

void criterion_skew() {
  const RationalField q;
  const auto d = truncated_poly(q, 2);
  const auto dxd = product(d, d);
  const auto swap = GroupAction<RationalField>::swap(dxd);
  const auto skew = analyze(share(skew_group_algebra(dxd, swap)));
  const auto fixed = analyze(share(fixed_ring(dxd, swap)));
  const PrimeField f3(3);
  const auto kg = analyze(share(group_algebra(f3, GroupTable::cyclic(2))));
  const auto kk = analyze(share(zoo("kxk", f3)));
  const bool group_ring = kg.booleans() == kk.booleans() && kg.nakayama.has_value() == kk.nakayama.has_value() &&
                          (!kg.nakayama || kg.nakayama->map == kk.nakayama->map);
  const bool pass = skew.right.dual_kasch && fixed.right.dual_kasch && group_ring;
  verdict(6, pass, "skew group, fixed ring and group ring",
          std::string("(D x D)*C2 right dual Kasch ") + (skew.right.dual_kasch ? "true" : "false") +
              ", (D x D)^C2 right dual Kasch " + (fixed.right.dual_kasch ? "true" : "false") +
              ", GF(3)[C2] report " + (group_ring ? "equals" : "differs from") + " GF(3) x GF(3)");
}

void criterion_bridge(const CorpusSummary& s) {
  std::size_t checked = 0, max_checked = 0, bad = 0;
  for (const auto& item : s.items) {
    if (!item.report) continue;
    for (Side side : {Side::Right, Side::Left}) {
      const auto& x = item.report->side(side);
      ++checked;
      if (x.self_injective != (x.dual_kasch && x.projective_ER)) ++bad;
      if (x.max_projective_ER) {
        ++max_checked;
        if (x.self_injective != (x.dual_kasch && *x.max_projective_ER)) ++bad;
      }
    }
  }
  verdict(7, bad == 0 && checked == 2 * s.items.size() && max_checked > 0,
          "self-injective iff dual Kasch and E(A) (max-)projective",
          std::to_string(checked) + " sides with projective, " + std::to_string(max_checked) +
              " sides within the max-projective budget, " + std::to_string(bad) + " violations");
}

void criterion_commutative(const CorpusSummary& s) {
  std::size_t commutative = 0, kasch = 0, bad = 0;
  for (const auto& item : s.items) {
    if (!item.report || !item.report->commutative) continue;
    const auto& r = *item.report;
    ++commutative;
    kasch += r.right.kasch ? 1 : 0;
    if (!r.condition_c || r.right.kasch != r.right.dual_kasch || r.right.dual_kasch != *r.condition_c) ++bad;
    if (r.right.kasch && !r.right.strongly_dual_kasch) ++bad;
  }
  verdict(8, bad == 0 && commutative > 0, "commutative: Kasch iff dual Kasch iff condition (c), Kasch implies strongly",
          std::to_string(commutative) + " commutative algebras (" + std::to_string(kasch) + " Kasch), " +
              std::to_string(bad) + " violations");
}

void criterion_parser(const std::vector<GoldenCase>& cases) {
  std::size_t round_trips = 0;
  std::string bad;
  for (const auto& g : cases) {
    const auto doc = parse(read_file(std::string(KASCHLAB_SOURCE_DIR) + "/" + g.algebra));
    const bool ok = visit_field(g.field.value_or(doc.field), [&](const auto& f) {
      const auto a = to_algebra(doc, f);
      const auto text = serialize(a);
      const auto b = to_algebra(parse(text), f);
      return b.same_structure(a) && b.labels() == a.labels() && b.unit() == a.unit() && serialize(b) == text;
    });
    if (ok) ++round_trips;
    else bad += " " + g.name;
  }
  std::size_t positioned = 0;
  const auto negatives = grammar_cases();
  for (const auto& c : negatives) {
    const auto r = parse_document(c.text);
    if (!r.document && !r.errors.empty() && r.errors.front().code() == c.code && r.errors.front().span().line == c.line &&
        r.errors.front().span().column == c.column)
      ++positioned;
    else bad += " negative@" + std::to_string(c.line) + ":" + std::to_string(c.column);
  }
  const RationalField q;
  const auto quiver = parse(read_file(std::string(KASCHLAB_SOURCE_DIR) + "/algebras/T2_quiver.alg"));
  const bool cartan = cartan_matrix(structure(share(to_algebra(quiver, q)))) ==
                      cartan_matrix(structure(share(triangular_algebra(q, 2))));
  const bool pass = round_trips == cases.size() && positioned == negatives.size() &&
                    negatives.size() >= kNegativeCases && cartan;
  verdict(9, pass, "parser round-trip, positioned errors, T2 quiver",
          std::to_string(round_trips) + "/" + std::to_string(cases.size()) + " round-trips, " +
              std::to_string(positioned) + "/" + std::to_string(negatives.size()) +
              " negative cases positioned, T2 quiver Cartan " + (cartan ? "matches" : "differs") + bad);
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = "'" KASCHLAB_CLI "' " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  char buf[1 << 14];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void criterion_determinism(const CorpusSummary& library) {
  const std::string args = "corpus --count " + std::to_string(kCorpusCount) + " --dim-max " +
                           std::to_string(kCorpusDimMax) + " --field 'GF(101)' --seed " + std::to_string(kCorpusSeed);
  const auto t0 = Clock::now();
  const auto a = run_cli(args + " --jobs 1");
  const auto b = run_cli(args + " --jobs " + std::to_string(std::max<std::size_t>(2, jobs())));
  const auto expected = corpus_summary_json(library).dump(2) + "\n";
  const bool pass = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second && a.second == expected;
  verdict(10, pass, "corpus --seed " + std::to_string(kCorpusSeed) + " is deterministic",
          "two CLI runs (different --jobs) " + std::string(a.second == b.second ? "byte-identical" : "differ") + ", " +
              (a.second == expected ? "equal to" : "differ from") + " the in-process summary, " +
              std::to_string(a.second.size()) + " bytes, " + fmt(since(t0)));
}

}  // namespace

int main() {
  std::printf("acceptance: corpus seed %llu, %zu algebras, dim <= %zu, GF(101), %zu jobs\n",
              static_cast<unsigned long long>(kCorpusSeed), kCorpusCount, kCorpusDimMax, jobs());
  const auto cases = load_golden_manifest(KASCHLAB_SOURCE_DIR);
  const auto t0 = Clock::now();
  const auto goldens = run_goldens(KASCHLAB_SOURCE_DIR);
  CorpusOptions opt;
  opt.count = kCorpusCount;
  opt.dim_max = kCorpusDimMax;
  opt.seed = kCorpusSeed;
  opt.field = FieldSpec::prime(101);
  opt.jobs = jobs();
  const auto corpus = run_corpus(opt);
  const double corpus_seconds = since(t0);

  criterion_goldens(goldens, cases);
  criterion_routes(corpus, goldens, corpus_seconds);
  criterion_theorems(corpus);
  criterion_duality(corpus);
  criterion_morita(cases);
  criterion_skew();
  criterion_bridge(corpus);
  criterion_commutative(corpus);
  criterion_parser(cases);
  criterion_determinism(corpus);
  std::printf("acceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
