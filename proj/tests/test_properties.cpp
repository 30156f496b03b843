#include <catch_amalgamated.hpp>

#include "kaschlab/properties.hpp"
#include "kaschlab/zoo.hpp"

using namespace kaschlab;

namespace {

template <class F>
PropertyReport report_of(const Algebra<F>& a) {
  return analyze(share(a));
}

// Oracle: A is Kasch on a side iff every simple class occurs in soc(A).
template <class F>
bool kasch_by_socle(const Structure<F>& st, Side side) {
  for (auto k : socle_multiplicities(regular_module(st.algebra, side), st))
    if (k == 0) return false;
  return true;
}

// Oracle: S is an image of E iff S occurs in top(E).
template <class F>
bool dual_kasch_by_top(const Structure<F>& st, Side side) {
  const auto e = injective_hull(regular_module(st.algebra, side), st).hull;
  for (auto k : top_multiplicities(e, st))
    if (k == 0) return false;
  return true;
}

template <class F>
std::vector<Algebra<F>> corpus_algebras(const F& f) {
  std::vector<Algebra<F>> out;
  for (const auto& name : zoo_names()) out.push_back(zoo(name, f));
  out.push_back(opposite(zoo("A5", f)));
  out.push_back(truncated_poly(f, 3));
  out.push_back(product(zoo("T2", f), truncated_poly(f, 2)));
  auto t2 = triangular_algebra(f, 2);
  out.push_back(trivial_extension(t2, Bimodule<F>::dual_regular(t2)));
  out.push_back(trivial_extension(t2, Bimodule<F>::regular(t2)));
  out.push_back(group_algebra(f, GroupTable::cyclic(3)));
  return out;
}

}  // namespace

TEST_CASE("Kasch examples") {
  const RationalField q;
  auto t2 = structure(share(zoo("T2", q)));
  auto r = kasch(t2, Side::Right);
  CHECK_FALSE(r.holds);
  CHECK(r.failing_class == 0u);
  auto l = kasch(t2, Side::Left);
  CHECK_FALSE(l.holds);
  CHECK(l.failing_class == 1u);
  auto a5 = structure(share(zoo("A5", q)));
  CHECK(kasch(a5, Side::Right).holds);
  CHECK_FALSE(kasch(a5, Side::Left).holds);
  auto m2 = structure(share(zoo("M2", q)));
  CHECK(kasch(m2, Side::Right).holds);
  CHECK(kasch(m2, Side::Left).holds);
}

TEST_CASE("dual Kasch examples and routes") {
  const PrimeField f(101);
  auto t2 = structure(share(zoo("T2", f)));
  auto d = dual_kasch(t2, Side::Right);
  CHECK_FALSE(d.holds);
  for (const auto& route : d.routes) CHECK_FALSE(route.holds());
  CHECK(d.routes[2].witness.text == "Hom(E(e2·A), S2) = 0");
  auto r4 = structure(share(zoo("R4", f)));
  CHECK(dual_kasch(r4, Side::Right).holds);
  CHECK(dual_kasch(r4, Side::Left).holds);
  auto a5 = structure(share(zoo("A5", f)));
  CHECK(dual_kasch(a5, Side::Left).holds);
  CHECK_FALSE(dual_kasch(a5, Side::Right).holds);
}

TEST_CASE("strongly dual Kasch, Nakayama permutation, QF") {
  const RationalField q;
  auto r4 = structure(share(zoo("R4", q)));
  CHECK_FALSE(strongly_dual_kasch(r4).holds);
  CHECK(nakayama_permutation(r4).map == std::vector<std::size_t>{2, 1});
  CHECK_FALSE(weakly_symmetric(r4));
  CHECK(qf(r4));
  auto dn = structure(share(zoo("dual_numbers", q)));
  CHECK(strongly_dual_kasch(dn).holds);
  CHECK(nakayama_permutation(dn).map == std::vector<std::size_t>{1});
  auto m2 = structure(share(zoo("M2", q)));
  CHECK(strongly_dual_kasch(m2).holds);
  CHECK(strongly_dual_kasch(m2, Side::Left).holds);
  auto t2 = structure(share(zoo("T2", q)));
  CHECK_FALSE(qf(t2));
  try {
    nakayama_permutation(t2);
    FAIL("expected NotSelfInjective");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSelfInjective);
  }
}

TEST_CASE("V, GV, H rings, retractability and condition (c)") {
  const RationalField q;
  auto m2 = structure(share(zoo("M2", q)));
  CHECK(v_ring(m2));
  auto kk = structure(share(zoo("kxk", q)));
  CHECK(h_ring(kk).holds);
  auto r4 = structure(share(zoo("R4", q)));
  CHECK(coretractable(regular_module(r4.algebra, Side::Right), r4));
  auto t2 = structure(share(zoo("T2", q)));
  CHECK(gv_ring(t2));
  CHECK_FALSE(v_ring(t2));
  auto dn = structure(share(zoo("dual_numbers", q)));
  CHECK(commutative_condition_c(dn).holds);
  CHECK(commutative_condition_c(kk).holds);
  try {
    commutative_condition_c(t2);
    FAIL("expected NotCommutative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCommutative);
  }
}

TEST_CASE("analyze reproduces the worked examples over both fields") {
  auto run = [](const auto& f) {
    auto t2 = report_of(zoo("T2", f));
    auto t3 = report_of(zoo("T3", f));
    for (const auto* r : {&t2, &t3}) {
      CHECK_FALSE(r->right.kasch);
      CHECK_FALSE(r->left.kasch);
      CHECK_FALSE(r->right.dual_kasch);
      CHECK_FALSE(r->left.dual_kasch);
    }
    CHECK(t2.certificates.at("dual_kasch_right").text == "Hom(E(e2·A), S2) = 0");
    auto r4 = report_of(zoo("R4", f));
    CHECK(r4.qf);
    REQUIRE(r4.nakayama);
    CHECK(r4.nakayama->map == std::vector<std::size_t>{2, 1});
    CHECK_FALSE(r4.weakly_symmetric);
    CHECK_FALSE(r4.right.strongly_dual_kasch);
    CHECK_FALSE(r4.left.strongly_dual_kasch);
    CHECK(r4.right.dual_kasch);
    CHECK(r4.left.dual_kasch);
    auto a5 = report_of(zoo("A5", f));
    CHECK(a5.right.kasch);
    CHECK_FALSE(a5.left.kasch);
    CHECK(a5.left.dual_kasch);
    CHECK_FALSE(a5.right.dual_kasch);
    auto a5op = report_of(opposite(zoo("A5", f)));
    CHECK(a5op.left.kasch);
    CHECK_FALSE(a5op.right.kasch);
    CHECK(a5op.right.dual_kasch);
    CHECK_FALSE(a5op.left.dual_kasch);
  };
  run(RationalField{});
  run(PrimeField(101));

  auto m2 = report_of(zoo("M2", PrimeField(7)));
  for (const auto& [key, value] : m2.booleans()) {
    INFO(key);
    if (key != "commutative" && key != "hereditary_right") CHECK(value);
  }
  REQUIRE(m2.nakayama);
  CHECK(m2.nakayama->is_identity());
}

TEST_CASE("deciders agree with socle and top oracles") {
  const PrimeField f(101);
  for (const auto& alg : corpus_algebras(f)) {
    auto st = structure(share(alg));
    INFO(alg.name());
    for (Side side : {Side::Right, Side::Left}) {
      CHECK(kasch(st, side).holds == kasch_by_socle(st, side));
      CHECK(dual_kasch(st, side).holds == dual_kasch_by_top(st, side));
    }
  }
}

TEST_CASE("theorem invariants hold on sample algebras") {
  const PrimeField f(101);
  for (const auto& alg : corpus_algebras(f)) {
    INFO(alg.name());
    const auto r = report_of(alg);
    CHECK(report_violations(r).empty());
    CHECK(theorem_violations(r).empty());
  }
}

TEST_CASE("Morita invariance under matrix amplification") {
  const PrimeField f(101);
  for (const auto& name : {"T2", "R4", "A5", "dual_numbers", "kxk"}) {
    INFO(name);
    const auto a = zoo(name, f);
    const auto r = report_of(a);
    const auto r2 = report_of(matrix_amplification(a, 2));
    CHECK(morita_booleans(r) == morita_booleans(r2));
    CHECK(r.nakayama.has_value() == r2.nakayama.has_value());
    if (r.nakayama && r2.nakayama) CHECK(r.nakayama->map == r2.nakayama->map);
  }
}

TEST_CASE("skew group algebras, fixed rings and group rings preserve dual Kasch") {
  const RationalField q;
  auto dxd = product(truncated_poly(q, 2), truncated_poly(q, 2));
  auto swap = GroupAction<RationalField>::swap(dxd);
  auto skew = report_of(skew_group_algebra(dxd, swap));
  CHECK(skew.right.dual_kasch);
  CHECK(report_of(fixed_ring(dxd, swap)).right.dual_kasch);

  auto gf3 = PrimeField(3);
  auto kg = report_of(group_algebra(gf3, GroupTable::cyclic(2)));
  auto kxk = report_of(zoo("kxk", gf3));
  auto strip = [](std::map<std::string, bool> b) {
    b.erase("commutative");
    return b;
  };
  CHECK(strip(kg.booleans()) == strip(kxk.booleans()));

  const PrimeField f(101);
  for (const auto& name : zoo_names()) {
    INFO(name);
    const auto a = zoo(name, f);
    const auto base = report_of(a);
    auto g = report_of(skew_group_algebra(a, GroupAction<PrimeField>::trivial(a, GroupTable::cyclic(2))));
    CHECK(g.right.dual_kasch == base.right.dual_kasch);
    auto aa = product(a, a);
    if (base.right.dual_kasch) {
      auto act = GroupAction<PrimeField>::swap(aa);
      CHECK(report_of(skew_group_algebra(aa, act)).right.dual_kasch);
      CHECK(report_of(fixed_ring(aa, act)).right.dual_kasch);
    }
  }
}
