#include <catch_amalgamated.hpp>

#include <random>

#include "kaschlab/homological.hpp"
#include "kaschlab/zoo.hpp"
#include "oracles.hpp"

using namespace kaschlab;

namespace {

// Oracle: M is projective iff the free presentation A^{dim M} → M,
// (a_1, …, a_n) ↦ Σ m_k·a_k, splits.
template <class F>
bool splits_off_free(const ModuleRep<F>& m) {
  const F& f = m.field();
  if (m.dim() == 0) return true;
  const auto& a = m.algebra();
  auto reg = regular_module(m.algebra_ptr(), m.side());
  auto free = power(reg, m.dim());
  Matrix<F> pi(f, free.dim(), m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k)
    for (std::size_t i = 0; i < a.dim(); ++i) pi.set_row(k * a.dim() + i, m.action(i).row(k));
  REQUIRE(is_homomorphism(free, m, pi));
  const auto homs = hom_space(m, free);
  // Σ c_k h_k π = I as a linear system in c.
  Matrix<F> sys(f, homs.dim(), m.dim() * m.dim());
  for (std::size_t k = 0; k < homs.dim(); ++k) {
    const auto c = homs.basis[k] * pi;
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t s = 0; s < m.dim(); ++s) sys(k, r * m.dim() + s) = c(r, s);
  }
  Matrix<F> target(f, 1, m.dim() * m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) target(0, r * m.dim() + r) = f.one();
  if (homs.dim() == 0) return false;
  return solve(sys.transpose(), target.transpose()).has_value();
}

template <class F>
std::size_t corner_dim(const Algebra<F>& a, const Vector<F>& e, const Vector<F>& g) {
  Matrix<F> span(a.field(), 0, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) span.append_row(a.multiply(a.multiply(e, a.basis_vector(i)), g));
  return rank(span);
}

template <class F>
std::vector<Algebra<F>> sample_algebras(const F& f) {
  std::vector<Algebra<F>> out{zoo("T2", f), zoo("T3", f), zoo("R4", f), zoo("A5", f), opposite(zoo("A5", f)),
                              zoo("kxk", f), zoo("dual_numbers", f), zoo("M2", f), truncated_poly(f, 3)};
  auto t2 = triangular_algebra(f, 2);
  out.push_back(trivial_extension(t2, Bimodule<F>::dual_regular(t2)));
  out.push_back(matrix_amplification(zoo("R4", f), 2));
  return out;
}

}  // namespace

TEST_CASE("indecomposable projectives and injectives") {
  const RationalField q;
  auto t2 = structure(share(triangular_algebra(q, 2)));
  // Class 0 = E11, class 1 = E22.
  auto e2 = injective_indecomposable(t2, 1);
  CHECK(e2.dim() == 2);
  CHECK(top_multiplicities(e2, t2) == std::vector<std::size_t>{1, 0});
  CHECK(socle_multiplicities(e2, t2) == std::vector<std::size_t>{0, 1});

  auto kk = structure(share(zoo("kxk", q)));
  for (std::size_t i = 0; i < 2; ++i) CHECK(hom_dim(injective_indecomposable(kk, i), kk.right_simples[i]) == 1);
  CHECK(injective_indecomposable(kk, 0).dim() == 1);

  auto r4 = structure(share(zoo("R4", q)));
  auto p1 = projective_indecomposable(r4, 0);
  CHECK(p1.dim() == 2);
  CHECK(socle_multiplicities(p1, r4) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("projectivity and injectivity examples") {
  const RationalField q;
  for (const auto& name : zoo_names()) {
    auto st = structure(share(zoo(name, q)));
    CHECK(is_projective(regular_module(st.algebra, Side::Right), st));
    CHECK(is_projective(regular_module(st.algebra, Side::Left), st));
    for (std::size_t i = 0; i < st.classes(); ++i)
      for (Side side : {Side::Right, Side::Left}) {
        CHECK(is_projective(projective_indecomposable(st, i, side), st));
        CHECK(is_injective(injective_indecomposable(st, i, side), st));
      }
  }
  auto t2 = structure(share(triangular_algebra(q, 2)));
  CHECK_FALSE(is_injective(regular_module(t2.algebra, Side::Right), t2));
  auto r4 = structure(share(zoo("R4", q)));
  CHECK(is_injective(regular_module(r4.algebra, Side::Right), r4));
  CHECK(is_injective(regular_module(r4.algebra, Side::Left), r4));
}

TEST_CASE("projectivity agrees with the splitting oracle") {
  const PrimeField f(101);
  std::mt19937_64 rng(23);
  for (const auto& alg : sample_algebras(f)) {
    if (alg.dim() > 8) continue;
    auto st = structure(share(alg));
    for (Side side : {Side::Right, Side::Left}) {
      std::vector<ModuleRep<PrimeField>> mods{regular_module(st.algebra, side), radical_ideal(st, side)};
      for (std::size_t c = 0; c < st.classes(); ++c) {
        mods.push_back(st.simple(side, c));
        mods.push_back(injective_indecomposable(st, c, side));
        auto p = projective_indecomposable(st, c, side);
        mods.push_back(quotient_module(p, socle(p, st.rad)).module);
      }
      for (const auto& m : mods) {
        INFO(alg.name() << " " << m.label());
        CHECK(is_projective(m, st) == splits_off_free(m));
        CHECK(is_injective(m, st) == splits_off_free(dual_module(m)));
      }
    }
  }
}

TEST_CASE("injective hulls") {
  const RationalField q;
  auto t2 = structure(share(triangular_algebra(q, 2)));
  auto h = injective_hull(t2.right_simples[1], t2);
  CHECK(h.hull.dim() == 2);
  CHECK(top_multiplicities(h.hull, t2) == std::vector<std::size_t>{1, 0});
  auto ha = injective_hull(regular_module(t2.algebra, Side::Right), t2);
  CHECK(ha.hull.dim() == 4);
  CHECK(ha.multiplicities == std::vector<std::size_t>{0, 2});

  const PrimeField f(101);
  for (const auto& alg : sample_algebras(f)) {
    auto st = structure(share(alg));
    for (Side side : {Side::Right, Side::Left}) {
      auto reg = regular_module(st.algebra, side);
      for (const auto& m : {reg, radical_ideal(st, side), st.simple(side, 0)}) {
        auto hull = injective_hull(m, st);
        CHECK(is_homomorphism(m, hull.hull, hull.embedding));
        CHECK(rank(hull.embedding) == m.dim());
        CHECK(is_injective(hull.hull, st));
        std::size_t expected = 0;
        const auto soc = socle_multiplicities(m, st);
        for (std::size_t c = 0; c < st.classes(); ++c) expected += soc[c] * injective_indecomposable(st, c, side).dim();
        CHECK(hull.hull.dim() == expected);
        if (is_injective(m, st)) CHECK(hull.hull.dim() == m.dim());
      }
      auto cover = projective_cover(regular_module(st.algebra, side), st);
      CHECK(cover.cover.dim() == st.alg().dim());
    }
  }
}

TEST_CASE("max-projectivity") {
  const PrimeField f7(7);
  auto t2 = structure(share(triangular_algebra(f7, 2)));
  auto reg = regular_module(t2.algebra, Side::Right);
  CHECK(is_max_projective(reg, t2));
  // E(A) = E(S2)^2 = (E11·A)^2 is projective, hence max-projective.
  auto hull = injective_hull(reg, t2).hull;
  CHECK(is_projective(hull, t2));
  CHECK(is_max_projective(hull, t2));
  // S1 admits no non-zero map into A, so S1 → S1 cannot lift.
  CHECK_FALSE(is_max_projective(t2.right_simples[0], t2));
  CHECK_FALSE(is_projective(t2.right_simples[0], t2));
  auto m2 = structure(share(matrix_algebra(f7, 2)));
  CHECK(is_max_projective(m2.right_simples[0], m2));
  const RationalField q;
  auto tq = structure(share(triangular_algebra(q, 2)));
  CHECK_THROWS_AS(is_max_projective(regular_module(tq.algebra, Side::Right), tq), Error);
}

TEST_CASE("Cartan matrix, hereditary and Goldie dimension") {
  const RationalField q;
  auto t2 = structure(share(triangular_algebra(q, 2)));
  CHECK(cartan_matrix(t2) == std::vector<std::vector<std::size_t>>{{1, 1}, {0, 1}});
  CHECK(is_hereditary(t2));
  CHECK(goldie_dimension(regular_module(t2.algebra, Side::Right), t2) == 2);
  auto dn = structure(share(truncated_poly(q, 2)));
  CHECK_FALSE(is_hereditary(dn));

  const PrimeField f(101);
  for (const auto& alg : sample_algebras(f)) {
    auto st = structure(share(alg));
    const auto c = cartan_matrix(st);
    for (std::size_t i = 0; i < st.classes(); ++i) {
      std::size_t total = 0;
      for (std::size_t j = 0; j < st.classes(); ++j) {
        CHECK(c[i][j] * st.endo_dims[j] == corner_dim(st.alg(), st.representative(i), st.representative(j)));
        total += c[i][j] * st.right_simples[j].dim();
      }
      CHECK(total == projective_indecomposable(st, i).dim());
    }
  }
}

TEST_CASE("self-injective algebras have simple socles on indecomposable projectives") {
  const PrimeField f(101);
  for (const auto& alg : sample_algebras(f)) {
    auto st = structure(share(alg));
    if (!is_injective(regular_module(st.algebra, Side::Right), st)) continue;
    for (std::size_t i = 0; i < st.classes(); ++i) {
      auto soc = socle_multiplicities(projective_indecomposable(st, i), st);
      std::size_t n = 0;
      for (auto k : soc) n += k;
      CHECK(n == 1);
    }
  }
}
