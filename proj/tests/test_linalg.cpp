#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "kaschlab/matrix.hpp"
#include "kaschlab/polynomial.hpp"

using namespace kaschlab;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int sparsity = 2) {
  std::uniform_int_distribution<int> coin(0, sparsity), val(-4, 4);
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) == 0) m(i, j) = f.from_int(val(rng));
  return m;
}

// Brute-force oracle over a tiny prime field: every vector of the row space.
std::set<std::vector<std::uint32_t>> enumerate_span(const PrimeField& f, const Matrix<PrimeField>& m) {
  std::set<std::vector<std::uint32_t>> out;
  const std::size_t p = f.characteristic();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> v(m.cols(), 0);
    std::size_t c = code;
    for (std::size_t i = 0; i < m.rows(); ++i, c /= p) axpy<PrimeField>(f, static_cast<std::uint32_t>(c % p), m.row_span(i), v);
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rref examples") {
  const PrimeField f7(7);
  auto id = Matrix<PrimeField>::identity(f7, 3);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.rank == 3);

  const RationalField q;
  auto m = Matrix<RationalField>::from_ints(q, {{2, 4}, {1, 2}});
  auto rq = rref(m);
  CHECK(rq.reduced == Matrix<RationalField>::from_ints(q, {{1, 2}, {0, 0}}));
  CHECK(rq.pivots == std::vector<std::size_t>{0});
  CHECK(rq.rank == 1);

  Matrix<PrimeField> z(f7, 2, 5);
  auto rz = rref(z);
  CHECK(rz.reduced == z);
  CHECK(rz.pivots.empty());
  CHECK(rz.rank == 0);

  CHECK(rref(Matrix<PrimeField>(f7, 0, 0)).rank == 0);
}

TEST_CASE("kernel examples") {
  const PrimeField f5(5);
  CHECK(kernel_basis(Matrix<PrimeField>::identity(f5, 4)).rows() == 0);
  auto k = kernel_basis(Matrix<PrimeField>::from_ints(f5, {{1, 1}}));
  REQUIRE(k.rows() == 1);
  CHECK(f5.mul(k(0, 0), 4) == k(0, 1));
  CHECK(kernel_basis(Matrix<PrimeField>(f5, 2, 3)).rows() == 3);
}

TEST_CASE("solve examples") {
  const RationalField q;
  auto b = Matrix<RationalField>::from_ints(q, {{3, -1}, {7, 2}});
  CHECK(*solve(Matrix<RationalField>::identity(q, 2), b) == b);
  auto a = Matrix<RationalField>::from_ints(q, {{1, 1}, {2, 2}});
  CHECK_FALSE(solve(a, Matrix<RationalField>::from_ints(q, {{1}, {3}})).has_value());
  auto x = solve(a, Matrix<RationalField>::from_ints(q, {{1}, {2}}));
  REQUIRE(x.has_value());
  CHECK((*x)(0, 0) + (*x)(1, 0) == 1);
  CHECK_THROWS_AS(solve(a, Matrix<RationalField>::from_ints(q, {{1}})), Error);
}

TEST_CASE("subspace examples") {
  const PrimeField f3(3);
  auto e1 = Matrix<PrimeField>::from_ints(f3, {{1, 0}});
  auto e2 = Matrix<PrimeField>::from_ints(f3, {{0, 1}});
  CHECK(intersect_rowspaces(e1, e2).rows() == 0);
  CHECK(intersect_rowspaces(e1, e1).rows() == 1);
  CHECK(sum_rowspaces(e1, e1).rows() == 1);
  auto both = Matrix<PrimeField>::identity(f3, 2);
  auto diag = Matrix<PrimeField>::from_ints(f3, {{1, 1}});
  auto i = intersect_rowspaces(both, diag);
  REQUIRE(i.rows() == 1);
  CHECK(subspace_contains(diag, i.row_span(0)));
  CHECK_THROWS_AS(sum_rowspaces(e1, Matrix<PrimeField>::identity(f3, 3)), Error);
}

TEST_CASE("factor_linear_roots examples") {
  const PrimeField f7(7);
  CHECK(factor_linear_roots(Poly<PrimeField>(f7, {6, 0, 1})) == std::vector<std::uint32_t>{1, 6});
  const RationalField q;
  CHECK(factor_linear_roots(Poly<RationalField>(q, {0, -1, 1})) == std::vector<mpq_class>{0, 1});
  CHECK(factor_linear_roots(Poly<RationalField>(q, {1, 0, 1})).empty());
  CHECK_THROWS_AS(factor_linear_roots(Poly<RationalField>(q)), Error);
  // (2x − 1)(3x + 4)(x² + 2)
  auto p = Poly<RationalField>(q, {-1, 2}) * Poly<RationalField>(q, {4, 3}) * Poly<RationalField>(q, {2, 0, 1});
  CHECK(factor_linear_roots(p) == std::vector<mpq_class>{mpq_class(-4, 3), mpq_class(1, 2)});
}

TEST_CASE("large prime roots agree with exhaustive evaluation") {
  const PrimeField f(10007);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::uint32_t> val(0, 10006);
    Poly<PrimeField> p = Poly<PrimeField>::constant(f, 1);
    for (int k = 0; k < 4; ++k) p = p * Poly<PrimeField>(f, {val(rng), 1});
    p = p * Poly<PrimeField>(f, {val(rng), val(rng), 1});
    std::vector<std::uint32_t> oracle;
    for (std::uint32_t a = 0; a < 10007; ++a)
      if (p.eval(a) == 0) oracle.push_back(a);
    CHECK(factor_linear_roots(p) == oracle);
  }
}

TEST_CASE("rank-nullity, rref idempotence and solve soundness on random matrices") {
  std::mt19937_64 rng(11);
  const PrimeField f(101);
  const RationalField q;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    auto m = random_matrix(f, r, c, rng);
    auto mq = random_matrix(q, r, c, rng);
    CHECK(rank(m) + kernel_basis(m).rows() == c);
    CHECK(rank(mq) + kernel_basis(mq).rows() == c);
    CHECK(rref(rref(m).reduced).reduced == rref(m).reduced);
    CHECK(rref(rref(mq).reduced).reduced == rref(mq).reduced);
    auto k = kernel_basis(mq);
    if (k.rows() > 0) CHECK((mq * k.transpose()).is_zero());
    auto b = random_matrix(q, r, 2, rng);
    if (auto x = solve(mq, b)) CHECK(mq * *x == b);
    auto bf = m * random_matrix(f, c, 1, rng);
    auto xf = solve(m, bf);
    REQUIRE(xf.has_value());
    CHECK(m * *xf == bf);
  }
}

TEST_CASE("subspace lattice dimension formula against brute-force spans") {
  std::mt19937_64 rng(5);
  const PrimeField f(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    auto a = random_matrix(f, 1 + rng() % 3, n, rng, 1);
    auto b = random_matrix(f, 1 + rng() % 3, n, rng, 1);
    auto sa = enumerate_span(f, a), sb = enumerate_span(f, b);
    std::set<std::vector<std::uint32_t>> meet;
    for (const auto& v : sa)
      if (sb.count(v)) meet.insert(v);
    auto i = intersect_rowspaces(a, b);
    auto s = sum_rowspaces(a, b);
    CHECK(enumerate_span(f, i) == meet);
    CHECK(s.rows() + i.rows() == rank(a) + rank(b));
    for (const auto& v : sa) CHECK(subspace_contains(b, v) == (sb.count(v) == 1));
  }
}

TEST_CASE("echelon basis expresses vectors over inserted originals") {
  const RationalField q;
  EchelonBasis<RationalField> e(q, 3, true);
  CHECK(e.insert({1, 2, 0}));
  CHECK(e.insert({0, 1, 1}));
  CHECK_FALSE(e.insert({2, 5, 1}));
  auto c = e.express({1, 3, 1});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 1);
  CHECK((*c)[1] == 1);
  CHECK_FALSE(e.express({0, 0, 1}).has_value());
}
