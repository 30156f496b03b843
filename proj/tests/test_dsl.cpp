#include <catch_amalgamated.hpp>

#include "grammar_cases.hpp"

#include "kaschlab/dsl.hpp"
#include "kaschlab/properties.hpp"
#include "kaschlab/zoo.hpp"

using namespace kaschlab;

namespace {

const char* kDualNumbers = R"(# k[x]/(x^2)
algebra dual_numbers over QQ {
  basis e, x;
  unit = e;
  mult e*e = e;
  mult e*x = x;
  mult x*e = x;
}
)";

const char* kT2Quiver = R"(quiver T2q over QQ {
  vertices 1, 2;
  arrow a: 1 -> 2;
  nilpotency 2;
}
)";

const char* kR4Quiver = R"(quiver R4q over QQ {
  vertices 1, 2;
  arrow x1: 1 -> 2;
  arrow x2: 2 -> 1;
  relations x1*x2 = 0, x2*x1 = 0;
  nilpotency 3;
}
)";

template <class F>
std::vector<Algebra<F>> round_trip_set(const F& f) {
  std::vector<Algebra<F>> out;
  for (const auto& name : zoo_names()) out.push_back(zoo(name, f));
  out.push_back(opposite(zoo("A5", f)));
  out.push_back(matrix_amplification(zoo("R4", f), 2));
  auto dxd = product(truncated_poly(f, 2), truncated_poly(f, 2));
  out.push_back(skew_group_algebra(dxd, GroupAction<F>::swap(dxd)));
  out.push_back(fixed_ring(dxd, GroupAction<F>::swap(dxd)));
  out.push_back(group_algebra(f, GroupTable::cyclic(3)));
  return out;
}

ParseError first_error(const std::string& text) {
  auto r = parse_document(text);
  REQUIRE_FALSE(r.errors.empty());
  return r.errors.front();
}

}  // namespace

TEST_CASE("structure-constant documents") {
  const RationalField q;
  auto doc = parse(kDualNumbers);
  CHECK(doc.name == "dual_numbers");
  CHECK(doc.field == FieldSpec::rationals());
  CHECK_FALSE(doc.is_quiver());
  CHECK(to_algebra(doc, q).same_structure(truncated_poly(q, 2)));
  // Unit omitted: detected.
  auto no_unit = parse("algebra k over GF(7) { basis e; mult e*e = e; }");
  auto k = to_algebra(no_unit, PrimeField(7));
  CHECK(k.unit() == Vector<PrimeField>{1});
  // Rational coefficients and signs.
  auto a = to_algebra(parse("algebra c over QQ { basis e, j; unit = e; mult e*e = e; mult e*j = j; mult j*e = j;"
                            " mult j*j = -3/2 e; }"),
                      q);
  CHECK(a.constant(1, 1, 0) == mpq_class(-3, 2));
  CHECK(to_algebra(parse(serialize(a)), q).same_structure(a));
}

TEST_CASE("quiver documents flatten to the expected algebras") {
  const RationalField q;
  auto t2 = structure(share(to_algebra(parse(kT2Quiver), q)));
  CHECK(t2.alg().dim() == 3);
  CHECK(t2.alg().labels() == std::vector<std::string>{"e1", "e2", "a"});
  CHECK(cartan_matrix(t2) == cartan_matrix(structure(share(triangular_algebra(q, 2)))));

  auto dn = to_algebra(parse("quiver D over QQ { vertices v; arrow a: v -> v; relations a*a = 0; nilpotency 2; }"), q);
  CHECK(dn.dim() == 2);
  CHECK(analyze(share(dn)).booleans() == analyze(share(truncated_poly(q, 2))).booleans());

  auto r4q = analyze(share(to_algebra(parse(kR4Quiver), q)));
  auto r4 = analyze(share(zoo("R4", q)));
  CHECK(r4q.dim == 4);
  CHECK(r4q.booleans() == r4.booleans());
  REQUIRE(r4q.nakayama);
  CHECK(r4q.nakayama->map == r4.nakayama->map);
}

TEST_CASE("flattening commutes with reduction mod p") {
  const RationalField q;
  // Two parallel paths a*b and c*d from 1 to 3 identified up to a scalar.
  const char* text = R"(quiver sq over QQ {
    vertices 1, 2, 3, 4;
    arrow a: 1 -> 2; arrow b: 2 -> 3; arrow c: 1 -> 4; arrow d: 4 -> 3;
    relations a*b = 2 c*d;
    nilpotency 3;
  })";
  auto alg = to_algebra(parse(text), q);
  CHECK(alg.dim() == 9);
  // Same presentation over GF(101): the rational constants reduce to the
  // modular ones.
  auto mod = to_algebra(parse(text), PrimeField(101));
  REQUIRE(mod.dim() == alg.dim());
  CHECK(mod.labels() == alg.labels());
  const PrimeField f(101);
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j)
      for (std::size_t k = 0; k < alg.dim(); ++k) CHECK(f.from_rational(alg.constant(i, j, k)) == mod.constant(i, j, k));
}

TEST_CASE("serialize and parse round-trip") {
  auto run = [](const auto& f) {
    for (const auto& a : round_trip_set(f)) {
      INFO(a.name());
      const auto text = serialize(a);
      const auto doc = parse(text);
      CHECK(doc.name == a.name());
      CHECK(doc.field == f.spec());
      const auto b = to_algebra(doc, f);
      CHECK(b.same_structure(a));
      CHECK(b.labels() == a.labels());
      CHECK(b.unit() == a.unit());
      CHECK(serialize(b) == text);
    }
  };
  run(RationalField{});
  run(PrimeField(101));
  // serialize ∘ parse is idempotent on non-canonical input.
  const auto once = serialize(to_algebra(parse(kDualNumbers), RationalField{}));
  CHECK(serialize(to_algebra(parse(once), RationalField{})) == once);
}

TEST_CASE("serialization of M2 lists the eight non-zero products") {
  const auto text = serialize(zoo("M2", PrimeField(7)));
  std::size_t clauses = 0;
  for (std::size_t p = text.find("mult "); p != std::string::npos; p = text.find("mult ", p + 1)) ++clauses;
  CHECK(clauses == 8);
}

TEST_CASE("negative grammar cases carry positions") {
  const auto cases = grammar_cases();
  CHECK(cases.size() >= 20);
  for (const auto& c : cases) {
    INFO(c.text);
    const auto e = first_error(c.text);
    CHECK(e.code() == c.code);
    CHECK(e.span().line == c.line);
    CHECK(e.span().column == c.column);
    CHECK(e.span().begin <= c.text.size());
    CHECK_THROWS_AS(parse(c.text), ParseError);
  }
  auto malformed = first_error("algebra a over QQ { basis e1; mult e1*e1 = ; }");
  CHECK(malformed.expected() == std::vector<std::string>{"linear expression"});
}

TEST_CASE("recovery reports later statements too") {
  auto r = parse_document("algebra a over QQ {\n basis e;\n mult e*e = ;\n mult e*q = e;\n}");
  REQUIRE(r.errors.size() == 2);
  CHECK(r.errors[0].span().line == 3);
  CHECK(r.errors[1].span().line == 4);
  CHECK(r.errors[1].code() == ErrorCode::UnknownSymbol);
}

TEST_CASE("ideal closure budget") {
  // One vertex with three loops and nilpotency 12: 3^11 paths of the top length.
  const char* text = "quiver big over GF(101) { vertices v; arrow a: v -> v; arrow b: v -> v; arrow c: v -> v; nilpotency 12; }";
  try {
    to_algebra(parse(text), PrimeField(101));
    FAIL("expected IdealClosureOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdealClosureOverflow);
  }
}
