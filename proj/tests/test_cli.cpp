#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "kaschlab/dsl.hpp"
#include "kaschlab/report.hpp"

using namespace kaschlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

/// Runs the CLI from the source root; stderr is discarded.
Run cli(const std::string& args) {
  const std::string cmd = "cd '" KASCHLAB_SOURCE_DIR "' && '" KASCHLAB_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "kaschlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("analyze --json on R4") {
  const auto r = cli("analyze algebras/R4.alg --json");
  REQUIRE(r.rc == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["properties"]["nakayama"] == Json::array({2, 1}));
  CHECK(j["properties"]["strongly_dual_kasch_right"] == false);
  CHECK(j.contains("timing"));
  CHECK(validate_report(j).empty());
  CHECK(j["input"]["digest"] == fnv1a_digest(read_file(KASCHLAB_SOURCE_DIR "/algebras/R4.alg")));
}

TEST_CASE("analyze text on T2") {
  const auto r = cli("analyze algebras/T2.alg");
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("dual Kasch (right): NO — witness: Hom(E(e2·A), S2) = 0") != std::string::npos);
  const auto right = cli("analyze algebras/T2.alg --side right");
  CHECK(right.out.find("(left)") == std::string::npos);
  const auto certs = cli("analyze algebras/T2.alg --certificates");
  CHECK(certs.out.find("DK3: dims [1,0]") != std::string::npos);
}

TEST_CASE("text and JSON from the CLI agree") {
  for (const auto* name : {"T3", "A5", "A5_op", "R4", "DxD_skew"}) {
    INFO(name);
    const auto j = Json::parse(cli(std::string("analyze algebras/") + name + ".alg --json").out);
    const auto t = cli(std::string("analyze algebras/") + name + ".alg --text").out;
    for (const auto& [key, label] : side_property_labels())
      for (const std::string side : {"right", "left"}) {
        const auto v = j["properties"][key + "_" + side];
        const auto expected = label + " (" + side + "): " + (v.is_null() ? "n/a" : v.get<bool>() ? "YES" : "NO");
        CHECK(t.find(expected) != std::string::npos);
      }
    CHECK(t.find(std::string("QF: ") + (j["properties"]["qf"].get<bool>() ? "YES" : "NO")) != std::string::npos);
  }
}

TEST_CASE("field override and multiple inputs") {
  const auto r = cli("analyze algebras/A5.alg algebras/T2.alg --json --field-override 'GF(101)'");
  REQUIRE(r.rc == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["algebra"]["field"] == "GF(101)");
  CHECK(j[0]["properties"]["max_projective_ER_right"].is_boolean());
}

TEST_CASE("analyze exit codes") {
  CHECK(cli("analyze nonexistent.alg").rc == 2);
  const auto bad = scratch("bad.alg");
  write_file(bad, "algebra a over QQ { basis e; mult e*e = ; }");
  const auto r = cli("analyze '" + bad.string() + "' --json");
  CHECK(r.rc == 2);
  CHECK(r.out.empty());
  const auto nonsplit = scratch("c3.alg");
  CHECK(cli("construct cyclic 3 over QQ -o '" + nonsplit.string() + "'").rc == 0);
  CHECK(cli("analyze '" + nonsplit.string() + "'").rc == 4);
  CHECK(cli("analyze algebras/T2.alg --field-override 'GF(6)'").rc == 2);
}

TEST_CASE("construct") {
  const auto t2 = cli("construct triangular 2 over QQ");
  REQUIRE(t2.rc == 0);
  CHECK(t2.out == read_file(KASCHLAB_SOURCE_DIR "/algebras/T2.alg"));
  CHECK(cli("construct zoo R4 over QQ").out == read_file(KASCHLAB_SOURCE_DIR "/algebras/R4.alg"));

  const auto a5 = scratch("a5.alg");
  REQUIRE(cli("construct zoo A5 over 'GF(5)' -o '" + a5.string() + "'").rc == 0);
  const auto j = Json::parse(cli("analyze '" + a5.string() + "' --json").out);
  CHECK(j["properties"]["kasch_right"] == true);
  CHECK(j["properties"]["kasch_left"] == false);
  CHECK(j["properties"]["dual_kasch_left"] == true);
  CHECK(j["properties"]["dual_kasch_right"] == false);

  const auto rg = scratch("rg.alg");
  REQUIRE(cli("construct skewgroup algebras/DxD.alg swap -o '" + rg.string() + "'").rc == 0);
  CHECK(Json::parse(cli("analyze '" + rg.string() + "' --json").out)["properties"]["dual_kasch_right"] == true);

  CHECK(cli("construct frobnicate 3 over QQ").rc == 2);
  CHECK(cli("construct zoo Q9 over QQ").rc == 2);
  CHECK(cli("construct skewgroup algebras/DxD.alg rotate").rc == 2);
  CHECK(cli("construct skewgroup algebras/T3.alg swap").rc == 2);
}

TEST_CASE("corpus command") {
  const auto a = cli("corpus --count 1 --seed 1");
  const auto b = cli("corpus --count 1 --seed 1 --jobs 1");
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);
  const auto j = Json::parse(a.out);
  CHECK(j["totals"]["violations"] == 0);
  CHECK(j["algebras"].size() == 1);
  CHECK(cli("corpus --field 'GF(5)' --dim-max 12").rc == 4);
  CHECK(cli("corpus --count 3 --seed 9 --jobs 2").out == cli("corpus --count 3 --seed 9 --jobs 1").out);
}

TEST_CASE("goldens and schema commands") {
  const auto g = cli("goldens");
  CHECK(g.rc == 0);
  CHECK(g.out.find("FAIL") == std::string::npos);
  CHECK(cli("schema").out == report_schema_text());
}
