#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kaschlab/dsl.hpp"
#include "kaschlab/report.hpp"

namespace kaschlab {

/// One checked-in regression case. `expect` pins individual property
/// values; each carries a provenance note.
struct GoldenCase {
  std::string name;
  std::string algebra;
  std::string expected;
  std::optional<FieldSpec> field;
  Json expect = Json::object();
  std::map<std::string, std::string> provenance;
};

struct GoldenResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> diffs;
  double seconds = 0;
  std::optional<PropertyReport> report;
};

inline std::vector<GoldenCase> load_golden_manifest(const std::filesystem::path& root) {
  const auto path = root / "goldens" / "manifest.json";
  Json m;
  try {
    m = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  std::vector<GoldenCase> out;
  for (const auto& c : m.at("cases")) {
    GoldenCase g;
    g.name = c.at("name").get<std::string>();
    g.algebra = c.at("algebra").get<std::string>();
    g.expected = c.at("expected").get<std::string>();
    if (c.contains("field")) g.field = parse_field_spec(c["field"].get<std::string>());
    if (c.contains("expect")) g.expect = c["expect"];
    if (c.contains("provenance"))
      for (const auto& [k, v] : c["provenance"].items()) g.provenance[k] = v.get<std::string>();
    out.push_back(std::move(g));
  }
  return out;
}

namespace detail {

inline void json_diff(const Json& want, const Json& got, const std::string& path, std::vector<std::string>& out) {
  if (want.is_object() && got.is_object()) {
    for (const auto& [k, v] : want.items()) {
      if (!got.contains(k)) out.push_back(path + "/" + k + ": missing");
      else json_diff(v, got[k], path + "/" + k, out);
    }
    for (const auto& [k, v] : got.items())
      if (!want.contains(k)) out.push_back(path + "/" + k + ": unexpected " + v.dump());
    return;
  }
  if (want != got) out.push_back(path + ": expected " + want.dump() + ", got " + got.dump());
}

}  // namespace detail

/// Canonical golden rendering: no timing, source is the manifest path.
inline std::string canonical_report(const PropertyReport& r, const std::string& source, const std::string& text) {
  return report_json(r, {source, fnv1a_digest(text), {}}).dump(2) + "\n";
}

inline PropertyReport analyze_document(const AlgebraDocument& doc, std::optional<FieldSpec> field = std::nullopt) {
  return with_algebra(doc, [](auto a) { return analyze(share(std::move(a))); }, field);
}

/// Analyzes one case and diffs it against the checked-in report. With
/// `update` the expected file is rewritten instead.
inline GoldenResult run_golden(const GoldenCase& g, const std::filesystem::path& root, bool update = false) {
  GoldenResult res;
  res.name = g.name;
  const auto start = std::chrono::steady_clock::now();
  const auto text = read_file(root / g.algebra);
  auto report = analyze_document(parse(text), g.field);
  const auto rendered = canonical_report(report, g.algebra, text);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto got = Json::parse(rendered);
  for (const auto& [k, v] : g.expect.items()) {
    if (!g.provenance.contains(k)) res.diffs.push_back("expect/" + k + ": no provenance note");
    if (!got["properties"].contains(k)) res.diffs.push_back("expect/" + k + ": unknown property");
    else if (got["properties"][k] != v)
      res.diffs.push_back("expect/" + k + ": pinned " + v.dump() + ", got " + got["properties"][k].dump());
  }
  for (const auto& e : validate_report(got)) res.diffs.push_back("schema" + e);
  if (update) {
    write_file(root / g.expected, rendered);
  } else {
    std::string want_text;
    try {
      want_text = read_file(root / g.expected);
    } catch (const Error& e) {
      res.diffs.push_back(e.what());
    }
    if (!want_text.empty() && want_text != rendered) {
      std::vector<std::string> d;
      detail::json_diff(Json::parse(want_text), got, "", d);
      if (d.empty()) d.push_back("byte-level difference in formatting");
      res.diffs.insert(res.diffs.end(), d.begin(), d.end());
    }
  }
  res.report = std::move(report);
  res.pass = res.diffs.empty();
  return res;
}

inline std::vector<GoldenResult> run_goldens(const std::filesystem::path& root, bool update = false) {
  std::vector<GoldenResult> out;
  for (const auto& g : load_golden_manifest(root)) out.push_back(run_golden(g, root, update));
  return out;
}

}  // namespace kaschlab
