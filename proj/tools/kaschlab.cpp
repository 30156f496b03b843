#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kaschlab/kaschlab.hpp"

namespace fs = std::filesystem;
using namespace kaschlab;

namespace {

enum Exit { Ok = 0, Internal = 1, InputError = 2, Inconsistent = 3, Unsupported = 4 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateBasisLabel:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::RelationInvariant:
    case ErrorCode::IdealClosureOverflow:
    case ErrorCode::NonUnitalResult:
    case ErrorCode::InvalidAlgebra:
    case ErrorCode::Io:
    case ErrorCode::UnknownBuilder:
    case ErrorCode::UnknownZooName:
    case ErrorCode::InvalidAction:
    case ErrorCode::InvalidField:
      return InputError;
    case ErrorCode::RouteDisagreement:
    case ErrorCode::InvariantViolation:
      return Inconsistent;
    case ErrorCode::UnsupportedField:
    case ErrorCode::UnsupportedCharacteristic:
    case ErrorCode::SplittingFailed:
      return Unsupported;
    default:
      return Internal;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct AnalyzeOptions {
  std::vector<std::string> paths;
  bool json = false;
  bool text = false;
  std::string side = "both";
  bool certificates = false;
  std::string field_override;
  bool no_timing = false;
};

int cmd_analyze(const AnalyzeOptions& o) {
  std::optional<FieldSpec> override_field;
  if (!o.field_override.empty()) override_field = parse_field_spec(o.field_override);
  std::optional<Side> only;
  if (o.side == "right") only = Side::Right;
  if (o.side == "left") only = Side::Left;
  std::vector<std::pair<PropertyReport, ReportMeta>> reports;
  for (const auto& path : o.paths) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto text = read_file(path);
    std::string serialized;
    try {
      const auto doc = parse(text);
      const double t_parse = seconds_since(t0);
      double t_structure = 0;
      auto t1 = std::chrono::steady_clock::now();
      auto report = with_algebra(
          doc,
          [&](auto a) {
            serialized = serialize(a);
            const auto st = structure(share(std::move(a)));
            t_structure = seconds_since(t1);
            t1 = std::chrono::steady_clock::now();
            return analyze(st);
          },
          override_field);
      ReportMeta meta{path, fnv1a_digest(text), {}};
      if (!o.no_timing) meta.timing = {{"parse", t_parse}, {"structure", t_structure}, {"properties", seconds_since(t1)}};
      const auto errors = validate_report(report_json(report, meta));
      if (!errors.empty()) fail(ErrorCode::InvariantViolation, "report fails the schema: " + errors.front());
      reports.emplace_back(std::move(report), std::move(meta));
    } catch (const Error& e) {
      std::cerr << path << ": " << e.what() << "\n";
      if (exit_code(e.code()) == Inconsistent && !serialized.empty()) std::cerr << "offending algebra:\n" << serialized;
      return exit_code(e.code());
    }
  }
  if (o.json) {
    if (reports.size() == 1) {
      std::cout << report_json(reports[0].first, reports[0].second).dump(2) << "\n";
    } else {
      Json all = Json::array();
      for (const auto& [r, m] : reports) all.push_back(report_json(r, m));
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i)
      std::cout << (i ? "\n" : "") << report_text(reports[i].first, reports[i].second, o.certificates, only);
  }
  return Ok;
}

std::string build_from_file(const std::string& path, const std::string& op, const std::vector<std::string>& args) {
  const auto doc = parse(read_file(path));
  return with_algebra(doc, [&](auto a) -> std::string {
    using F = std::decay_t<decltype(a.field())>;
    if (op == "opposite") return serialize(opposite(a));
    if (op == "amplify") {
      require(args.size() == 1, ErrorCode::UnknownBuilder, "amplify needs a size");
      return serialize(matrix_amplification(a, std::stoul(args[0])));
    }
    require(op == "skewgroup" || op == "fixed", ErrorCode::UnknownBuilder, "unknown builder '" + op + "'");
    require(args.size() == 1, ErrorCode::UnknownBuilder, op + " needs an action name");
    std::optional<GroupAction<F>> action;
    if (args[0] == "swap") action = GroupAction<F>::swap(a);
    else if (args[0] == "trivial2") action = GroupAction<F>::trivial(a, GroupTable::cyclic(2));
    else fail(ErrorCode::InvalidAction, "unknown action '" + args[0] + "' (expected swap or trivial2)");
    return serialize(op == "skewgroup" ? skew_group_algebra(a, *action) : fixed_ring(a, *action));
  });
}

/// Builder spec: `<builder> <args...> [over <field>]`.
std::string build(const std::vector<std::string>& spec) {
  require(!spec.empty(), ErrorCode::UnknownBuilder, "empty builder spec");
  std::vector<std::string> args(spec.begin() + 1, spec.end());
  FieldSpec field = FieldSpec::rationals();
  if (args.size() >= 2 && args[args.size() - 2] == "over") {
    field = parse_field_spec(args.back());
    args.resize(args.size() - 2);
  }
  const auto& b = spec[0];
  auto size_arg = [&]() -> std::size_t {
    require(args.size() == 1 && !args[0].empty() && args[0].find_first_not_of("0123456789") == std::string::npos,
            ErrorCode::UnknownBuilder, b + " needs one size argument");
    return std::stoul(args[0]);
  };
  if (b == "triangular" || b == "matrix" || b == "truncated" || b == "cyclic") {
    const auto n = size_arg();
    return visit_field(field, [&](const auto& f) {
      if (b == "triangular") return serialize(triangular_algebra(f, n));
      if (b == "matrix") return serialize(matrix_algebra(f, n));
      if (b == "truncated") return serialize(truncated_poly(f, n));
      return serialize(group_algebra(f, GroupTable::cyclic(n)));
    });
  }
  if (b == "zoo") {
    require(args.size() == 1, ErrorCode::UnknownBuilder, "zoo needs a name");
    return visit_field(field, [&](const auto& f) { return serialize(zoo(args[0], f)); });
  }
  if (b == "skewgroup" || b == "fixed" || b == "opposite" || b == "amplify") {
    require(!args.empty(), ErrorCode::UnknownBuilder, b + " needs an input file");
    return build_from_file(args[0], b, std::vector<std::string>(args.begin() + 1, args.end()));
  }
  if (b == "product") {
    require(args.size() == 2, ErrorCode::UnknownBuilder, "product needs two input files");
    const auto x = parse(read_file(args[0]));
    const auto y = parse(read_file(args[1]));
    require(x.field == y.field, ErrorCode::AlgebraMismatch, "product of algebras over different fields");
    return visit_field(x.field, [&](const auto& f) { return serialize(product(to_algebra(x, f), to_algebra(y, f))); });
  }
  fail(ErrorCode::UnknownBuilder, "unknown builder '" + b + "'");
}

int cmd_construct(const std::vector<std::string>& spec, const std::string& out, const std::string& name) {
  try {
    auto text = build(spec);
    if (!name.empty()) {
      const auto doc = parse(text);
      text = visit_field(doc.field, [&](const auto& f) {
        auto data = to_algebra(doc, f).data();
        data.name = name;
        return serialize(std::decay_t<decltype(to_algebra(doc, f))>(std::move(data)));
      });
    }
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return Ok;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  }
}

int cmd_corpus(CorpusOptions opt, const std::string& field, const std::string& out) {
  try {
    opt.field = parse_field_spec(field);
    const auto summary = run_corpus(opt);
    const auto text = corpus_summary_json(summary).dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    if (summary.violation_count() > 0) {
      for (const auto& item : summary.items)
        if (!item.violations.empty()) {
          std::cerr << item.name << ":\n";
          for (const auto& v : item.violations) std::cerr << "  " << v << "\n";
          std::cerr << item.serialized;
        }
      return Inconsistent;
    }
    return Ok;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  }
}

int cmd_goldens(const std::string& root, bool update) {
  try {
    int status = Ok;
    for (const auto& r : run_goldens(root, update)) {
      std::printf("%s %s (%.3fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
      for (const auto& d : r.diffs) std::printf("  %s\n", d.c_str());
      if (!r.pass) status = Inconsistent;
    }
    return status;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  }
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("KASCHLAB_JOBS")) {
    try {
      const auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kasch / dual Kasch decision engine for finite-dimensional algebras"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze .alg files");
  analyze_cmd->add_option("paths", ao.paths, "input files")->required();
  auto* json_flag = analyze_cmd->add_flag("--json", ao.json, "JSON report");
  analyze_cmd->add_flag("--text", ao.text, "text table (default)")->excludes(json_flag);
  analyze_cmd->add_option("--side", ao.side, "sides shown in text mode")->check(CLI::IsMember({"right", "left", "both"}));
  analyze_cmd->add_flag("--certificates", ao.certificates, "print witnesses in text mode");
  analyze_cmd->add_option("--field-override", ao.field_override, "reinterpret the input over QQ or GF(p)");
  analyze_cmd->add_flag("--no-timing", ao.no_timing, "omit timing");

  std::vector<std::string> spec;
  std::string construct_out;
  auto* construct_cmd = app.add_subcommand("construct", "build an algebra and write it as .alg");
  construct_cmd->add_option("spec", spec, "e.g. `triangular 3 over GF(7)`, `zoo R4 over QQ`, `skewgroup d.alg swap`")
      ->required();
  construct_cmd->add_option("-o,--output", construct_out, "output file (default stdout)");
  std::string construct_name;
  construct_cmd->add_option("--name", construct_name, "algebra name written to the file");

  CorpusOptions co;
  co.jobs = default_jobs();
  std::string corpus_field = "GF(101)";
  std::string corpus_out;
  auto* corpus_cmd = app.add_subcommand("corpus", "analyze seeded random quiver algebras and check invariants");
  corpus_cmd->add_option("--count", co.count, "number of algebras")->capture_default_str();
  corpus_cmd->add_option("--dim-max", co.dim_max, "maximum dimension")->capture_default_str();
  corpus_cmd->add_option("--field", corpus_field, "GF(p) with p > dim-max, or QQ")->capture_default_str();
  corpus_cmd->add_option("--seed", co.seed, "generator seed")->capture_default_str();
  corpus_cmd->add_option("--jobs", co.jobs, "worker threads (default KASCHLAB_JOBS or cores)")->check(CLI::PositiveNumber);
  corpus_cmd->add_option("--morita-dim-max", co.morita_dim_max, "amplification check up to this dimension")
      ->capture_default_str();
  corpus_cmd->add_option("-o,--output", corpus_out, "summary file (default stdout)");

  std::string root = ".";
  bool update = false;
  auto* goldens_cmd = app.add_subcommand("goldens", "re-run the golden reports");
  goldens_cmd->add_option("--root", root, "repository root")->capture_default_str();
  goldens_cmd->add_flag("--update", update, "rewrite the expected files");

  app.add_subcommand("schema", "print the report JSON schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : InputError;
  }
  try {
    if (*analyze_cmd) return cmd_analyze(ao);
    if (*construct_cmd) return cmd_construct(spec, construct_out, construct_name);
    if (*corpus_cmd) return cmd_corpus(co, corpus_field, corpus_out);
    if (*goldens_cmd) return cmd_goldens(root, update);
    std::cout << report_schema_text();
    return Ok;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
}
