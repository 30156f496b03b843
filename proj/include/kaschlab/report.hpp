#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kaschlab/corpus.hpp"
#include "kaschlab/properties.hpp"

namespace kaschlab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

inline std::string fnv1a_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "fnv1a64:" + std::string(buf);
}

/// Display label for each per-side property key, in rendering order.
inline const std::vector<std::pair<std::string, std::string>>& side_property_labels() {
  static const std::vector<std::pair<std::string, std::string>> labels{
      {"kasch", "Kasch"},
      {"dual_kasch", "dual Kasch"},
      {"strongly_dual_kasch", "strongly dual Kasch"},
      {"self_injective", "self-injective"},
      {"v_ring", "V-ring"},
      {"gv_ring", "GV-ring"},
      {"h_ring", "H-ring"},
      {"hereditary", "hereditary"},
      {"retractable_ER", "E(A) retractable"},
      {"coretractable_ER", "E(A) coretractable"},
      {"projective_ER", "E(A) projective"},
      {"max_projective_ER", "E(A) max-projective"},
  };
  return labels;
}

namespace detail {

inline Json witness_json(const Witness& w) {
  Json j;
  j["holds"] = w.holds;
  j["text"] = w.text;
  j["dims"] = w.dims;
  j["failing_class"] = w.failing_class ? Json(*w.failing_class + 1) : Json(nullptr);
  if (!w.matrices.empty()) j["matrices"] = w.matrices;
  return j;
}

inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace detail

struct ReportMeta {
  std::string input;
  std::string digest;
  /// Seconds per phase; omitted from canonical output when empty.
  std::vector<std::pair<std::string, double>> timing;
};

/// JSON rendering. Certificates are always included; timing only when
/// present in `meta`.
inline Json report_json(const PropertyReport& r, const ReportMeta& meta) {
  Json j;
  j["tool"] = {{"name", "kaschlab"}, {"version", std::string(kToolVersion)}};
  j["input"] = {{"source", meta.input}, {"digest", meta.digest}};
  j["algebra"] = {{"name", r.name},
                  {"field", r.field},
                  {"dim", r.dim},
                  {"classes", r.classes},
                  {"commutative", r.commutative},
                  {"simple_dims", r.simple_dims},
                  {"endo_dims", r.endo_dims},
                  {"cartan", r.cartan}};
  Json p;
  for (Side s : {Side::Right, Side::Left}) {
    const auto& x = r.side(s);
    const std::string suf = s == Side::Right ? "_right" : "_left";
    p["kasch" + suf] = x.kasch;
    p["dual_kasch" + suf] = x.dual_kasch;
    p["strongly_dual_kasch" + suf] = x.strongly_dual_kasch;
    p["self_injective" + suf] = x.self_injective;
    p["v_ring" + suf] = x.v_ring;
    p["gv_ring" + suf] = x.gv_ring;
    p["h_ring" + suf] = x.h_ring;
    p["hereditary" + suf] = x.hereditary;
    p["retractable_ER" + suf] = x.retractable_ER;
    p["coretractable_ER" + suf] = x.coretractable_ER;
    p["projective_ER" + suf] = x.projective_ER;
    p["max_projective_ER" + suf] = detail::optional_bool(x.max_projective_ER);
  }
  p["qf"] = r.qf;
  p["weakly_symmetric"] = r.weakly_symmetric;
  p["nakayama"] = r.nakayama ? Json(r.nakayama->map) : Json(nullptr);
  p["condition_c"] = detail::optional_bool(r.condition_c);
  j["properties"] = p;

  Json routes, agreement;
  for (Side s : {Side::Right, Side::Left}) {
    const auto& x = r.side(s);
    Json side;
    bool same = true;
    for (const auto& route : x.routes) {
      side[route.route] = detail::witness_json(route.witness);
      same = same && route.holds() == x.dual_kasch;
    }
    routes[s == Side::Right ? "right" : "left"] = side;
    agreement[s == Side::Right ? "right" : "left"] = same;
  }
  j["routes"] = routes;
  agreement["consistent"] = agreement["right"].get<bool>() && agreement["left"].get<bool>();
  j["agreement"] = agreement;

  Json structure;
  for (Side s : {Side::Right, Side::Left}) {
    const auto& x = r.side(s);
    structure[s == Side::Right ? "right" : "left"] = {{"simple_projective", x.simple_projective},
                                                       {"simple_injective", x.simple_injective},
                                                       {"hull_multiplicities", x.hull_multiplicities}};
  }
  j["modules"] = structure;

  Json certs = Json::object();
  for (const auto& [k, w] : r.certificates) certs[k] = detail::witness_json(w);
  if (r.nakayama) certs["nakayama"] = {{"map", r.nakayama->map}, {"socle_multiplicities", r.nakayama->witness}};
  j["certificates"] = certs;
  if (!meta.timing.empty()) {
    Json t = Json::object();
    for (const auto& [phase, secs] : meta.timing) t[phase] = secs;
    j["timing"] = t;
  }
  return j;
}

/// Human-readable table: one line per property and side. Witnesses are
/// printed for failures, and for successes too with `certificates`.
inline std::string report_text(const PropertyReport& r, const ReportMeta& meta, bool certificates = false,
                               std::optional<Side> only = std::nullopt) {
  std::string out = "algebra " + r.name + " over " + r.field + ", dim " + std::to_string(r.dim) + ", " +
                    std::to_string(r.classes) + " simple class" + (r.classes == 1 ? "" : "es") + "\n";
  if (!meta.input.empty()) out += "input: " + meta.input + " (" + meta.digest + ")\n";
  auto yes = [](bool b) { return b ? "YES" : "NO"; };
  const auto flags = r.booleans();
  for (const auto& [key, label] : side_property_labels())
    for (Side s : {Side::Right, Side::Left}) {
      if (only && *only != s) continue;
      const std::string side = s == Side::Right ? "right" : "left";
      const auto it = flags.find(key + "_" + side);
      out += label + " (" + side + "): ";
      if (it == flags.end()) {
        out += "n/a\n";
        continue;
      }
      out += yes(it->second);
      const auto cert = r.certificates.find(key + "_" + side);
      if (cert != r.certificates.end() && !cert->second.text.empty() && (!it->second || certificates))
        out += " — witness: " + cert->second.text;
      out += "\n";
    }
  for (Side s : {Side::Right, Side::Left}) {
    if (only && *only != s) continue;
    const auto& x = r.side(s);
    out += std::string("dual Kasch routes (") + (s == Side::Right ? "right" : "left") + "):";
    for (const auto& route : x.routes) out += " " + route.route + "=" + yes(route.holds());
    out += "\n";
    if (certificates)
      for (const auto& route : x.routes) {
        out += "  " + route.route + ": dims [";
        for (std::size_t i = 0; i < route.witness.dims.size(); ++i)
          out += (i ? "," : "") + std::to_string(route.witness.dims[i]);
        out += "]";
        if (!route.witness.text.empty()) out += " " + route.witness.text;
        out += "\n";
      }
  }
  out += std::string("QF: ") + yes(r.qf) + "\n";
  out += std::string("weakly symmetric: ") + yes(r.weakly_symmetric) + "\n";
  out += "Nakayama permutation: ";
  if (r.nakayama) {
    out += "[";
    for (std::size_t i = 0; i < r.nakayama->map.size(); ++i) out += (i ? "," : "") + std::to_string(r.nakayama->map[i]);
    out += "]\n";
  } else {
    out += "n/a\n";
  }
  out += std::string("commutative: ") + yes(r.commutative) + "\n";
  out += "condition (c): " + (r.condition_c ? std::string(yes(*r.condition_c)) : std::string("n/a")) + "\n";
  if (!meta.timing.empty()) {
    out += "timing:";
    for (const auto& [phase, secs] : meta.timing) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %s=%.3fs", phase.c_str(), secs);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

/// JSON Schema (draft 2020-12 subset) of the report document.
inline const std::string& report_schema_text() {
  static const std::string text = R"JSON({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://kaschlab.invalid/report.schema.json",
  "title": "kaschlab property report",
  "type": "object",
  "required": ["tool", "input", "algebra", "properties", "routes", "agreement", "modules", "certificates"],
  "additionalProperties": false,
  "properties": {
    "tool": {
      "type": "object",
      "required": ["name", "version"],
      "additionalProperties": false,
      "properties": {"name": {"type": "string", "enum": ["kaschlab"]}, "version": {"type": "string"}}
    },
    "input": {
      "type": "object",
      "required": ["source", "digest"],
      "additionalProperties": false,
      "properties": {"source": {"type": "string"}, "digest": {"type": "string"}}
    },
    "algebra": {
      "type": "object",
      "required": ["name", "field", "dim", "classes", "commutative", "simple_dims", "endo_dims", "cartan"],
      "additionalProperties": false,
      "properties": {
        "name": {"type": "string"},
        "field": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "classes": {"type": "integer", "minimum": 1},
        "commutative": {"type": "boolean"},
        "simple_dims": {"$ref": "#/$defs/counts"},
        "endo_dims": {"$ref": "#/$defs/counts"},
        "cartan": {"type": "array", "items": {"$ref": "#/$defs/counts"}}
      }
    },
    "properties": {
      "type": "object",
      "required": ["kasch_right", "kasch_left", "dual_kasch_right", "dual_kasch_left", "strongly_dual_kasch_right",
                   "strongly_dual_kasch_left", "self_injective_right", "self_injective_left", "v_ring_right", "v_ring_left",
                   "gv_ring_right", "gv_ring_left", "h_ring_right", "h_ring_left", "hereditary_right", "hereditary_left",
                   "retractable_ER_right", "retractable_ER_left", "coretractable_ER_right", "coretractable_ER_left",
                   "projective_ER_right", "projective_ER_left", "max_projective_ER_right", "max_projective_ER_left",
                   "qf", "weakly_symmetric", "nakayama", "condition_c"],
      "additionalProperties": false,
      "properties": {
        "kasch_right": {"type": "boolean"},
        "kasch_left": {"type": "boolean"},
        "dual_kasch_right": {"type": "boolean"},
        "dual_kasch_left": {"type": "boolean"},
        "strongly_dual_kasch_right": {"type": "boolean"},
        "strongly_dual_kasch_left": {"type": "boolean"},
        "self_injective_right": {"type": "boolean"},
        "self_injective_left": {"type": "boolean"},
        "v_ring_right": {"type": "boolean"},
        "v_ring_left": {"type": "boolean"},
        "gv_ring_right": {"type": "boolean"},
        "gv_ring_left": {"type": "boolean"},
        "h_ring_right": {"type": "boolean"},
        "h_ring_left": {"type": "boolean"},
        "hereditary_right": {"type": "boolean"},
        "hereditary_left": {"type": "boolean"},
        "retractable_ER_right": {"type": "boolean"},
        "retractable_ER_left": {"type": "boolean"},
        "coretractable_ER_right": {"type": "boolean"},
        "coretractable_ER_left": {"type": "boolean"},
        "projective_ER_right": {"type": "boolean"},
        "projective_ER_left": {"type": "boolean"},
        "max_projective_ER_right": {"type": ["boolean", "null"]},
        "max_projective_ER_left": {"type": ["boolean", "null"]},
        "qf": {"type": "boolean"},
        "weakly_symmetric": {"type": "boolean"},
        "nakayama": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer", "minimum": 1}}]},
        "condition_c": {"type": ["boolean", "null"]}
      }
    },
    "routes": {
      "type": "object",
      "required": ["right", "left"],
      "additionalProperties": false,
      "properties": {"right": {"$ref": "#/$defs/routes"}, "left": {"$ref": "#/$defs/routes"}}
    },
    "agreement": {
      "type": "object",
      "required": ["right", "left", "consistent"],
      "additionalProperties": false,
      "properties": {
        "right": {"type": "boolean"},
        "left": {"type": "boolean"},
        "consistent": {"type": "boolean", "enum": [true]}
      }
    },
    "modules": {
      "type": "object",
      "required": ["right", "left"],
      "additionalProperties": false,
      "properties": {"right": {"$ref": "#/$defs/side_modules"}, "left": {"$ref": "#/$defs/side_modules"}}
    },
    "certificates": {"type": "object", "additionalProperties": {"type": "object"}},
    "timing": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}}
  },
  "$defs": {
    "counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "flags": {"type": "array", "items": {"type": "boolean"}},
    "witness": {
      "type": "object",
      "required": ["holds", "text", "dims", "failing_class"],
      "properties": {
        "holds": {"type": "boolean"},
        "text": {"type": "string"},
        "dims": {"$ref": "#/$defs/counts"},
        "failing_class": {"type": ["integer", "null"]},
        "matrices": {"type": "array"}
      }
    },
    "routes": {
      "type": "object",
      "required": ["DK1", "DK2", "DK3", "DK4"],
      "additionalProperties": false,
      "properties": {
        "DK1": {"$ref": "#/$defs/witness"},
        "DK2": {"$ref": "#/$defs/witness"},
        "DK3": {"$ref": "#/$defs/witness"},
        "DK4": {"$ref": "#/$defs/witness"}
      }
    },
    "side_modules": {
      "type": "object",
      "required": ["simple_projective", "simple_injective", "hull_multiplicities"],
      "additionalProperties": false,
      "properties": {
        "simple_projective": {"$ref": "#/$defs/flags"},
        "simple_injective": {"$ref": "#/$defs/flags"},
        "hull_multiplicities": {"$ref": "#/$defs/counts"}
      }
    }
  }
}
)JSON";
  return text;
}

namespace detail {

inline bool json_has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

/// Validates the keywords used by the report schema: type, enum, minimum,
/// required, properties, additionalProperties, items, oneOf, $ref.
inline void validate_json(const Json& v, const Json& schema, const Json& root, const std::string& path,
                          std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    const auto ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    if (!ref.starts_with(prefix) || !root["$defs"].contains(ref.substr(prefix.size()))) {
      errors.push_back(path + ": unresolved $ref " + ref);
      return;
    }
    validate_json(v, root["$defs"][ref.substr(prefix.size())], root, path, errors);
    return;
  }
  if (schema.contains("type")) {
    bool ok = false;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) ok = ok || json_has_type(v, t.get<std::string>());
    } else {
      ok = json_has_type(v, schema["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + schema["type"].dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || e == v;
    if (!ok) errors.push_back(path + ": value not in enum");
  }
  if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
    errors.push_back(path + ": below minimum");
  if (schema.contains("oneOf")) {
    std::size_t matches = 0;
    for (const auto& s : schema["oneOf"]) {
      std::vector<std::string> sub;
      validate_json(v, s, root, path, sub);
      matches += sub.empty() ? 1 : 0;
    }
    if (matches != 1) errors.push_back(path + ": matches " + std::to_string(matches) + " oneOf branches");
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) errors.push_back(path + ": missing '" + k.get<std::string>() + "'");
    for (const auto& [k, item] : v.items()) {
      const std::string sub = path + "/" + k;
      if (schema.contains("properties") && schema["properties"].contains(k)) {
        validate_json(item, schema["properties"][k], root, sub, errors);
      } else if (schema.contains("additionalProperties")) {
        const auto& extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) errors.push_back(sub + ": unexpected property");
        } else {
          validate_json(item, extra, root, sub, errors);
        }
      }
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate_json(v[i], schema["items"], root, path + "/" + std::to_string(i), errors);
}

}  // namespace detail

/// Schema violations of a rendered report (empty when valid).
inline std::vector<std::string> validate_report(const Json& report) {
  static const Json schema = Json::parse(report_schema_text());
  std::vector<std::string> errors;
  detail::validate_json(report, schema, schema, "", errors);
  return errors;
}

/// Deterministic corpus summary: no timing, no job count, items in index
/// order.
inline Json corpus_summary_json(const CorpusSummary& s) {
  Json j;
  j["options"] = {{"count", s.options.count},
                  {"dim_max", s.options.dim_max},
                  {"field", s.options.field.to_string()},
                  {"seed", s.options.seed},
                  {"morita_dim_max", s.options.morita_dim_max}};
  std::size_t morita = 0;
  std::map<std::size_t, std::size_t> dims;
  std::map<std::string, std::size_t> counts;
  for (const auto& item : s.items) {
    morita += item.morita_checked ? 1 : 0;
    ++dims[item.dim];
    if (!item.report) continue;
    for (const auto& [k, v] : item.report->booleans()) counts[k] += v ? 1 : 0;
  }
  j["totals"] = {{"algebras", s.items.size()},
                 {"violations", s.violation_count()},
                 {"route_disagreements", s.route_disagreements()},
                 {"morita_checked", morita}};
  Json dj = Json::object();
  for (const auto& [d, n] : dims) dj[std::to_string(d)] = n;
  j["dimension_histogram"] = dj;
  Json cj = Json::object();
  for (const auto& [k, n] : counts) cj[k] = n;
  j["property_counts"] = cj;

  struct Separation {
    std::string label;
    std::function<bool(const PropertyReport&)> test;
  };
  const std::vector<Separation> separations{
      {"dual Kasch (right), not strongly dual Kasch (right)",
       [](const PropertyReport& r) { return r.right.dual_kasch && !r.right.strongly_dual_kasch; }},
      {"strongly dual Kasch (right), not V-ring (right)",
       [](const PropertyReport& r) { return r.right.strongly_dual_kasch && !r.right.v_ring; }},
      {"GV-ring (right), not V-ring (right)", [](const PropertyReport& r) { return r.right.gv_ring && !r.right.v_ring; }},
      {"dual Kasch (right), not self-injective (right)",
       [](const PropertyReport& r) { return r.right.dual_kasch && !r.right.self_injective; }},
      {"Kasch (right), not dual Kasch (right)", [](const PropertyReport& r) { return r.right.kasch && !r.right.dual_kasch; }},
      {"dual Kasch (right), not dual Kasch (left)",
       [](const PropertyReport& r) { return r.right.dual_kasch && !r.left.dual_kasch; }},
      {"QF, not weakly symmetric", [](const PropertyReport& r) { return r.qf && !r.weakly_symmetric; }},
  };
  Json sep = Json::object();
  for (const auto& x : separations) {
    Json names = Json::array();
    for (const auto& item : s.items)
      if (item.report && x.test(*item.report) && names.size() < 5) names.push_back(item.name);
    sep[x.label] = names;
  }
  j["separating_examples"] = sep;

  Json items = Json::array();
  Json failures = Json::array();
  for (const auto& item : s.items) {
    Json it = {{"index", item.index}, {"name", item.name}, {"dim", item.dim}, {"digest", fnv1a_digest(item.serialized)}};
    if (item.report) {
      Json props = Json::object();
      for (const auto& [k, v] : item.report->booleans()) props[k] = v;
      it["properties"] = props;
    }
    items.push_back(it);
    if (!item.violations.empty())
      failures.push_back({{"index", item.index},
                          {"name", item.name},
                          {"violations", item.violations},
                          {"route_disagreement", item.route_disagreement},
                          {"algebra", item.serialized}});
  }
  j["algebras"] = items;
  j["failures"] = failures;
  return j;
}

}  // namespace kaschlab
