#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biderive/dme.hpp"
#include "biderive/parser.hpp"

namespace biderive {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSystemFormat = "biderive-system/1";
inline constexpr const char* kReportFormat = "biderive-report/1";

struct Config {
  std::uint32_t darboux_degree = 3;
  std::uint32_t constants_degree = 5;
  std::size_t core_cap = 6;
  int noether_retries = 8;
  std::uint64_t seed = 20260809;
  std::vector<std::string> rational_denominators;

  ordered_json to_json() const {
    ordered_json j;
    j["darboux_degree"] = darboux_degree;
    j["constants_degree"] = constants_degree;
    j["core_cap"] = core_cap;
    j["noether_retries"] = noether_retries;
    j["seed"] = seed;
    j["rational_denominators"] = rational_denominators;
    return j;
  }

  static Config from_json(const ordered_json& j) {
    Config c;
    if (j.contains("darboux_degree")) c.darboux_degree = j["darboux_degree"];
    if (j.contains("constants_degree"))
      c.constants_degree = j["constants_degree"];
    if (j.contains("core_cap")) c.core_cap = j["core_cap"];
    if (j.contains("noether_retries")) c.noether_retries = j["noether_retries"];
    if (j.contains("seed")) c.seed = j["seed"];
    if (j.contains("rational_denominators"))
      for (const auto& s : j["rational_denominators"])
        c.rational_denominators.push_back(s.get<std::string>());
    return c;
  }

  /// Resolution order: explicit path, then BIDERIVE_CONFIG, then defaults.
  static Config load(const std::string& explicit_path = "") {
    std::string path = explicit_path;
    if (path.empty()) {
      const char* env = std::getenv("BIDERIVE_CONFIG");
      if (env) path = env;
    }
    if (path.empty()) return Config{};
    std::ifstream in(path);
    if (!in) throw error("cannot open config file " + path);
    ordered_json j;
    in >> j;
    return from_json(j);
  }
};

/// A named system: bracket table plus the optional companion data carried
/// by the file format.
struct SystemDescription {
  std::string name;
  BracketTable table;
  std::map<std::string, std::map<std::string, std::string>> morphisms;
  std::optional<NoetherData> noether;
  std::vector<std::vector<std::string>> prime_witnesses;

  const AlgebraPtr& algebra() const { return table.algebra(); }
  const AmbientPtr& ambient() const { return table.ambient(); }

  IdealHandle parse_ideal(const std::vector<std::string>& gens) const {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(parse_polynomial(g, ambient()));
    return IdealHandle::from_generators(std::move(ps), ambient());
  }
};

inline SystemDescription load_system(const ordered_json& j) {
  if (!j.contains("format") || j["format"] != kSystemFormat)
    throw error(std::string("expected format ") + kSystemFormat);
  std::vector<std::string> vars;
  std::vector<std::string> scalars;
  for (const auto& v : j.at("variables")) {
    if (v.is_string()) {
      vars.push_back(v.get<std::string>());
    } else {
      vars.push_back(v.at("name").get<std::string>());
      if (v.value("base", false)) scalars.push_back(vars.back());
    }
  }
  MonomialOrder order = MonomialOrder::Degrevlex;
  if (j.value("order", "degrevlex") == std::string("lex"))
    order = MonomialOrder::Lex;
  AmbientPtr amb = Ambient::make(vars, order);

  std::vector<Polynomial> relations, inverted;
  if (j.contains("relations"))
    for (const auto& s : j["relations"])
      relations.push_back(parse_polynomial(s.get<std::string>(), amb));
  if (j.contains("inverted"))
    for (const auto& s : j["inverted"])
      inverted.push_back(parse_polynomial(s.get<std::string>(), amb));

  AlgebraOptions opts;
  if (j.contains("assertions"))
    opts.asserted_domain = j["assertions"].value("domain", false);
  AlgebraPtr alg = AlgebraPresentation::make(amb, scalars, std::move(relations),
                                             std::move(inverted), opts);

  std::vector<std::vector<RationalFunction>> entries(
      vars.size(),
      std::vector<RationalFunction>(vars.size(), RationalFunction::zero(amb)));
  if (j.contains("bracket")) {
    for (const auto& [key, val] : j["bracket"].items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw error("bracket keys must look like \"za,zb\": " + key);
      std::string a = key.substr(0, comma);
      std::string b = key.substr(comma + 1);
      entries[amb->index_or_throw(a)][amb->index_or_throw(b)] =
          parse_element(val.get<std::string>(), amb);
    }
  }

  SystemDescription sys{j.value("name", "unnamed"),
                        BracketTable::make(alg, std::move(entries)),
                        {},
                        std::nullopt,
                        {}};

  if (j.contains("morphisms"))
    for (const auto& [mname, imgs] : j["morphisms"].items())
      for (const auto& [var, img] : imgs.items())
        sys.morphisms[mname][var] = img.get<std::string>();

  if (j.contains("noether")) {
    NoetherData nd;
    const auto& n = j["noether"];
    if (n.contains("y"))
      for (const auto& s : n["y"]) nd.y_list.push_back(s.get<std::string>());
    if (n.contains("b"))
      for (const auto& s : n["b"]) nd.b_list.push_back(s.get<std::string>());
    nd.tvar = n.value("tvar", "_t");
    if (n.contains("minpolys")) {
      std::vector<std::string> pvars = vars;
      pvars.push_back(nd.tvar);
      AmbientPtr pamb = Ambient::make(pvars, order);
      for (const auto& s : n["minpolys"])
        nd.minpolys.push_back(parse_polynomial(s.get<std::string>(), pamb));
    }
    sys.noether = std::move(nd);
  }

  if (j.contains("assertions") && j["assertions"].contains("prime_witnesses"))
    for (const auto& w : j["assertions"]["prime_witnesses"]) {
      std::vector<std::string> gens;
      for (const auto& g : w) gens.push_back(g.get<std::string>());
      sys.prime_witnesses.push_back(std::move(gens));
    }
  return sys;
}

inline SystemDescription load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open system file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("invalid JSON in " + path + ": " + e.what());
  }
  return load_system(j);
}

inline ordered_json emit_system(const BracketTable& table,
                                const std::string& name) {
  const AlgebraPtr& alg = table.algebra();
  const AmbientPtr& amb = table.ambient();
  ordered_json j;
  j["format"] = kSystemFormat;
  j["name"] = name;
  ordered_json vars = ordered_json::array();
  for (std::size_t i = 0; i < amb->size(); ++i) {
    if (alg->is_scalar(i)) {
      vars.push_back({{"name", amb->var(i)}, {"base", true}});
    } else {
      vars.push_back(amb->var(i));
    }
  }
  j["variables"] = std::move(vars);
  j["order"] = order_name(amb->order());
  ordered_json rel = ordered_json::array();
  for (const auto& r : alg->relations()) rel.push_back(r.str());
  j["relations"] = std::move(rel);
  ordered_json inv = ordered_json::array();
  for (const auto& f : alg->inverted()) inv.push_back(f.str());
  j["inverted"] = std::move(inv);
  ordered_json bracket = ordered_json::object();
  for (std::size_t a = 0; a < amb->size(); ++a)
    for (std::size_t b = 0; b < amb->size(); ++b)
      if (!table.entry(a, b).is_zero())
        bracket[amb->var(a) + "," + amb->var(b)] = table.entry(a, b).str();
  j["bracket"] = std::move(bracket);
  ordered_json assertions;
  assertions["domain"] = alg->asserted_domain();
  j["assertions"] = std::move(assertions);
  return j;
}

// --- Reports ---------------------------------------------------------------

enum class OutcomeStatus { Pass, Fail, Partial };

inline std::string status_name(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::Pass: return "pass";
    case OutcomeStatus::Fail: return "fail";
    default: return "partial";
  }
}

struct Outcome {
  std::string check;
  OutcomeStatus status;
  std::vector<std::string> witnesses;
  std::string detail;
  std::string tag;
};

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

struct Report {
  std::string command;
  std::string inputs_digest;
  Config config;
  std::vector<Outcome> outcomes;
  ordered_json emitted;  // optional emitted system

  int exit_code() const {
    for (const auto& o : outcomes)
      if (o.status == OutcomeStatus::Fail) return 1;
    return 0;
  }

  void add(std::string check, bool passed, std::vector<std::string> wits = {},
           std::string detail = "", std::string tag = "") {
    outcomes.push_back({std::move(check),
                        passed ? OutcomeStatus::Pass : OutcomeStatus::Fail,
                        std::move(wits), std::move(detail), std::move(tag)});
  }

  void add_partial(std::string check, std::string detail, std::string tag = "") {
    outcomes.push_back({std::move(check), OutcomeStatus::Partial, {},
                        std::move(detail), std::move(tag)});
  }

  ordered_json to_json() const {
    ordered_json j;
    j["format"] = kReportFormat;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    j["config"] = config.to_json();
    ordered_json outs = ordered_json::array();
    for (const auto& o : outcomes) {
      ordered_json oj;
      oj["check"] = o.check;
      oj["status"] = status_name(o.status);
      oj["witness"] = o.witnesses;
      oj["detail"] = o.detail;
      oj["tag"] = o.tag;
      outs.push_back(std::move(oj));
    }
    j["outcomes"] = std::move(outs);
    if (!emitted.is_null()) j["emitted"] = emitted;
    j["exit_code"] = exit_code();
    return j;
  }

  /// The human output is a rendering of the JSON data, never its own code
  /// path.
  std::string render_human() const {
    ordered_json j = to_json();
    std::ostringstream out;
    out << "# " << j["command"].get<std::string>() << " (inputs "
        << j["inputs_digest"].get<std::string>() << ")\n";
    for (const auto& o : j["outcomes"]) {
      std::string status = o["status"].get<std::string>();
      std::string line = status == "pass"      ? "[PASS]"
                         : status == "fail"    ? "[FAIL]"
                                               : "[PART]";
      out << line << " " << o["check"].get<std::string>();
      std::string tag = o["tag"].get<std::string>();
      if (!tag.empty()) out << " (" << tag << ")";
      std::string detail = o["detail"].get<std::string>();
      if (!detail.empty()) out << ": " << detail;
      if (!o["witness"].empty()) {
        out << " [witness:";
        for (const auto& w : o["witness"]) out << " " << w.get<std::string>();
        out << "]";
      }
      out << "\n";
    }
    if (j.contains("emitted"))
      out << "-- emitted system --\n" << j["emitted"].dump(2) << "\n";
    out << "exit " << j["exit_code"].get<int>() << "\n";
    return out.str();
  }
};

inline std::string digest_inputs(const std::vector<std::string>& parts) {
  std::string all;
  for (const auto& p : parts) {
    all += p;
    all += '\0';
  }
  return "fnv1a:" + hex64(fnv1a(all));
}

}  // namespace biderive
