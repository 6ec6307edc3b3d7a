#include "angulab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "angulab/relations.hpp"

namespace angulab::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {"schema_version", "family",   "params",
                                             "coefficients",   "coeffs_file", "state",
                                             "relations",      "resolution", "oracle",
                                             "format"};
const std::set<std::string> kParamKeys = {"m", "n", "l", "J", "omega", "hbar", "truncation"};

bool is_integer(const json& v) { return v.is_number_integer() || v.is_number_unsigned(); }

bool is_positive_number(const json& v) {
  return v.is_number() && std::isfinite(v.get<double>()) && v.get<double>() > 0.0;
}

// Checks a [[label, re, im], ...] array; appends problems to out.
void check_coefficients(const json& coeffs, const std::string& where, std::optional<int> l,
                        bool nonnegative, std::vector<std::string>& out) {
  if (!coeffs.is_array() || coeffs.empty()) {
    out.push_back(where + ": must be a non-empty array of [label, re, im] triples");
    return;
  }
  bool any_nonzero = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const json& c = coeffs[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!c.is_array() || c.size() != 3 || !is_integer(c[0]) || !c[1].is_number() ||
        !c[2].is_number()) {
      out.push_back(at + ": expected [integer label, real part, imaginary part]");
      continue;
    }
    const double re = c[1].get<double>();
    const double im = c[2].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      out.push_back(at + ": non-finite amplitude");
      continue;
    }
    any_nonzero = any_nonzero || re != 0.0 || im != 0.0;
    const long long label = c[0].get<long long>();
    if (l && std::llabs(label) > *l) {
      out.push_back(at + ": m = " + std::to_string(label) + " outside [-l, l] for l = " +
                    std::to_string(*l));
    }
    if (nonnegative && label < 0) {
      out.push_back(at + ": oscillator level n = " + std::to_string(label) + " is negative");
    }
  }
  if (!any_nonzero) out.push_back(where + ": all coefficients are zero");
}

std::map<int, cplx> coefficient_map(const json& coeffs) {
  std::map<int, cplx> out;
  for (const json& c : coeffs) out[c[0].get<int>()] += cplx{c[1].get<double>(), c[2].get<double>()};
  return out;
}

double param_or(const json& params, const char* key, double fallback) {
  if (params.is_object() && params.contains(key)) return params.at(key).get<double>();
  return fallback;
}

std::optional<int> int_param(const json& params, const char* key) {
  if (params.is_object() && params.contains(key)) return params.at(key).get<int>();
  return std::nullopt;
}

std::string family_of_document(const json& doc) {
  return doc.is_object() && doc.contains("family") && doc["family"].is_string()
             ? doc["family"].get<std::string>()
             : std::string{};
}

}  // namespace

std::string_view to_string(ScenarioFamily f) noexcept {
  switch (f) {
    case ScenarioFamily::Scr: return "scr";
    case ScenarioFamily::Qtp: return "qtp";
    case ScenarioFamily::Sphere: return "sphere";
    case ScenarioFamily::Custom: return "custom";
  }
  return "unknown";
}

std::optional<ScenarioFamily> parse_family(std::string_view name) noexcept {
  if (name == "scr") return ScenarioFamily::Scr;
  if (name == "qtp") return ScenarioFamily::Qtp;
  if (name == "sphere") return ScenarioFamily::Sphere;
  if (name == "custom") return ScenarioFamily::Custom;
  return std::nullopt;
}

std::vector<std::string> default_relations() { return relations::registry(); }

std::vector<std::string> parse_relation_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (!relations::is_registered(item)) throw ConfigError("unknown relation '" + item + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty relation list");
  return out;
}

std::vector<std::string> check_state_document(const json& doc) {
  std::vector<std::string> out;
  if (!doc.is_object()) return {"state document: expected a JSON object"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "family" && key != "params" && key != "coefficients") {
      out.push_back("state document: unknown key '" + key + "'");
    }
  }
  const std::string family = family_of_document(doc);
  if (family != "periodic" && family != "oscillator" && family != "sphere") {
    out.push_back("state document: 'family' must be one of periodic, oscillator, sphere");
    return out;
  }
  const json params = doc.value("params", json::object());
  if (!params.is_object()) {
    out.push_back("state document: 'params' must be an object");
    return out;
  }
  for (const auto& [key, value] : params.items()) {
    if (key == "hbar" || key == "J" || key == "omega") {
      if (!is_positive_number(value)) out.push_back("state document: params." + key + " must be positive");
    } else if (key == "truncation" || key == "l") {
      if (!is_integer(value) || value.get<long long>() < 0) {
        out.push_back("state document: params." + key + " must be a nonnegative integer");
      }
    } else {
      out.push_back("state document: unknown parameter '" + key + "'");
    }
  }
  std::optional<int> l;
  if (family == "sphere") {
    if (!params.contains("l") || !is_integer(params["l"])) {
      out.push_back("state document: missing parameter 'l' for family sphere");
    } else {
      l = params["l"].get<int>();
    }
  }
  if (!doc.contains("coefficients")) {
    out.push_back("state document: missing 'coefficients'");
  } else {
    check_coefficients(doc["coefficients"], "coefficients", l, family == "oscillator", out);
  }
  return out;
}

std::vector<std::string> check_config(const json& doc, const std::filesystem::path& base_dir) {
  std::vector<std::string> out;
  if (!doc.is_object()) return {"config: expected a JSON object"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kTopLevelKeys.contains(key)) out.push_back("unknown key '" + key + "'");
  }
  if (doc.contains("schema_version") &&
      (!is_integer(doc["schema_version"]) || doc["schema_version"].get<int>() != kSchemaVersion)) {
    out.push_back("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!doc.contains("family") || !doc["family"].is_string()) {
    out.push_back("missing parameter 'family'");
    return out;
  }
  const auto family = parse_family(doc["family"].get<std::string>());
  if (!family) {
    out.push_back("family '" + doc["family"].get<std::string>() +
                  "' is not one of scr, qtp, sphere, custom");
    return out;
  }

  const json params = doc.value("params", json::object());
  if (!params.is_object()) {
    out.push_back("'params' must be an object");
    return out;
  }
  for (const auto& [key, value] : params.items()) {
    if (!kParamKeys.contains(key)) {
      out.push_back("unknown parameter '" + key + "'");
    } else if (key == "J" || key == "omega" || key == "hbar") {
      if (!is_positive_number(value)) out.push_back("parameter '" + key + "' must be a positive number");
    } else if (!is_integer(value)) {
      out.push_back("parameter '" + key + "' must be an integer");
    } else if ((key == "n" || key == "l" || key == "truncation") && value.get<long long>() < 0) {
      out.push_back("parameter '" + key + "' must be nonnegative");
    }
  }
  const auto has = [&](const char* k) { return params.contains(k); };

  // The state may also come from inline coefficients or a separate file.
  std::optional<json> state_doc;
  if (doc.contains("state")) state_doc = doc["state"];
  if (doc.contains("coeffs_file")) {
    if (!doc["coeffs_file"].is_string()) {
      out.push_back("'coeffs_file' must be a path string");
    } else {
      std::filesystem::path p = doc["coeffs_file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      try {
        state_doc = read_json_file(p);
      } catch (const ConfigError& e) {
        out.push_back(e.what());
      }
    }
  }
  if (state_doc) {
    for (const std::string& d : check_state_document(*state_doc)) out.push_back(d);
    const std::string sf = family_of_document(*state_doc);
    const char* expected = *family == ScenarioFamily::Scr      ? "periodic"
                           : *family == ScenarioFamily::Qtp    ? "oscillator"
                           : *family == ScenarioFamily::Sphere ? "sphere"
                                                               : nullptr;
    if (expected && !sf.empty() && sf != expected) {
      out.push_back("state document family '" + sf + "' does not match scenario family '" +
                    std::string(to_string(*family)) + "'");
    }
  }

  const bool inline_coeffs = doc.contains("coefficients");
  std::optional<int> l;
  if (has("l") && is_integer(params["l"])) l = params["l"].get<int>();
  switch (*family) {
    case ScenarioFamily::Scr:
      if (!has("m") && !inline_coeffs && !state_doc) out.push_back("missing parameter 'm' for family scr");
      break;
    case ScenarioFamily::Qtp:
      if (!has("n") && !inline_coeffs && !state_doc) out.push_back("missing parameter 'n' for family qtp");
      if (!state_doc) {
        if (!has("J")) out.push_back("missing parameter 'J' for family qtp");
        if (!has("omega")) out.push_back("missing parameter 'omega' for family qtp");
      }
      break;
    case ScenarioFamily::Sphere:
      if (!state_doc) {
        if (!has("l")) out.push_back("missing parameter 'l' for family sphere");
        if (!has("m") && !inline_coeffs) {
          out.push_back("missing parameter 'm' or 'coefficients' for family sphere");
        }
        if (l && has("m") && is_integer(params["m"]) && std::abs(params["m"].get<int>()) > *l) {
          out.push_back("parameter 'm' = " + std::to_string(params["m"].get<int>()) +
                        " outside [-l, l] for l = " + std::to_string(*l));
        }
      }
      break;
    case ScenarioFamily::Custom:
      if (!state_doc) out.push_back("missing 'state' or 'coeffs_file' for family custom");
      break;
  }
  if (inline_coeffs) {
    if (*family == ScenarioFamily::Custom) {
      out.push_back("family custom takes its coefficients from 'state' or 'coeffs_file'");
    } else {
      check_coefficients(doc["coefficients"], "coefficients",
                         *family == ScenarioFamily::Sphere ? l : std::nullopt,
                         *family == ScenarioFamily::Qtp, out);
    }
  }
  if (inline_coeffs && state_doc) out.push_back("give either 'coefficients' or a state document, not both");

  if (doc.contains("relations")) {
    const json& r = doc["relations"];
    if (!r.is_array() || r.empty()) {
      out.push_back("'relations' must be a non-empty array of names");
    } else {
      for (const json& name : r) {
        if (!name.is_string() || !relations::is_registered(name.get<std::string>())) {
          out.push_back("unknown relation " + name.dump());
        }
      }
    }
  }
  if (doc.contains("resolution") &&
      (!is_integer(doc["resolution"]) || doc["resolution"].get<long long>() < 12 ||
       doc["resolution"].get<long long>() > (1 << 22))) {
    out.push_back("'resolution' must be an integer in [12, 4194304]");
  }
  if (doc.contains("oracle") && !doc["oracle"].is_boolean()) out.push_back("'oracle' must be true or false");
  if (doc.contains("format") &&
      (!doc["format"].is_string() || (doc["format"] != "json" && doc["format"] != "csv"))) {
    out.push_back("'format' must be \"json\" or \"csv\"");
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

ScenarioConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const std::vector<std::string> problems = check_config(doc, base_dir);
  if (!problems.empty()) throw ConfigError(problems.front());
  ScenarioConfig c;
  c.family = *parse_family(doc["family"].get<std::string>());
  const json params = doc.value("params", json::object());
  c.m = int_param(params, "m");
  c.n = int_param(params, "n");
  c.l = int_param(params, "l");
  c.truncation = int_param(params, "truncation");
  c.inertia = param_or(params, "J", 1.0);
  c.omega = param_or(params, "omega", 1.0);
  c.hbar = param_or(params, "hbar", 1.0);
  if (doc.contains("state")) {
    c.state_document = doc["state"];
  } else if (doc.contains("coeffs_file")) {
    std::filesystem::path p = doc["coeffs_file"].get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    c.state_document = read_json_file(p);
  } else if (doc.contains("coefficients")) {
    // Inline coefficients become a states document of the scenario's family.
    json sd;
    sd["family"] = c.family == ScenarioFamily::Scr   ? "periodic"
                   : c.family == ScenarioFamily::Qtp ? "oscillator"
                                                     : "sphere";
    json sp = json::object();
    sp["hbar"] = c.hbar;
    if (c.family == ScenarioFamily::Qtp) {
      sp["J"] = c.inertia;
      sp["omega"] = c.omega;
    }
    if (c.family == ScenarioFamily::Sphere) sp["l"] = *c.l;
    if (c.truncation && c.family != ScenarioFamily::Sphere) sp["truncation"] = *c.truncation;
    sd["params"] = sp;
    sd["coefficients"] = doc["coefficients"];
    c.state_document = sd;
  }
  c.relations = default_relations();
  if (doc.contains("relations")) c.relations = doc["relations"].get<std::vector<std::string>>();
  if (doc.contains("resolution")) c.resolution = doc["resolution"].get<int>();
  c.oracle = doc.value("oracle", false);
  c.format = doc.value("format", std::string("json"));
  return c;
}

std::vector<std::string> validate_config(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  return check_config(doc, path.parent_path());
}

State state_from_json(const json& doc) {
  const std::vector<std::string> problems = check_state_document(doc);
  if (!problems.empty()) throw ConfigError(problems.front());
  const std::string family = doc["family"].get<std::string>();
  const json params = doc.value("params", json::object());
  const double hbar = param_or(params, "hbar", 1.0);
  const int truncation = int_param(params, "truncation").value_or(0);
  const std::map<int, cplx> coeffs = coefficient_map(doc["coefficients"]);
  try {
    if (family == "periodic") return states::periodic_superposition(coeffs, hbar, truncation);
    if (family == "oscillator") {
      return states::oscillator_superposition(coeffs, param_or(params, "J", 1.0),
                                              param_or(params, "omega", 1.0), hbar, truncation);
    }
    return states::sphere_state(params["l"].get<int>(), coeffs, hbar);
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("state document: ") + e.what());
  } catch (const std::range_error& e) {
    throw ConfigError(std::string("state document: ") + e.what());
  }
}

json state_to_json(const State& state) {
  json doc;
  json params = json::object();
  json coeffs = json::array();
  const auto add = [&](const Coefficients& c) {
    for (int k = c.first_label; k <= c.last_label(); ++k) {
      const cplx v = c.at(k);
      if (v != cplx{}) coeffs.push_back(json::array({k, v.real(), v.imag()}));
    }
  };
  if (const auto* p = std::get_if<PeriodicState>(&state)) {
    doc["family"] = "periodic";
    params["hbar"] = p->hbar();
    params["truncation"] = p->truncation();
    add(p->coefficients());
  } else if (const auto* o = std::get_if<OscillatorState>(&state)) {
    doc["family"] = "oscillator";
    params["J"] = o->inertia();
    params["hbar"] = o->hbar();
    params["omega"] = o->omega();
    params["truncation"] = o->truncation();
    add(o->coefficients());
  } else {
    const auto& s = std::get<SphereState>(state);
    doc["family"] = "sphere";
    params["hbar"] = s.hbar();
    params["l"] = s.l();
    add(s.coefficients());
  }
  doc["params"] = params;
  doc["coefficients"] = coeffs;
  return doc;
}

State build_state(const ScenarioConfig& c) {
  if (c.state_document) return state_from_json(*c.state_document);
  try {
    switch (c.family) {
      case ScenarioFamily::Scr: {
        if (!c.m) throw ConfigError("missing parameter 'm' for family scr");
        const int M = c.truncation.value_or(std::max(kDefaultCircleTruncation, std::abs(*c.m)));
        return states::scr_eigenstate(*c.m, M, c.hbar);
      }
      case ScenarioFamily::Qtp: {
        if (!c.n) throw ConfigError("missing parameter 'n' for family qtp");
        const int N = c.truncation.value_or(std::max(kDefaultOscillatorTruncation, *c.n));
        return states::qtp_eigenstate(*c.n, c.inertia, c.omega, c.hbar, N);
      }
      case ScenarioFamily::Sphere: {
        if (!c.l) throw ConfigError("missing parameter 'l' for family sphere");
        if (!c.m) throw ConfigError("missing parameter 'm' or coefficients for family sphere");
        return states::sphere_state(*c.l, {{*c.m, 1.0}}, c.hbar);
      }
      case ScenarioFamily::Custom:
        throw ConfigError("family custom needs a coefficient file (--coeffs)");
    }
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  } catch (const std::range_error& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unhandled family");
}

}  // namespace angulab::cli
