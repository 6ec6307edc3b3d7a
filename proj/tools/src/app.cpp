#include "angulab/cli/app.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "angulab/cli/config.hpp"
#include "angulab/cli/runner.hpp"
#include "angulab/observable.hpp"

namespace angulab::cli {

namespace {

using json = nlohmann::json;

struct ParamFlags {
  std::string family;
  std::string m, n, l;  // ints for scenario, int-or-range for sweep
  double J = 1.0, omega = 1.0, hbar = 1.0;
  int truncation = 0;
  std::string coeffs;
  std::string relations;
  bool oracle = false;
  std::string format = "json";
  int resolution = 0;
  std::string config;

  CLI::Option* o_family = nullptr;
  CLI::Option* o_m = nullptr;
  CLI::Option* o_n = nullptr;
  CLI::Option* o_l = nullptr;
  CLI::Option* o_J = nullptr;
  CLI::Option* o_omega = nullptr;
  CLI::Option* o_hbar = nullptr;
  CLI::Option* o_truncation = nullptr;
  CLI::Option* o_relations = nullptr;
  CLI::Option* o_oracle = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_resolution = nullptr;
};

void add_param_flags(CLI::App* app, ParamFlags& f) {
  f.o_family = app->add_option("family", f.family, "scr, qtp, sphere or custom");
  f.o_m = app->add_option("--m", f.m, "Circle quantum number (sphere: m of a single-m state)");
  f.o_n = app->add_option("--n", f.n, "Oscillator level");
  f.o_l = app->add_option("--l", f.l, "Sphere degree");
  f.o_J = app->add_option("--J", f.J, "Moment of inertia");
  f.o_omega = app->add_option("--omega", f.omega, "Oscillator frequency");
  f.o_hbar = app->add_option("--hbar", f.hbar, "Reduced Planck constant");
  f.o_truncation = app->add_option("--truncation", f.truncation, "Basis truncation (|m| or n bound)");
  app->add_option("--coeffs", f.coeffs, "State document (JSON)");
  f.o_relations = app->add_option("--relations", f.relations, "Comma-separated relation names");
  f.o_oracle = app->add_flag("--oracle", f.oracle, "Cross-check with the quadrature oracle");
  f.o_format = app->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  f.o_resolution = app->add_option("--resolution", f.resolution, "Oracle grid intervals");
  app->add_option("--config", f.config, "Config file (JSON); flags override its values");
}

int parse_int(const std::string& text, const char* flag) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string(flag) + " expects an integer, got '" + text + "'");
}

std::string_view state_family_for(ScenarioFamily f) {
  switch (f) {
    case ScenarioFamily::Scr: return "periodic";
    case ScenarioFamily::Qtp: return "oscillator";
    case ScenarioFamily::Sphere: return "sphere";
    case ScenarioFamily::Custom: break;
  }
  return {};
}

// Config file first, flags on top. Integer parameters are parsed by the caller
// because sweeps accept ranges there.
ScenarioConfig base_config(const ParamFlags& f) {
  ScenarioConfig c;
  if (!f.config.empty()) {
    const std::filesystem::path path = f.config;
    c = config_from_json(read_json_file(path), path.parent_path());
  }
  if (f.o_family->count()) {
    const auto fam = parse_family(f.family);
    if (!fam) throw ConfigError("family '" + f.family + "' is not one of scr, qtp, sphere, custom");
    c.family = *fam;
  } else if (f.config.empty()) {
    throw ConfigError("missing family (scr, qtp, sphere or custom)");
  }
  if (f.o_J->count()) c.inertia = f.J;
  if (f.o_omega->count()) c.omega = f.omega;
  if (f.o_hbar->count()) c.hbar = f.hbar;
  if (!(c.inertia > 0) || !(c.omega > 0) || !(c.hbar > 0)) {
    throw ConfigError("J, omega and hbar must be positive");
  }
  if (f.o_truncation->count()) {
    if (f.truncation < 0) throw ConfigError("--truncation must be nonnegative");
    c.truncation = f.truncation;
  }
  if (f.o_relations->count()) c.relations = parse_relation_list(f.relations);
  if (c.relations.empty()) c.relations = default_relations();
  if (f.o_oracle->count()) c.oracle = f.oracle;
  if (f.o_format->count()) c.format = f.format;
  if (f.o_resolution->count()) {
    if (f.resolution < 12 || f.resolution > 4194304) throw ConfigError("--resolution must lie in [12, 4194304]");
    c.resolution = f.resolution;
  }
  if (!f.coeffs.empty()) {
    json doc = read_json_file(f.coeffs);
    const auto problems = check_state_document(doc);
    if (!problems.empty()) throw ConfigError(f.coeffs + ": " + problems.front());
    const std::string want{state_family_for(c.family)};
    if (!want.empty() && doc["family"].get<std::string>() != want) {
      throw ConfigError(f.coeffs + ": family '" + doc["family"].get<std::string>() + "' does not match scenario family '" +
                        std::string(to_string(c.family)) + "'");
    }
    c.state_document = std::move(doc);
  }
  if (c.family == ScenarioFamily::Custom && !c.state_document) {
    throw ConfigError("family custom needs a coefficient file (--coeffs)");
  }
  return c;
}

int run_scenario_cmd(const ParamFlags& f, std::ostream& out) {
  ScenarioConfig c = base_config(f);
  const bool explicit_params = f.o_m->count() || f.o_n->count() || f.o_l->count();
  if (f.o_m->count()) c.m = parse_int(f.m, "--m");
  if (f.o_n->count()) c.n = parse_int(f.n, "--n");
  if (f.o_l->count()) c.l = parse_int(f.l, "--l");
  if (explicit_params && f.coeffs.empty()) c.state_document.reset();
  if (c.format == "csv") {
    out << run_scenario_csv(c);
  } else {
    out << run_scenario(c).dump(2) << '\n';
  }
  return kExitOk;
}

int run_sweep_cmd(const ParamFlags& f, std::optional<int> random_count, int bandwidth, std::uint64_t seed,
                  int jobs, std::ostream& out) {
  SweepConfig s;
  s.base = base_config(f);
  s.base.state_document.reset();
  s.random_count = random_count;
  s.bandwidth = bandwidth;
  s.seed = seed;
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  s.jobs = jobs;
  if (bandwidth < 0) throw ConfigError("--bandwidth must be nonnegative");

  const auto take = [&](CLI::Option* opt, const std::string& text, const char* name, std::optional<int>& fixed) {
    if (!opt->count()) return;
    const auto [lo, hi] = parse_range(text);
    if (lo == hi) {
      fixed = lo;
      return;
    }
    if (!s.range_param.empty()) throw ConfigError("only one of --m/--n/--l may be a range");
    s.range_param = name;
    s.range_lo = lo;
    s.range_hi = hi;
  };
  take(f.o_m, f.m, "m", s.base.m);
  take(f.o_n, f.n, "n", s.base.n);
  take(f.o_l, f.l, "l", s.base.l);
  if (s.range_param.empty() && !random_count) {
    // A single-valued range is still a sweep of one entry.
    for (const auto& [opt, name] : {std::pair{f.o_m, "m"}, {f.o_n, "n"}, {f.o_l, "l"}}) {
      if (!opt->count()) continue;
      const bool matches = (s.base.family == ScenarioFamily::Scr && std::string(name) == "m") ||
                           (s.base.family == ScenarioFamily::Qtp && std::string(name) == "n") ||
                           (s.base.family == ScenarioFamily::Sphere && std::string(name) == "l");
      if (!matches) continue;
      s.range_param = name;
      s.range_lo = s.range_hi = *(name[0] == 'm' ? s.base.m : name[0] == 'n' ? s.base.n : s.base.l);
    }
  }
  if (s.range_param.empty() && !random_count) {
    throw ConfigError("sweep needs a range (--m/--n/--l a..b) or --random N");
  }
  if (s.base.family == ScenarioFamily::Custom) throw ConfigError("sweeps need family scr, qtp or sphere");

  const SweepOutput result = run_sweep(s);
  if (s.base.format == "csv") {
    out << result.csv;
  } else {
    out << result.document.dump(2) << '\n';
  }
  return kExitOk;
}

int run_validate_cmd(const std::string& path, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> problems = validate_config(path);
  if (problems.empty()) {
    out << path << ": ok\n";
    return kExitOk;
  }
  for (const auto& p : problems) err << path << ": " << p << '\n';
  return kExitConfig;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Angular momentum / angle uncertainty relations: spectral evaluation with a quadrature cross-check",
               "angulab"};
  app.require_subcommand(1);

  ParamFlags scenario_flags;
  CLI::App* scenario = app.add_subcommand("scenario", "Evaluate relations on one state");
  add_param_flags(scenario, scenario_flags);
  std::uint64_t scenario_seed = 0;
  int scenario_jobs = 1;
  scenario->add_option("--seed", scenario_seed, "Accepted for symmetry with sweep; scenarios are deterministic");
  scenario->add_option("--jobs", scenario_jobs, "Accepted for symmetry with sweep");

  ParamFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate relations over a parameter range or random states");
  add_param_flags(sweep, sweep_flags);
  int random_count = 0;
  int bandwidth = 4;
  std::uint64_t seed = 0;
  int jobs = 1;
  CLI::Option* o_random = sweep->add_option("--random", random_count, "Number of random states");
  sweep->add_option("--bandwidth", bandwidth, "Random states: |m| bound (scr) or level bound (qtp)");
  sweep->add_option("--seed", seed, "Random seed (64-bit unsigned)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("path", validate_path, "Config file")->required();

  CLI::App* schema = app.add_subcommand("schema", "Print the JSON schema for configs and reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (scenario->parsed()) return run_scenario_cmd(scenario_flags, out);
    if (sweep->parsed()) {
      std::optional<int> rc;
      if (o_random->count()) rc = random_count;
      return run_sweep_cmd(sweep_flags, rc, bandwidth, seed, jobs, out);
    }
    if (validate->parsed()) return run_validate_cmd(validate_path, out, err);
    if (schema->parsed()) {
      out << emit_schema().dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace angulab::cli
