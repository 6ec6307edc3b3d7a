#include "angulab/cli/runner.hpp"

#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "angulab/operators.hpp"
#include "angulab/random_states.hpp"

namespace angulab::cli {

namespace {

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string csv_param(const ordered_json& params, const char* key) {
  if (!params.contains(key)) return {};
  const auto& v = params[key];
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  return {};
}

void append_rows(std::ostringstream& csv, std::size_t index, std::string_view family,
                 const ordered_json& params, const std::vector<CsvRow>& rows, bool with_oracle) {
  for (const CsvRow& r : rows) {
    csv << index << ',' << family << ',' << csv_param(params, "m") << ',' << csv_param(params, "n")
        << ',' << csv_param(params, "l") << ',' << csv_param(params, "J") << ','
        << csv_param(params, "omega") << ',' << csv_param(params, "hbar") << ',' << r.relation << ','
        << csv_field(r.lhs) << ',' << csv_field(r.rhs) << ',' << csv_field(r.slack) << ','
        << r.satisfied;
    if (with_oracle) csv << ',' << csv_field(r.oracle_delta);
    csv << '\n';
  }
}

}  // namespace

oracle::Resolution resolution_for(std::optional<int> resolution) {
  oracle::Resolution r;
  if (resolution) {
    r.circle_intervals = *resolution;
    r.line_intervals = *resolution;
    r.phi_intervals = *resolution;
  }
  return r;
}

EntryResult evaluate_entry(const State& state, const std::vector<std::string>& relation_names,
                           bool with_oracle, std::optional<int> resolution) {
  const SpectralEvaluator ev(state);
  std::optional<oracle::OracleEvaluator> oe;
  if (with_oracle) oe.emplace(state, resolution_for(resolution));

  EntryResult out;
  out.results = ordered_json::array();
  for (const std::string& name : relation_names) {
    const relations::Outcome s = relations::run_named(name, state, ev);
    ordered_json j = outcome_to_json(s);
    if (oe) {
      const relations::Outcome o = relations::run_named(name, state, *oe);
      ordered_json oj = outcome_to_json(o);
      if (!s.not_applicable && !o.not_applicable) {
        const Deviation d = compare_outcomes(s, o);
        oj["max_deviation"] = d.absolute;
        oj["max_relative_deviation"] = d.relative;
      }
      j["oracle"] = oj;
      const auto rows = csv_rows(s, &o);
      out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    } else {
      const auto rows = csv_rows(s);
      out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }
    out.results.push_back(j);
  }
  return out;
}

ordered_json scenario_params(const ScenarioConfig& c) {
  ordered_json p = ordered_json::object();
  if (c.m) p["m"] = *c.m;
  if (c.n) p["n"] = *c.n;
  if (c.l) p["l"] = *c.l;
  if (c.family == ScenarioFamily::Qtp) {
    p["J"] = c.inertia;
    p["omega"] = c.omega;
  }
  p["hbar"] = c.hbar;
  if (c.truncation) p["truncation"] = *c.truncation;
  return p;
}

ordered_json run_scenario(const ScenarioConfig& config) {
  const State state = build_state(config);
  const EntryResult r = evaluate_entry(state, config.relations, config.oracle, config.resolution);
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "scenario";
  doc["scenario"] = ordered_json{{"family", to_string(config.family)},
                                 {"params", scenario_params(config)},
                                 {"relations", config.relations},
                                 {"oracle", config.oracle}};
  if (config.resolution) doc["scenario"]["resolution"] = *config.resolution;
  doc["state"] = ordered_json::parse(state_to_json(state).dump());
  doc["results"] = r.results;
  return doc;
}

std::string run_scenario_csv(const ScenarioConfig& config) {
  const State state = build_state(config);
  const EntryResult r = evaluate_entry(state, config.relations, config.oracle, config.resolution);
  std::ostringstream csv;
  csv << csv_header(config.oracle);
  append_rows(csv, 0, to_string(config.family), scenario_params(config), r.rows, config.oracle);
  return csv.str();
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("'" + text + "' is not an integer or a range a..b");
    }
    if (used != s.size()) throw ConfigError("'" + text + "' is not an integer or a range a..b");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw ConfigError("empty range '" + text + "'");
  if (hi - lo > 100000) throw ConfigError("range '" + text + "' is too long");
  return {lo, hi};
}

std::string csv_header(bool with_oracle) {
  std::string h = "index,family,m,n,l,J,omega,hbar,relation,lhs,rhs,slack,satisfied";
  if (with_oracle) h += ",oracle_delta";
  return h + "\n";
}

SweepOutput run_sweep(const SweepConfig& sc) {
  const ScenarioConfig& base = sc.base;
  std::vector<State> states;
  std::vector<ordered_json> params;

  if (sc.random_count) {
    if (*sc.random_count < 0) throw ConfigError("--random must be nonnegative");
    if (base.family == ScenarioFamily::Custom) throw ConfigError("random sweeps need family scr, qtp or sphere");
    random::Rng rng(sc.seed);
    for (int i = 0; i < *sc.random_count; ++i) {
      ordered_json p = ordered_json::object();
      try {
        switch (base.family) {
          case ScenarioFamily::Scr:
            states.emplace_back(random::random_periodic(rng, sc.bandwidth, base.hbar));
            break;
          case ScenarioFamily::Qtp:
            states.emplace_back(
                random::random_oscillator(rng, sc.bandwidth, base.inertia, base.omega, base.hbar));
            p["J"] = base.inertia;
            p["omega"] = base.omega;
            break;
          default: {
            const int l = base.l.value_or(1);
            states.emplace_back(random::random_sphere(rng, l, base.hbar));
            p["l"] = l;
            break;
          }
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      p["hbar"] = base.hbar;
      params.push_back(p);
    }
  } else {
    if (sc.range_param.empty()) throw ConfigError("sweep needs a range (--m/--n/--l a..b) or --random N");
    for (int v = sc.range_lo; v <= sc.range_hi; ++v) {
      ScenarioConfig c = base;
      if (sc.range_param == "m") c.m = v;
      if (sc.range_param == "n") c.n = v;
      if (sc.range_param == "l") c.l = v;
      states.push_back(build_state(c));
      params.push_back(scenario_params(c));
    }
  }

  const std::size_t count = states.size();
  std::vector<EntryResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = evaluate_entry(states[i], base.relations, base.oracle, base.resolution);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(sc.jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepOutput out;
  ordered_json sweep = ordered_json::object();
  sweep["family"] = to_string(base.family);
  if (sc.random_count) {
    sweep["random"] = *sc.random_count;
    sweep["seed"] = sc.seed;
    sweep["bandwidth"] = sc.bandwidth;
  } else {
    sweep["param"] = sc.range_param;
    sweep["range"] = ordered_json::array({sc.range_lo, sc.range_hi});
  }
  sweep["relations"] = base.relations;
  sweep["oracle"] = base.oracle;
  if (base.resolution) sweep["resolution"] = *base.resolution;

  ordered_json entries = ordered_json::array();
  std::ostringstream csv;
  csv << csv_header(base.oracle);
  for (std::size_t i = 0; i < count; ++i) {
    entries.push_back(ordered_json{{"index", i},
                                   {"params", params[i]},
                                   {"state", ordered_json::parse(state_to_json(states[i]).dump())},
                                   {"results", results[i].results}});
    append_rows(csv, i, to_string(base.family), params[i], results[i].rows, base.oracle);
  }
  out.document = ordered_json{{"schema_version", kSchemaVersion},
                              {"kind", "sweep"},
                              {"sweep", sweep},
                              {"entries", entries}};
  out.csv = csv.str();
  return out;
}

}  // namespace angulab::cli
