#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "angulab/cli/config.hpp"
#include "angulab/cli/report.hpp"
#include "angulab/oracle.hpp"

namespace angulab::cli {

/// Grid sizes for the oracle; a single --resolution sets every 1D count.
oracle::Resolution resolution_for(std::optional<int> resolution);

struct EntryResult {
  ordered_json results;  // array, one object per relation
  std::vector<CsvRow> rows;
};

/// Runs the named relations on one state, with the oracle alongside when asked.
EntryResult evaluate_entry(const State& state, const std::vector<std::string>& relation_names,
                           bool with_oracle, std::optional<int> resolution);

/// The scenario's effective parameters, as echoed in reports.
ordered_json scenario_params(const ScenarioConfig& config);

/// Full report document for one scenario.
ordered_json run_scenario(const ScenarioConfig& config);

/// The same scenario as CSV rows (header included).
std::string run_scenario_csv(const ScenarioConfig& config);

struct SweepConfig {
  ScenarioConfig base;
  /// "m", "n" or "l" with an inclusive range; empty for random sweeps.
  std::string range_param;
  int range_lo = 0;
  int range_hi = -1;
  /// Random sweeps: number of states, bandwidth (|m| or n bound; l for sphere).
  std::optional<int> random_count;
  int bandwidth = 4;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SweepOutput {
  ordered_json document;
  std::string csv;
};

/// Entries are evaluated on up to `jobs` threads; output order is the entry
/// index order regardless of completion order.
SweepOutput run_sweep(const SweepConfig& config);

/// "3" -> {3, 3}, "0..10" -> {0, 10}. Throws ConfigError.
std::pair<int, int> parse_range(const std::string& text);

std::string csv_header(bool with_oracle);

}  // namespace angulab::cli
