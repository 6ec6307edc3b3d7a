#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "angulab/relations.hpp"

namespace angulab::cli {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_to_json(cplx z);
ordered_json report_to_json(const relations::RelationReport& r);
ordered_json mismatch_to_json(const relations::MismatchMatrix& m);
ordered_json outcome_to_json(const relations::Outcome& o);

/// Every real number an outcome carries, keyed by a stable path such as
/// "rsur.lhs" or "mismatch[0][1].im".
std::vector<std::pair<std::string, double>> numeric_leaves(const relations::Outcome& o);

struct Deviation {
  double absolute = 0.0;
  /// |a - b| / max(|a|, 1) with a the spectral value.
  double relative = 0.0;
  std::size_t compared = 0;
};

/// Largest disagreement over the quantities both outcomes carry.
Deviation compare_outcomes(const relations::Outcome& spectral, const relations::Outcome& oracle);

struct CsvRow {
  std::string relation;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> slack;
  std::string satisfied;
  std::optional<double> oracle_delta;
};

/// One row per relation report; outcomes without a report contribute one row
/// per named scalar ("moments:std_Phi", "condition19:max_modulus", ...) with the
/// value in lhs. Complex scalars appear as their modulus.
std::vector<CsvRow> csv_rows(const relations::Outcome& spectral,
                             const relations::Outcome* oracle = nullptr);

/// Shortest round-trip decimal text; identical on every run.
std::string format_number(double v);

}  // namespace angulab::cli
