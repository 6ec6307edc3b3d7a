#include "angulab/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace angulab::cli {

namespace {

ordered_json detail_to_json(const relations::Detail& d) {
  if (const double* v = std::get_if<double>(&d)) return *v;
  return complex_to_json(std::get<cplx>(d));
}

void add_detail_leaves(const std::string& prefix, const std::map<std::string, relations::Detail>& m,
                       std::vector<std::pair<std::string, double>>& out) {
  for (const auto& [key, value] : m) {
    if (const double* v = std::get_if<double>(&value)) {
      out.emplace_back(prefix + key, *v);
    } else {
      const cplx z = std::get<cplx>(value);
      out.emplace_back(prefix + key + ".re", z.real());
      out.emplace_back(prefix + key + ".im", z.imag());
    }
  }
}

double detail_magnitude(const relations::Detail& d) {
  if (const double* v = std::get_if<double>(&d)) return *v;
  return std::abs(std::get<cplx>(d));
}

}  // namespace

ordered_json complex_to_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

ordered_json report_to_json(const relations::RelationReport& r) {
  ordered_json details = ordered_json::object();
  for (const auto& [key, value] : r.details) details[key] = detail_to_json(value);
  return ordered_json{{"relation", r.relation}, {"lhs", r.lhs},
                      {"rhs", r.rhs},           {"slack", r.slack},
                      {"satisfied", r.satisfied}, {"tolerance", r.tolerance},
                      {"details", details}};
}

ordered_json mismatch_to_json(const relations::MismatchMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index j = 0; j < m.entries.rows(); ++j) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < m.entries.cols(); ++k) row.push_back(complex_to_json(m.entries(j, k)));
    rows.push_back(row);
  }
  return ordered_json{{"observables", m.observables}, {"entries", rows}, {"max_modulus", m.max_modulus}};
}

ordered_json outcome_to_json(const relations::Outcome& o) {
  ordered_json j;
  j["relation"] = o.relation;
  if (o.not_applicable) {
    j["status"] = "not-applicable";
    j["reason"] = *o.not_applicable;
    return j;
  }
  j["status"] = "ok";
  if (!o.reports.empty()) {
    ordered_json reports = ordered_json::array();
    for (const auto& r : o.reports) reports.push_back(report_to_json(r));
    j["reports"] = reports;
  }
  if (o.mismatch) j["mismatch"] = mismatch_to_json(*o.mismatch);
  if (o.decomposition) {
    const auto& d = *o.decomposition;
    j["decomposition"] = ordered_json{{"symmetric", d.symmetric},
                                      {"antisymmetric", d.antisymmetric},
                                      {"residual", d.residual},
                                      {"condition19_norm", d.condition19_norm},
                                      {"applicable", d.applicable}};
    if (!d.applicable) j["decomposition"]["diagnostic"] = d.diagnostic;
  }
  if (o.eq24) {
    j["eq24"] = ordered_json{{"direct_mismatch", complex_to_json(o.eq24->direct_mismatch)},
                             {"factored_formula", complex_to_json(o.eq24->factored_formula)},
                             {"discrepancy", o.eq24->discrepancy}};
  }
  if (!o.values.empty()) {
    ordered_json values = ordered_json::object();
    for (const auto& [key, value] : o.values) values[key] = detail_to_json(value);
    j["values"] = values;
  }
  return j;
}

std::vector<std::pair<std::string, double>> numeric_leaves(const relations::Outcome& o) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& r : o.reports) {
    out.emplace_back(r.relation + ".lhs", r.lhs);
    out.emplace_back(r.relation + ".rhs", r.rhs);
    out.emplace_back(r.relation + ".slack", r.slack);
    add_detail_leaves(r.relation + ".details.", r.details, out);
  }
  if (o.mismatch) {
    for (Eigen::Index j = 0; j < o.mismatch->entries.rows(); ++j) {
      for (Eigen::Index k = 0; k < o.mismatch->entries.cols(); ++k) {
        const std::string key = "mismatch[" + std::to_string(j) + "][" + std::to_string(k) + "]";
        out.emplace_back(key + ".re", o.mismatch->entries(j, k).real());
        out.emplace_back(key + ".im", o.mismatch->entries(j, k).imag());
      }
    }
    out.emplace_back("mismatch.max_modulus", o.mismatch->max_modulus);
  }
  if (o.decomposition) {
    out.emplace_back("decomposition.symmetric", o.decomposition->symmetric);
    out.emplace_back("decomposition.antisymmetric", o.decomposition->antisymmetric);
    out.emplace_back("decomposition.residual", o.decomposition->residual);
    out.emplace_back("decomposition.condition19_norm", o.decomposition->condition19_norm);
  }
  if (o.eq24) {
    out.emplace_back("eq24.direct_mismatch.re", o.eq24->direct_mismatch.real());
    out.emplace_back("eq24.direct_mismatch.im", o.eq24->direct_mismatch.imag());
    out.emplace_back("eq24.factored_formula.re", o.eq24->factored_formula.real());
    out.emplace_back("eq24.factored_formula.im", o.eq24->factored_formula.imag());
    out.emplace_back("eq24.discrepancy", o.eq24->discrepancy);
  }
  add_detail_leaves("values.", o.values, out);
  return out;
}

Deviation compare_outcomes(const relations::Outcome& spectral, const relations::Outcome& oracle) {
  const auto a = numeric_leaves(spectral);
  const auto b = numeric_leaves(oracle);
  std::map<std::string, double> other(b.begin(), b.end());
  Deviation d;
  for (const auto& [key, value] : a) {
    const auto it = other.find(key);
    if (it == other.end()) continue;
    const double diff = std::abs(value - it->second);
    d.absolute = std::max(d.absolute, diff);
    d.relative = std::max(d.relative, diff / std::max(std::abs(value), 1.0));
    ++d.compared;
  }
  return d;
}

std::vector<CsvRow> csv_rows(const relations::Outcome& spectral, const relations::Outcome* oracle) {
  std::vector<CsvRow> rows;
  if (spectral.not_applicable) {
    rows.push_back({spectral.relation, {}, {}, {}, "not-applicable", {}});
    return rows;
  }
  std::optional<double> delta;
  if (oracle && !oracle->not_applicable) delta = compare_outcomes(spectral, *oracle).absolute;

  for (const auto& r : spectral.reports) {
    rows.push_back({r.relation, r.lhs, r.rhs, r.slack, r.satisfied ? "true" : "false", delta});
  }
  if (!spectral.reports.empty()) return rows;

  const std::string p = spectral.relation + ":";
  if (spectral.mismatch && spectral.values.empty()) {
    rows.push_back({p + "max_modulus", spectral.mismatch->max_modulus, {}, {}, "", delta});
  }
  if (spectral.decomposition) {
    const auto& d = *spectral.decomposition;
    rows.push_back({p + "symmetric", d.symmetric, {}, {}, "", delta});
    rows.push_back({p + "antisymmetric", d.antisymmetric, {}, {}, "", delta});
    rows.push_back({p + "residual", d.residual, {}, {}, d.applicable ? "" : "not-applicable", delta});
  }
  if (spectral.eq24) {
    rows.push_back({p + "direct_mismatch", std::abs(spectral.eq24->direct_mismatch), {}, {}, "", delta});
    rows.push_back({p + "factored_formula", std::abs(spectral.eq24->factored_formula), {}, {}, "", delta});
    rows.push_back({p + "discrepancy", spectral.eq24->discrepancy, {}, {}, "", delta});
  }
  for (const auto& [key, value] : spectral.values) {
    rows.push_back({p + key, detail_magnitude(value), {}, {}, "", delta});
  }
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace angulab::cli
