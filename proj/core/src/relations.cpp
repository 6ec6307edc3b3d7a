#include "angulab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "angulab/operators.hpp"
#include "angulab/oracle.hpp"

namespace angulab::relations {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kEntitlementThreshold = 1e-8;

double resolve(const Evaluator& ev, std::optional<double> tolerance) {
  return tolerance ? *tolerance : default_tolerance(ev);
}

void require_family(const Evaluator& ev, Family family, const char* relation) {
  if (ev.family() != family) {
    throw NotApplicable(std::string(relation) + " is defined for " +
                        std::string(family_name(family)) + " states only");
  }
}

}  // namespace

RelationReport RelationReport::make(std::string relation, double lhs, double rhs, double tolerance) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    throw NumericalError(relation + ": non-finite side");
  }
  RelationReport r;
  r.relation = std::move(relation);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tolerance = tolerance;
  r.satisfied = r.slack >= -tolerance;
  return r;
}

double default_tolerance(const Evaluator& ev) { return std::max(1e-10, ev.hermitian_tolerance()); }

RelationReport csf(const Evaluator& ev, const Observable& a, const Observable& b,
                   std::optional<double> tolerance) {
  const double da = ev.std_dev(a);
  const double db = ev.std_dev(b);
  const cplx cov = ev.deviation_inner(a, b);
  RelationReport r = RelationReport::make("csf", da * db, std::abs(cov), resolve(ev, tolerance));
  r.details["std_" + a.label()] = da;
  r.details["std_" + b.label()] = db;
  r.details["deviation_inner"] = cov;
  return r;
}

MismatchMatrix condition19(const Evaluator& ev, const std::vector<Observable>& observables) {
  const auto n = static_cast<Eigen::Index>(observables.size());
  MismatchMatrix mm;
  mm.entries = Eigen::MatrixXcd::Zero(n, n);
  for (const Observable& o : observables) mm.observables.push_back(o.label());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Observable& aj = observables[static_cast<std::size_t>(j)];
      const Observable& ak = observables[static_cast<std::size_t>(k)];
      mm.entries(j, k) = ev.cross(aj, ak) - ev.compose(aj, ak);
      mm.max_modulus = std::max(mm.max_modulus, std::abs(mm.entries(j, k)));
    }
  }
  return mm;
}

MismatchMatrix condition19(const Evaluator& ev, const Observable& a, const Observable& b) {
  return condition19(ev, std::vector<Observable>{a, b});
}

RelationReport rsur(const Evaluator& ev, const Observable& a, const Observable& b,
                    std::optional<double> tolerance) {
  const double da = ev.std_dev(a);
  const double db = ev.std_dev(b);
  const cplx commutator = ev.compose(a, b) - ev.compose(b, a);
  const MismatchMatrix mm = condition19(ev, a, b);
  RelationReport r =
      RelationReport::make("rsur", da * db, 0.5 * std::abs(commutator), resolve(ev, tolerance));
  r.details["std_" + a.label()] = da;
  r.details["std_" + b.label()] = db;
  r.details["commutator_mean"] = commutator;
  r.details["condition19_norm"] = mm.max_modulus;
  if (mm.max_modulus < kEntitlementThreshold) {
    r.details["commutator_from_deviations"] = 2.0 * kI * ev.deviation_inner(a, b).imag();
  }
  return r;
}

Decomposition decomposition(const Evaluator& ev, const Observable& a, const Observable& b,
                            double threshold) {
  Decomposition d;
  d.condition19_norm = condition19(ev, a, b).max_modulus;
  const cplx cov = ev.deviation_inner(a, b);
  d.symmetric = cov.real();
  d.antisymmetric = cov.imag();
  // (psi, dA dB psi) = (psi, AB psi) - <A><B> = half anticommutator + half commutator
  const cplx ma = ev.expectation(a);
  const cplx mb = ev.expectation(b);
  const cplx ab = ev.compose(a, b);
  const cplx ba = ev.compose(b, a);
  const cplx anti = ab + ba - 2.0 * ma * mb;
  const cplx comm = ab - ba;
  d.residual = std::abs(cov - (0.5 * anti + 0.5 * comm));
  d.applicable = d.condition19_norm < threshold;
  if (!d.applicable) {
    d.diagnostic = "condition19 norm " + std::to_string(d.condition19_norm) + " exceeds threshold " +
                   std::to_string(threshold);
  }
  return d;
}

std::vector<RelationReport> boundary_bound(const Evaluator& ev, bool single_modulus,
                                           std::optional<double> tolerance) {
  require_family(ev, Family::Periodic, "boundary bound");
  const std::optional<cplx> edge = ev.boundary_value();
  if (!edge) throw NotApplicable("boundary bound: evaluator has no boundary value");
  const double B = single_modulus ? std::abs(*edge) : std::norm(*edge);
  const double rhs = 0.5 * ev.hbar() * std::abs(1.0 - 2.0 * kPi * B);
  const double tol = resolve(ev, tolerance);
  const Observable L = Observable::lz();
  const Observable P = Observable::phi();
  const cplx cov = ev.deviation_inner(L, P);
  const double dl = ev.std_dev(L);
  const double dp = ev.std_dev(P);

  RelationReport inner = RelationReport::make("boundary-inner", std::abs(cov), rhs, tol);
  inner.details["boundary_value"] = *edge;
  inner.details["B"] = B;
  inner.details["deviation_inner"] = cov;
  RelationReport product = RelationReport::make("boundary-product", dl * dp, rhs, tol);
  product.details["boundary_value"] = *edge;
  product.details["B"] = B;
  product.details["std_Lz"] = dl;
  product.details["std_Phi"] = dp;
  return {inner, product};
}

AdjustedSpec AdjustedSpec::eq8_sin() {
  AdjustedSpec s;
  s.name = "eq8-sin";
  s.form = AdjustedForm::Product;
  s.f = AngularFunction::sin_phi();
  s.g = AngularFunction::cos_phi() * cplx{0.5};
  return s;
}

AdjustedSpec AdjustedSpec::eq8_cos() {
  AdjustedSpec s;
  s.name = "eq8-cos";
  s.form = AdjustedForm::Product;
  s.f = AngularFunction::cos_phi();
  s.g = AngularFunction::sin_phi() * cplx{0.5};
  return s;
}

AdjustedSpec AdjustedSpec::eq9_trig() {
  AdjustedSpec s;
  s.name = "eq9-trig";
  s.form = AdjustedForm::Sum;
  s.u = AngularFunction::sin_phi();
  s.v = AngularFunction::cos_phi();
  return s;
}

RelationReport adjusted_relation(const Evaluator& ev, const AdjustedSpec& spec,
                                 std::optional<double> tolerance) {
  const double tol = resolve(ev, tolerance);
  const double hbar = ev.hbar();
  const Observable L = Observable::lz();
  const double dl = ev.std_dev(L);
  const std::string name = spec.name.empty() ? "adjusted" : spec.name;

  switch (spec.form) {
    case AdjustedForm::Ratio: {
      if (!spec.a || spec.b.is_zero()) {
        throw std::invalid_argument(name + ": ratio form needs both a(Delta phi) and b(phi)");
      }
      const double dp = ev.std_dev(Observable::phi());
      const double scale = spec.a(dp);
      if (!std::isfinite(scale) || scale <= 0.0) {
        throw std::invalid_argument(name + ": a(Delta phi) must be positive and finite");
      }
      const cplx mb = ev.expectation(Observable::multiplication("b", spec.b));
      RelationReport r = RelationReport::make(name, dl * dp / scale, hbar * std::abs(mb), tol);
      r.details["std_Lz"] = dl;
      r.details["std_Phi"] = dp;
      r.details["a"] = scale;
      r.details["mean_b"] = mb;
      return r;
    }
    case AdjustedForm::Product: {
      if (spec.f.is_zero() || spec.g.is_zero()) {
        throw std::invalid_argument(name + ": product form needs f(phi) and g(phi)");
      }
      if (!spec.f.is_real()) throw std::invalid_argument(name + ": f must be real-valued");
      const double df = ev.std_dev(Observable::multiplication("f", spec.f));
      const cplx mg = ev.expectation(Observable::multiplication("g", spec.g));
      RelationReport r = RelationReport::make(name, dl * df, hbar * std::abs(mg), tol);
      r.details["std_Lz"] = dl;
      r.details["std_f"] = df;
      r.details["mean_g"] = mg;
      return r;
    }
    case AdjustedForm::Sum: {
      if (spec.u.is_zero() || spec.v.is_zero()) {
        throw std::invalid_argument(name + ": sum form needs u(phi) and v(phi)");
      }
      if (!spec.u.is_real()) throw std::invalid_argument(name + ": u must be real-valued");
      if (!spec.v.is_real()) throw std::invalid_argument(name + ": v must be real-valued");
      const double du = ev.std_dev(Observable::multiplication("u", spec.u));
      const double mv = ev.mean(Observable::multiplication("v", spec.v));
      RelationReport r =
          RelationReport::make(name, dl * dl + hbar * hbar * du * du, hbar * hbar * mv * mv, tol);
      r.details["std_Lz"] = dl;
      r.details["std_u"] = du;
      r.details["mean_v"] = mv;
      return r;
    }
  }
  throw std::logic_error("unhandled adjusted form");
}

RelationReport gram_det(const Evaluator& ev, const std::vector<Observable>& observables,
                        double tolerance) {
  if (observables.size() < 2) throw std::invalid_argument("gram_det: needs at least two observables");
  const auto n = static_cast<Eigen::Index>(observables.size());
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      G(j, k) = ev.deviation_inner(observables[static_cast<std::size_t>(j)],
                                   observables[static_cast<std::size_t>(k)]);
    }
  }
  const cplx det = G.determinant();
  double scale = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) scale *= std::max(1.0, std::abs(G(j, j)));
  if (std::abs(det.imag()) > 1e-10 * scale) {
    throw NumericalError("gram_det: determinant has imaginary residue " + std::to_string(det.imag()));
  }
  const Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();

  RelationReport r = RelationReport::make("gram", det.real(), 0.0, tolerance);
  r.details["min_eigenvalue"] = min_eig;
  r.details["det_imag"] = det.imag();
  r.details["rank"] = static_cast<double>(n);
  return r;
}

Eq24Result scenario_eq24(const Evaluator& ev) {
  require_family(ev, Family::Sphere, "eq24");
  const Observable L = Observable::lz();
  const Observable P = Observable::phi();
  Eq24Result r;
  r.direct_mismatch = ev.cross(L, P) - ev.compose(L, P);
  // (L psi, phi psi) is exactly the double sum sum c_m^* c_r hbar m (Y_lm, phi Y_lr)
  const cplx S = ev.cross(L, P);
  r.factored_formula = kI * ev.hbar() * (1.0 + 2.0 * S.imag());
  r.discrepancy = std::abs(r.direct_mismatch - r.factored_formula);
  return r;
}

AnnulmentSearch find_annulling_sphere_state(double hbar) {
  const auto make = [hbar](double s) {
    const double mid = std::sqrt(std::max(0.0, 1.0 - 2.0 * s * s));
    return states::sphere_state(1, {{-1, s}, {0, mid}, {1, s}}, hbar);
  };
  const auto mismatch = [&](double s) {
    const SpectralEvaluator ev(make(s));
    return ev.cross(Observable::lz(), Observable::phi()) -
           ev.compose(Observable::lz(), Observable::phi());
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0 / std::sqrt(2.0);
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = std::abs(mismatch(x1));
  double f2 = std::abs(mismatch(x2));
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = std::abs(mismatch(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = std::abs(mismatch(x2));
    }
  }
  // The minimum may sit on the bracket's edge; compare the ends as well.
  double best = f1 < f2 ? x1 : x2;
  for (double s : {lo, hi}) {
    if (std::abs(mismatch(s)) < std::abs(mismatch(best))) best = s;
  }
  return {best, make(best), mismatch(best)};
}

// ---------------------------------------------------------------- registry

const std::vector<std::string>& registry() {
  static const std::vector<std::string> names = {
      "csf",     "rsur",     "condition19", "decomposition", "boundary", "gram",    "eq8-sin",
      "eq8-cos", "eq9-trig", "eq22",        "eq23",          "eq24",     "moments", "commutator"};
  return names;
}

bool is_registered(const std::string& name) {
  const auto& r = registry();
  return std::find(r.begin(), r.end(), name) != r.end();
}

Outcome run_named(const std::string& name, const State& state, const Evaluator& ev,
                  const RunOptions& options) {
  if (!is_registered(name)) throw std::invalid_argument("unknown relation: " + name);
  const Observable A = options.a.value_or(Observable::lz());
  const Observable B = options.b.value_or(Observable::phi());
  Outcome out;
  out.relation = name;
  try {
    if (name == "csf") {
      out.reports.push_back(csf(ev, A, B));
    } else if (name == "rsur") {
      out.reports.push_back(rsur(ev, A, B));
      out.mismatch = condition19(ev, A, B);
    } else if (name == "condition19") {
      out.mismatch = condition19(ev, A, B);
    } else if (name == "decomposition") {
      out.decomposition = decomposition(ev, A, B, options.decomposition_threshold);
    } else if (name == "boundary") {
      out.reports = boundary_bound(ev, options.single_modulus);
    } else if (name == "gram") {
      const std::vector<Observable> set =
          options.gram_set.empty()
              ? std::vector<Observable>{Observable::lz(), Observable::phi(), Observable::sin_phi()}
              : options.gram_set;
      out.reports.push_back(gram_det(ev, set));
    } else if (name == "eq8-sin") {
      out.reports.push_back(adjusted_relation(ev, AdjustedSpec::eq8_sin()));
    } else if (name == "eq8-cos") {
      out.reports.push_back(adjusted_relation(ev, AdjustedSpec::eq8_cos()));
    } else if (name == "eq9-trig") {
      out.reports.push_back(adjusted_relation(ev, AdjustedSpec::eq9_trig()));
    } else if (name == "eq22" || name == "eq23") {
      const bool circle = name == "eq22";
      require_family(ev, circle ? Family::Periodic : Family::Oscillator, name.c_str());
      out.mismatch = condition19(ev, Observable::lz(), Observable::phi());
      const cplx expected = circle ? kI * ev.hbar() : cplx{};
      const cplx got = out.mismatch->at(0, 1);
      out.values["lz_phi_mismatch"] = got;
      out.values["expected"] = expected;
      out.values["deviation"] = std::abs(got - expected);
    } else if (name == "eq24") {
      out.eq24 = scenario_eq24(ev);
    } else if (name == "moments") {
      const Observable L = Observable::lz();
      const Observable P = Observable::phi();
      const double dl = ev.std_dev(L);
      const double dp = ev.std_dev(P);
      out.values["mean_Lz"] = ev.mean(L);
      out.values["mean_Phi"] = ev.mean(P);
      out.values["std_Lz"] = dl;
      out.values["std_Phi"] = dp;
      out.values["product"] = dl * dp;
      if (ev.supports(Observable::hamiltonian())) out.values["energy"] = ev.mean(Observable::hamiltonian());
    } else if (name == "commutator") {
      if (ev.family() == Family::Sphere) throw NotApplicable("commutator: circle and line states only");
      const int n = options.commutator_points;
      const oracle::Grid1D grid =
          ev.family() == Family::Periodic
              ? oracle::Grid1D::circle(n)
              : oracle::Grid1D::line(oracle::default_line_half_width(std::get<OscillatorState>(state)), n);
      out.values["residual"] = ops::commutator_residual(state, grid);
      out.values["points"] = static_cast<double>(grid.size());
    }
  } catch (const NotApplicable& e) {
    out = Outcome{};
    out.relation = name;
    out.not_applicable = e.what();
  }
  return out;
}

}  // namespace angulab::relations
