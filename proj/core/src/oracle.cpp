#include "angulab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace angulab::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kGregoryOrder = 6;

// End corrections c_j of the Gregory rule: the trapezoid sum with weights
// h (1 + c_j) on the first and last six nodes integrates polynomials of degree
// < 6 near each end exactly. c solves sum_j c_j j^k = B_{k+1} / (k + 1) for
// k >= 1 and sum_j c_j = -1/2.
const std::array<double, kGregoryOrder>& gregory_corrections() {
  static const std::array<double, kGregoryOrder> c = [] {
    Eigen::Matrix<double, kGregoryOrder, kGregoryOrder> V;
    for (int k = 0; k < kGregoryOrder; ++k) {
      for (int j = 0; j < kGregoryOrder; ++j) V(k, j) = std::pow(static_cast<double>(j), k);
    }
    V(0, 0) = 1.0;  // 0^0
    Eigen::Matrix<double, kGregoryOrder, 1> rhs;
    rhs << -0.5, 1.0 / 12.0, 0.0, -1.0 / 120.0, 0.0, 1.0 / 252.0;
    const Eigen::Matrix<double, kGregoryOrder, 1> sol = V.fullPivLu().solve(rhs);
    std::array<double, kGregoryOrder> out{};
    for (int j = 0; j < kGregoryOrder; ++j) out[static_cast<std::size_t>(j)] = sol(j);
    return out;
  }();
  return c;
}

Grid1D closed_grid(double a, double b, int intervals, GridDomain domain) {
  if (intervals < 2 * kGregoryOrder) {
    throw std::invalid_argument("grid needs at least " + std::to_string(2 * kGregoryOrder) +
                                " intervals, got " + std::to_string(intervals));
  }
  Grid1D g;
  g.domain = domain;
  g.spacing = (b - a) / intervals;
  const auto n = static_cast<std::size_t>(intervals) + 1;
  g.points.resize(n);
  g.weights.assign(n, g.spacing);
  for (std::size_t j = 0; j < n; ++j) g.points[j] = a + static_cast<double>(j) * g.spacing;
  g.points.back() = b;
  const auto& c = gregory_corrections();
  for (std::size_t j = 0; j < c.size(); ++j) {
    g.weights[j] += g.spacing * c[j];
    g.weights[n - 1 - j] += g.spacing * c[j];
  }
  return g;
}

cplx sphere_value(const SphereState& s, std::span<const double> theta_row, double phi) {
  const int l = s.l();
  cplx v = 0.0;
  for (int m = -l; m <= l; ++m) {
    const cplx c = s.coefficient(m);
    if (c == cplx{}) continue;
    v += c * theta_row[static_cast<std::size_t>(m + l)] * std::exp(kI * (m * phi));
  }
  return v / std::sqrt(kTwoPi);
}

}  // namespace

Grid1D Grid1D::circle(int intervals) { return closed_grid(0.0, kTwoPi, intervals, GridDomain::Circle); }

Grid1D Grid1D::line(double half_width, int intervals) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("line grid half-width must be positive");
  }
  return closed_grid(-half_width, half_width, intervals, GridDomain::Line);
}

double Grid2D::total_weight() const noexcept {
  double p = 0.0;
  for (double w : phi_grid.weights) p += w;
  return theta_rule.total_weight() * p;
}

Grid2D Grid2D::sphere(int theta_nodes, int phi_intervals) {
  return Grid2D{specfun::gauss_legendre(theta_nodes), Grid1D::circle(phi_intervals)};
}

cplx quad_inner(std::span<const cplx> f, std::span<const cplx> g, const Grid1D& grid) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw std::invalid_argument("quad_inner: sample count does not match grid (" +
                                std::to_string(f.size()) + ", " + std::to_string(g.size()) +
                                " vs " + std::to_string(grid.size()) + ")");
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += grid.weights[i] * std::conj(f[i]) * g[i];
  return s;
}

cplx quad_inner(std::span<const cplx> f, std::span<const cplx> g, const Grid2D& grid) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw std::invalid_argument("quad_inner: sample count does not match sphere grid");
  }
  const std::size_t np = grid.phi_grid.size();
  cplx s = 0.0;
  for (std::size_t t = 0; t < grid.theta_rule.size(); ++t) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const std::size_t k = t * np + j;
      row += grid.phi_grid.weights[j] * std::conj(f[k]) * g[k];
    }
    s += grid.theta_rule.weights[t] * row;
  }
  return s;
}

std::vector<cplx> numeric_derivative(std::span<const cplx> f, const Grid1D& grid) {
  const std::size_t n = f.size();
  if (n != grid.size()) throw std::invalid_argument("numeric_derivative: sample count does not match grid");
  if (n < 5) throw std::invalid_argument("numeric_derivative: needs at least 5 points");
  const double h12 = 12.0 * grid.spacing;
  std::vector<cplx> d(n);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h12;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h12;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / h12;
  }
  const std::size_t e = n - 1;
  d[e] = (25.0 * f[e] - 48.0 * f[e - 1] + 36.0 * f[e - 2] - 16.0 * f[e - 3] + 3.0 * f[e - 4]) / h12;
  d[e - 1] = (3.0 * f[e] + 10.0 * f[e - 1] - 18.0 * f[e - 2] + 6.0 * f[e - 3] - f[e - 4]) / h12;
  return d;
}

double default_line_half_width(const OscillatorState& state) {
  const Coefficients t = state.coefficients().trimmed();
  const int n = t.empty() ? 0 : t.last_label();
  return std::max(8.0, std::sqrt(2.0 * n + 1.0) + 7.0) / state.lambda();
}

std::vector<cplx> sample_state(const State& state, const Grid1D& grid) {
  std::vector<cplx> out(grid.size());
  if (const auto* s = std::get_if<PeriodicState>(&state)) {
    if (grid.domain != GridDomain::Circle) throw std::invalid_argument("circle state needs a circle grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) out[i] = states::evaluate(*s, grid.points[i]);
    out.back() = states::boundary_value(*s);
  } else if (const auto* o = std::get_if<OscillatorState>(&state)) {
    if (grid.domain != GridDomain::Line) throw std::invalid_argument("oscillator state needs a line grid");
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = states::evaluate(*o, grid.points[i]);
  } else {
    throw std::invalid_argument("sample_state: sphere states need a 2D grid");
  }
  return out;
}

// ---------------------------------------------------------------- OracleEvaluator

OracleEvaluator::OracleEvaluator(const State& state, Resolution resolution)
    : family_(family_of(state)), hbar_(hbar_of(state)) {
  if (const auto* s = std::get_if<PeriodicState>(&state)) {
    (void)s;
    grid1_ = Grid1D::circle(resolution.circle_intervals);
    psi_ = sample_state(state, grid1_);
  } else if (const auto* o = std::get_if<OscillatorState>(&state)) {
    inertia_ = o->inertia();
    omega_ = o->omega();
    const double L =
        resolution.line_half_width > 0.0 ? resolution.line_half_width : default_line_half_width(*o);
    grid1_ = Grid1D::line(L, resolution.line_intervals);
    psi_ = sample_state(state, grid1_);
  } else {
    const auto& sp = std::get<SphereState>(state);
    grid2_ = Grid2D::sphere(resolution.theta_nodes, resolution.phi_intervals);
    const std::size_t np = grid2_.phi_grid.size();
    psi_.resize(grid2_.size());
    std::vector<double> row(static_cast<std::size_t>(2 * sp.l() + 1));
    for (std::size_t t = 0; t < grid2_.theta_rule.size(); ++t) {
      specfun::theta_row(sp.l(), std::acos(grid2_.theta_rule.nodes[t]), row);
      for (std::size_t j = 0; j < np; ++j) {
        // the last node is the limit 2 pi - 0, where every e^{i m phi} is 1
        const double phi = j + 1 == np ? 0.0 : grid2_.phi_grid.points[j];
        psi_[t * np + j] = sphere_value(sp, row, phi);
      }
    }
  }
}

bool OracleEvaluator::supports(const Observable& a) const noexcept {
  switch (a.kind()) {
    case ObservableKind::Identity:
    case ObservableKind::Lz:
    case ObservableKind::Multiplication:
      return true;
    case ObservableKind::Hamiltonian:
      return family_ == Family::Oscillator;
    case ObservableKind::Matrix:
      return false;
  }
  return false;
}

std::vector<cplx> OracleEvaluator::derivative(const std::vector<cplx>& f) const {
  if (family_ != Family::Sphere) return numeric_derivative(f, grid1_);
  const std::size_t np = grid2_.phi_grid.size();
  std::vector<cplx> out(f.size());
  for (std::size_t t = 0; t < grid2_.theta_rule.size(); ++t) {
    const std::span<const cplx> row(f.data() + t * np, np);
    const std::vector<cplx> d = numeric_derivative(row, grid2_.phi_grid);
    std::copy(d.begin(), d.end(), out.begin() + static_cast<std::ptrdiff_t>(t * np));
  }
  return out;
}

std::vector<cplx> OracleEvaluator::multiply(const AngularFunction& fn,
                                            const std::vector<cplx>& f) const {
  std::vector<cplx> out(f.size());
  if (family_ != Family::Sphere) {
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(grid1_.points[i]) * f[i];
    return out;
  }
  const std::size_t np = grid2_.phi_grid.size();
  std::vector<cplx> values(np);
  for (std::size_t j = 0; j < np; ++j) values[j] = fn(grid2_.phi_grid.points[j]);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = values[i % np] * f[i];
  return out;
}

std::vector<cplx> OracleEvaluator::apply(const Observable& a, const std::vector<cplx>& f) const {
  require_supported(a);
  switch (a.kind()) {
    case ObservableKind::Identity:
      return f;
    case ObservableKind::Lz: {
      std::vector<cplx> d = derivative(f);
      for (cplx& v : d) v *= -kI * hbar_;
      return d;
    }
    case ObservableKind::Multiplication:
      return multiply(a.function(), f);
    case ObservableKind::Hamiltonian: {
      const Observable L = Observable::lz();
      std::vector<cplx> out = apply(L, apply(L, f));
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double x = grid1_.points[i];
        out[i] = out[i] / (2.0 * inertia_) + 0.5 * inertia_ * omega_ * omega_ * x * x * f[i];
      }
      return out;
    }
    case ObservableKind::Matrix:
      break;
  }
  throw NotApplicable("oracle: coefficient-space observables are not sampled");
}

cplx OracleEvaluator::inner(const std::vector<cplx>& f, const std::vector<cplx>& g) const {
  return family_ == Family::Sphere ? quad_inner(f, g, grid2_) : quad_inner(f, g, grid1_);
}

cplx OracleEvaluator::cross(const Observable& a, const Observable& b) const {
  return inner(apply(a, psi_), apply(b, psi_));
}

cplx OracleEvaluator::compose(const Observable& a, const Observable& b) const {
  return inner(psi_, apply(a, apply(b, psi_)));
}

cplx OracleEvaluator::deviation_inner(const Observable& a, const Observable& b) const {
  const auto deviation = [this](const Observable& x) {
    std::vector<cplx> v = apply(x, psi_);
    const cplx mean = inner(psi_, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= mean * psi_[i];
    return v;
  };
  const cplx z = inner(deviation(a), deviation(b));
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalError("oracle deviation inner product is not finite");
  }
  return z;
}

std::optional<cplx> OracleEvaluator::boundary_value() const {
  if (family_ != Family::Periodic) return std::nullopt;
  return psi_.back();
}

relations::Outcome oracle_report(const ScenarioDescriptor& scenario) {
  const OracleEvaluator ev(scenario.state, scenario.resolution);
  relations::RunOptions options;
  return relations::run_named(scenario.relation, scenario.state, ev, options);
}

}  // namespace angulab::oracle
