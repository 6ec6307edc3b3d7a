#include "angulab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace angulab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void check_finite(cplx z, std::string_view what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalError("non-finite value in " + std::string(what));
  }
}

}  // namespace

// ---------------------------------------------------------------- Observable

Observable::Observable(ObservableKind kind, ObservableTag tag, std::string label)
    : kind_(kind), tag_(tag), label_(std::move(label)) {}

Observable Observable::identity() { return {ObservableKind::Identity, ObservableTag::Identity, "I"}; }

Observable Observable::lz() { return {ObservableKind::Lz, ObservableTag::Lz, "Lz"}; }

Observable Observable::phi() {
  Observable o(ObservableKind::Multiplication, ObservableTag::Phi, "Phi");
  o.function_ = AngularFunction::phi();
  return o;
}

Observable Observable::phi_squared() {
  Observable o(ObservableKind::Multiplication, ObservableTag::Phi2, "Phi2");
  o.function_ = AngularFunction::phi_squared();
  return o;
}

Observable Observable::sin_phi() {
  Observable o(ObservableKind::Multiplication, ObservableTag::SinPhi, "SinPhi");
  o.function_ = AngularFunction::sin_phi();
  return o;
}

Observable Observable::cos_phi() {
  Observable o(ObservableKind::Multiplication, ObservableTag::CosPhi, "CosPhi");
  o.function_ = AngularFunction::cos_phi();
  return o;
}

Observable Observable::hamiltonian() {
  return {ObservableKind::Hamiltonian, ObservableTag::Hamiltonian, "H"};
}

Observable Observable::multiplication(std::string label, AngularFunction f) {
  Observable o(ObservableKind::Multiplication, ObservableTag::Custom, std::move(label));
  o.hermitian_ = f.is_real();
  o.function_ = std::move(f);
  return o;
}

Observable Observable::matrix(std::string label, Eigen::MatrixXcd action, int first_label,
                              bool hermitian) {
  if (action.rows() == 0 || action.rows() != action.cols()) {
    throw std::invalid_argument("observable '" + label + "': action must be a non-empty square matrix");
  }
  if (!action.allFinite()) throw std::invalid_argument("observable '" + label + "': non-finite entry");
  Observable o(ObservableKind::Matrix, ObservableTag::Custom, std::move(label));
  o.hermitian_ = hermitian;
  o.action_ = std::make_shared<const Eigen::MatrixXcd>(std::move(action));
  o.action_first_label_ = first_label;
  return o;
}

// ---------------------------------------------------------------- Evaluator

void Evaluator::require_supported(const Observable& a) const {
  if (!supports(a)) {
    throw NotApplicable("observable " + a.label() + " is not defined on the " +
                        std::string(family_name(family())) + " family");
  }
}

double Evaluator::mean(const Observable& a) const {
  if (!a.hermitian()) {
    throw std::invalid_argument("mean requires a Hermitian observable, got " + a.label());
  }
  const cplx z = expectation(a);
  check_finite(z, "mean of " + a.label());
  if (std::abs(z.imag()) > hermitian_tolerance() * std::max(1.0, std::abs(z.real()))) {
    throw NumericalError("mean of " + a.label() + " has imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

cplx Evaluator::deviation_inner(const Observable& a, const Observable& b) const {
  const Observable id = Observable::identity();
  const cplx ma = expectation(a);
  const cplx mb = expectation(b);
  const cplx v = cross(a, b) - mb * cross(a, id) - std::conj(ma) * cross(id, b) +
                 std::conj(ma) * mb * cross(id, id);
  check_finite(v, "deviation inner product");
  return v;
}

double Evaluator::std_dev(const Observable& a) const {
  const double v = deviation_inner(a, a).real();
  const double scale = std::max(1.0, cross(a, a).real());
  if (v < -hermitian_tolerance() * scale) {
    throw NumericalError("negative variance " + std::to_string(v) + " for " + a.label());
  }
  return std::sqrt(std::max(0.0, v));
}

// ---------------------------------------------------------------- SpectralEvaluator

SpectralEvaluator::SpectralEvaluator(State state)
    : state_(std::move(state)), basis_(spectral::basis_for(state_)) {
  psi_ = std::visit([](const auto& s) { return spectral::Image::of(s.coefficients()); }, state_);
}

bool SpectralEvaluator::supports(const Observable& a) const noexcept {
  switch (a.kind()) {
    case ObservableKind::Identity:
    case ObservableKind::Lz:
    case ObservableKind::Multiplication:
      return true;
    case ObservableKind::Hamiltonian:
      return family() == Family::Oscillator;
    case ObservableKind::Matrix: {
      const int first = a.action_first_label();
      const int last = first + static_cast<int>(a.action().rows()) - 1;
      if (const auto* s = std::get_if<SphereState>(&state_)) return first >= -s->l() && last <= s->l();
      if (std::holds_alternative<OscillatorState>(state_)) return first >= 0;
      return true;
    }
  }
  return false;
}

spectral::Image SpectralEvaluator::apply(const Observable& a, const spectral::Image& x) const {
  require_supported(a);
  switch (a.kind()) {
    case ObservableKind::Identity:
      return x;
    case ObservableKind::Lz:
      return spectral::apply_lz(basis_, x);
    case ObservableKind::Multiplication:
      return spectral::multiply(a.function(), x);
    case ObservableKind::Hamiltonian: {
      const auto& s = std::get<OscillatorState>(state_);
      const double J = s.inertia();
      const double w = s.omega();
      spectral::Image kinetic = spectral::apply_lz(basis_, spectral::apply_lz(basis_, x));
      kinetic *= 1.0 / (2.0 * J);
      spectral::Image potential = spectral::multiply(AngularFunction::phi_squared(), x);
      potential *= 0.5 * J * w * w;
      kinetic += potential;
      kinetic.compact();
      return kinetic;
    }
    case ObservableKind::Matrix:
      return spectral::apply_matrix(basis_, a.action(), a.action_first_label(), x);
  }
  throw std::logic_error("unhandled observable kind");
}

spectral::Image SpectralEvaluator::image(const Observable& a) const { return apply(a, psi_); }

cplx SpectralEvaluator::inner(const spectral::Image& x, const spectral::Image& y) const {
  return spectral::inner(basis_, x, y);
}

cplx SpectralEvaluator::cross(const Observable& a, const Observable& b) const {
  const cplx v = inner(image(a), image(b));
  check_finite(v, "(" + a.label() + " psi, " + b.label() + " psi)");
  return v;
}

cplx SpectralEvaluator::compose(const Observable& a, const Observable& b) const {
  const cplx v = inner(psi_, apply(a, image(b)));
  check_finite(v, "(psi, " + a.label() + " " + b.label() + " psi)");
  return v;
}

std::optional<cplx> SpectralEvaluator::boundary_value() const {
  if (const auto* s = std::get_if<PeriodicState>(&state_)) return states::boundary_value(*s);
  return std::nullopt;
}

// ---------------------------------------------------------------- ops

namespace ops {

Coefficients apply_lz(const State& state) {
  const spectral::Basis basis = spectral::basis_for(state);
  return std::visit([&](const auto& s) { return spectral::apply_lz(basis, s.coefficients()); }, state);
}

Eigen::MatrixXcd phi_matrix(int truncation) {
  if (truncation < 1) throw std::invalid_argument("phi_matrix: truncation must be >= 1");
  const int dim = 2 * truncation + 1;
  Eigen::MatrixXcd m(dim, dim);
  for (int a = 0; a < dim; ++a) {
    m(a, a) = kPi;
    for (int b = a + 1; b < dim; ++b) {
      // rows are m = a - M, columns r = b - M; m - r = a - b
      const cplx v = kI / static_cast<double>(a - b);
      m(a, b) = v;
      m(b, a) = std::conj(v);
    }
  }
  return m;
}

Eigen::MatrixXcd phi2_matrix(int truncation) {
  if (truncation < 1) throw std::invalid_argument("phi2_matrix: truncation must be >= 1");
  const int dim = 2 * truncation + 1;
  Eigen::MatrixXcd m(dim, dim);
  for (int a = 0; a < dim; ++a) {
    m(a, a) = 4.0 * kPi * kPi / 3.0;
    for (int b = a + 1; b < dim; ++b) {
      const double k = b - a;  // r - m
      const cplx v = -2.0 * kPi * kI / k + 2.0 / (k * k);
      m(a, b) = v;
      m(b, a) = std::conj(v);
    }
  }
  return m;
}

PhiAction apply_phi(const PeriodicState& state) {
  const int M = state.truncation();
  const Eigen::MatrixXcd P = phi_matrix(M);
  const Eigen::MatrixXcd P2 = phi2_matrix(M);
  Eigen::VectorXcd a(2 * M + 1);
  for (int m = -M; m <= M; ++m) a(m + M) = state.coefficient(m);
  const Eigen::VectorXcd out = P * a;
  const double full = a.dot(P2 * a).real();  // ||phi psi||^2
  PhiAction result;
  result.coefficients = Coefficients::zeros(-M, M);
  for (int m = -M; m <= M; ++m) result.coefficients.ref(m) = out(m + M);
  result.tail_norm = std::sqrt(std::max(0.0, full - out.squaredNorm()));
  return result;
}

PhiAction apply_phi(const OscillatorState& state) {
  const spectral::HermiteBasis basis(state.hbar(), state.lambda());
  PhiAction result;
  result.coefficients = (1.0 / state.lambda()) * basis.apply_xi(state.coefficients());
  return result;
}

SpherePhiAction apply_phi(const SphereState& state, int truncation) {
  const int l = state.l();
  if (truncation < std::max(1, l)) {
    throw std::invalid_argument("apply_phi: sphere truncation must be at least max(1, l)");
  }
  const int K = truncation;
  const Eigen::MatrixXcd P = phi_matrix(K);
  const Eigen::MatrixXcd P2 = phi2_matrix(K);
  const Eigen::MatrixXd O = spectral::theta_overlaps(l);
  SpherePhiAction result;
  result.l = l;
  result.truncation = K;
  result.coefficients = Eigen::MatrixXcd::Zero(2 * l + 1, 2 * K + 1);
  for (int r = -l; r <= l; ++r) {
    const cplx c = state.coefficient(r);
    for (int m = -K; m <= K; ++m) result.coefficients(r + l, m + K) = c * P(m + K, r + K);
  }
  double full = 0.0;
  double kept = 0.0;
  for (int r = -l; r <= l; ++r) {
    for (int s = -l; s <= l; ++s) {
      const double o = O(r + l, s + l);
      full += (o * std::conj(state.coefficient(r)) * state.coefficient(s) * P2(r + K, s + K)).real();
      kept += (o * result.coefficients.row(r + l).dot(result.coefficients.row(s + l))).real();
    }
  }
  result.tail_norm = std::sqrt(std::max(0.0, full - kept));
  return result;
}

cplx inner_product(const State& x, const State& y) {
  if (x.index() != y.index()) throw std::invalid_argument("inner_product: states of different families");
  if (const auto* a = std::get_if<OscillatorState>(&x)) {
    const auto& b = std::get<OscillatorState>(y);
    if (a->lambda() != b.lambda()) {
      throw std::invalid_argument("inner_product: oscillator states with different lambda");
    }
  }
  if (const auto* a = std::get_if<SphereState>(&x)) {
    if (a->l() != std::get<SphereState>(y).l()) {
      throw std::invalid_argument("inner_product: sphere states with different l");
    }
  }
  const auto coeffs = [](const State& s) {
    return std::visit([](const auto& v) { return v.coefficients(); }, s);
  };
  return dot(coeffs(x), coeffs(y));
}

cplx inner_product(const SpectralEvaluator& ev, const DeviationVector& x, const DeviationVector& y) {
  return ev.inner(x.image, y.image);
}

double mean(const Observable& a, const State& state) { return SpectralEvaluator(state).mean(a); }

double std_dev(const Observable& a, const State& state) {
  return SpectralEvaluator(state).std_dev(a);
}

DeviationVector deviation_vector(const Observable& a, const SpectralEvaluator& ev) {
  const double m = ev.mean(a);
  spectral::Image img = ev.image(a);
  img.vector += (-m) * ev.psi().vector;
  return {a, std::move(img)};
}

SphereVariances sphere_variances(const SphereState& state) {
  const int l = state.l();
  const double hbar = state.hbar();
  SphereVariances v;
  double m1 = 0.0;
  double m2 = 0.0;
  for (int m = -l; m <= l; ++m) {
    const double p = std::norm(state.coefficient(m));
    m1 += p * hbar * m;
    m2 += p * hbar * hbar * m * m;
  }
  v.var_lz = m2 - m1 * m1;

  const int K = std::max(1, l);
  const Eigen::MatrixXcd P = phi_matrix(K);
  const Eigen::MatrixXcd P2 = phi2_matrix(K);
  const Eigen::MatrixXd O = spectral::theta_overlaps(l);
  cplx e1 = 0.0;
  cplx e2 = 0.0;
  for (int m = -l; m <= l; ++m) {
    for (int r = -l; r <= l; ++r) {
      const cplx w = std::conj(state.coefficient(m)) * state.coefficient(r) * O(m + l, r + l);
      e1 += w * P(m + K, r + K);
      e2 += w * P2(m + K, r + K);
    }
  }
  v.var_phi = e2.real() - e1.real() * e1.real();
  return v;
}

double commutator_residual(const State& state, const oracle::Grid1D& grid) {
  if (std::holds_alternative<SphereState>(state)) {
    throw NotApplicable("commutator_residual: circle and line states only");
  }
  const double hbar = hbar_of(state);
  const std::vector<cplx> psi = oracle::sample_state(state, grid);
  std::vector<cplx> phipsi(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) phipsi[i] = grid.points[i] * psi[i];
  const std::vector<cplx> d_phipsi = oracle::numeric_derivative(phipsi, grid);
  const std::vector<cplx> d_psi = oracle::numeric_derivative(psi, grid);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < psi.size(); ++i) {
    // [L, phi] psi = -i hbar ((phi psi)' - phi psi')
    const cplx comm = -kI * hbar * (d_phipsi[i] - grid.points[i] * d_psi[i]);
    worst = std::max(worst, std::abs(comm + kI * hbar * psi[i]));
  }
  return worst;
}

double qtp_energy_mean(const OscillatorState& state) {
  const spectral::HermiteBasis basis(state.hbar(), state.lambda());
  const Coefficients d = basis.apply_dxi(state.coefficients());
  const Coefficients x = basis.apply_xi(state.coefficients());
  return 0.5 * state.hbar() * state.omega() * (d.squared_norm() + x.squared_norm());
}

}  // namespace ops
}  // namespace angulab
