#include "angulab/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "angulab/specfun.hpp"

namespace angulab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be a positive finite number");
  }
}

void require_unit_norm(const Coefficients& c, const char* family) {
  const double norm2 = c.squared_norm();
  if (std::abs(norm2 - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument(std::string(family) + " state is not normalized: sum |c|^2 = " +
                                std::to_string(norm2));
  }
}

Coefficients normalized_block(const std::map<int, cplx>& input, int first, int last,
                              const char* family) {
  Coefficients out = Coefficients::zeros(first, last);
  double norm2 = 0.0;
  for (const auto& [label, value] : input) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::invalid_argument(std::string(family) + ": non-finite coefficient");
    }
    out.ref(label) = value;
    norm2 += std::norm(value);
  }
  if (norm2 == 0.0) {
    throw std::invalid_argument(std::string(family) + ": all coefficients are zero");
  }
  out *= 1.0 / std::sqrt(norm2);
  return out;
}

}  // namespace

Coefficients Coefficients::zeros(int first, int last) {
  if (last < first) return Coefficients{first, {}};
  return Coefficients{first, std::vector<cplx>(static_cast<std::size_t>(last - first + 1))};
}

double Coefficients::squared_norm() const noexcept {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return s;
}

Coefficients Coefficients::trimmed() const {
  std::size_t lo = 0;
  std::size_t hi = values.size();
  while (lo < hi && values[lo] == cplx{}) ++lo;
  while (hi > lo && values[hi - 1] == cplx{}) --hi;
  return Coefficients{first_label + static_cast<int>(lo),
                      std::vector<cplx>(values.begin() + static_cast<std::ptrdiff_t>(lo),
                                        values.begin() + static_cast<std::ptrdiff_t>(hi))};
}

Coefficients& Coefficients::operator+=(const Coefficients& other) {
  if (other.empty()) return *this;
  if (empty()) {
    *this = other;
    return *this;
  }
  const int lo = std::min(first_label, other.first_label);
  const int hi = std::max(last_label(), other.last_label());
  if (lo != first_label || hi != last_label()) {
    Coefficients grown = zeros(lo, hi);
    for (int k = first_label; k <= last_label(); ++k) grown.ref(k) = at(k);
    *this = std::move(grown);
  }
  for (int k = other.first_label; k <= other.last_label(); ++k) ref(k) += other.at(k);
  return *this;
}

Coefficients& Coefficients::operator*=(cplx scale) {
  for (cplx& v : values) v *= scale;
  return *this;
}

cplx dot(const Coefficients& a, const Coefficients& b) noexcept {
  if (a.empty() || b.empty()) return {};
  const int lo = std::max(a.first_label, b.first_label);
  const int hi = std::min(a.last_label(), b.last_label());
  cplx s = 0.0;
  for (int k = lo; k <= hi; ++k) s += std::conj(a.at(k)) * b.at(k);
  return s;
}

Coefficients operator+(Coefficients a, const Coefficients& b) { return a += b; }
Coefficients operator*(cplx s, Coefficients a) { return a *= s; }

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Periodic: return "periodic";
    case Family::Oscillator: return "oscillator";
    case Family::Sphere: return "sphere";
  }
  return "unknown";
}

PeriodicState::PeriodicState(Coefficients coefficients, int truncation, double hbar)
    : coefficients_(std::move(coefficients)), truncation_(truncation), hbar_(hbar) {
  if (truncation_ < 1) throw std::invalid_argument("periodic state: truncation must be >= 1");
  require_positive(hbar_, "hbar");
  const Coefficients t = coefficients_.trimmed();
  if (!t.empty() && (t.first_label < -truncation_ || t.last_label() > truncation_)) {
    throw std::invalid_argument("periodic state: coefficient outside [-M, M]");
  }
  Coefficients block = Coefficients::zeros(-truncation_, truncation_);
  block += t;
  coefficients_ = std::move(block);
  require_unit_norm(coefficients_, "periodic");
}

OscillatorState::OscillatorState(Coefficients coefficients, int truncation, double inertia,
                                 double omega, double hbar)
    : coefficients_(std::move(coefficients)),
      truncation_(truncation),
      inertia_(inertia),
      omega_(omega),
      hbar_(hbar) {
  if (truncation_ < 0) throw std::invalid_argument("oscillator state: negative truncation");
  require_positive(inertia_, "J (moment of inertia)");
  require_positive(omega_, "omega");
  require_positive(hbar_, "hbar");
  const Coefficients t = coefficients_.trimmed();
  if (!t.empty() && (t.first_label < 0 || t.last_label() > truncation_)) {
    throw std::invalid_argument("oscillator state: coefficient outside [0, N]");
  }
  if (truncation_ > specfun::kMaxHermiteFunctionOrder / 2) {
    throw std::range_error("oscillator state: truncation beyond supported Hermite order");
  }
  Coefficients block = Coefficients::zeros(0, truncation_);
  block += t;
  coefficients_ = std::move(block);
  require_unit_norm(coefficients_, "oscillator");
  lambda_ = std::sqrt(inertia_ * omega_ / hbar_);
}

SphereState::SphereState(int l, Coefficients coefficients, double hbar)
    : l_(l), coefficients_(std::move(coefficients)), hbar_(hbar) {
  if (l_ < 0 || l_ > specfun::kMaxOrbitalNumber) {
    throw std::invalid_argument("sphere state: l outside supported range");
  }
  require_positive(hbar_, "hbar");
  const Coefficients t = coefficients_.trimmed();
  if (!t.empty() && (t.first_label < -l_ || t.last_label() > l_)) {
    throw std::invalid_argument("sphere state: coefficient with |m| > l");
  }
  Coefficients block = Coefficients::zeros(-l_, l_);
  block += t;
  coefficients_ = std::move(block);
  require_unit_norm(coefficients_, "sphere");
}

Family family_of(const State& state) noexcept {
  return static_cast<Family>(state.index());
}

double hbar_of(const State& state) noexcept {
  return std::visit([](const auto& s) { return s.hbar(); }, state);
}

namespace states {

PeriodicState scr_eigenstate(int m, int truncation, double hbar) {
  if (std::abs(m) > truncation) {
    throw std::invalid_argument("scr_eigenstate: |m| = " + std::to_string(std::abs(m)) +
                                " exceeds truncation " + std::to_string(truncation));
  }
  Coefficients c = Coefficients::zeros(-truncation, truncation);
  c.ref(m) = 1.0;
  return PeriodicState(std::move(c), truncation, hbar);
}

PeriodicState periodic_superposition(const std::map<int, cplx>& coefficients, double hbar,
                                     int truncation) {
  if (coefficients.empty()) throw std::invalid_argument("periodic_superposition: no coefficients");
  int reach = 1;
  for (const auto& [m, v] : coefficients) reach = std::max(reach, std::abs(m));
  if (truncation == 0) truncation = std::max(kDefaultCircleTruncation, reach);
  if (reach > truncation) {
    throw std::invalid_argument("periodic_superposition: |m| exceeds truncation");
  }
  return PeriodicState(normalized_block(coefficients, -truncation, truncation, "periodic"),
                       truncation, hbar);
}

OscillatorState qtp_eigenstate(int n, double inertia, double omega, double hbar, int truncation) {
  if (n < 0) throw std::invalid_argument("qtp_eigenstate: negative n");
  if (n > truncation) {
    throw std::invalid_argument("qtp_eigenstate: n = " + std::to_string(n) +
                                " exceeds truncation " + std::to_string(truncation));
  }
  Coefficients c = Coefficients::zeros(0, truncation);
  c.ref(n) = 1.0;
  return OscillatorState(std::move(c), truncation, inertia, omega, hbar);
}

OscillatorState oscillator_superposition(const std::map<int, cplx>& coefficients, double inertia,
                                         double omega, double hbar, int truncation) {
  if (coefficients.empty()) {
    throw std::invalid_argument("oscillator_superposition: no coefficients");
  }
  int reach = 0;
  for (const auto& [n, v] : coefficients) {
    if (n < 0) throw std::invalid_argument("oscillator_superposition: negative n");
    reach = std::max(reach, n);
  }
  if (truncation == 0) truncation = std::max(kDefaultOscillatorTruncation, reach);
  if (reach > truncation) {
    throw std::invalid_argument("oscillator_superposition: n exceeds truncation");
  }
  return OscillatorState(normalized_block(coefficients, 0, truncation, "oscillator"), truncation,
                         inertia, omega, hbar);
}

SphereState sphere_state(int l, const std::map<int, cplx>& coefficients, double hbar) {
  if (l < 0) throw std::invalid_argument("sphere_state: negative l");
  for (const auto& [m, v] : coefficients) {
    if (std::abs(m) > l) {
      throw std::invalid_argument("sphere_state: coefficient m = " + std::to_string(m) +
                                  " violates |m| <= l = " + std::to_string(l));
    }
  }
  return SphereState(l, normalized_block(coefficients, -l, l, "sphere"), hbar);
}

cplx evaluate(const PeriodicState& state, double phi) {
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw std::domain_error("evaluate: phi outside [0, 2 pi)");
  }
  cplx sum = 0.0;
  const Coefficients& c = state.coefficients();
  for (int m = c.first_label; m <= c.last_label(); ++m) {
    const cplx a = c.at(m);
    if (a != cplx{}) sum += a * std::polar(1.0, m * phi);
  }
  return sum / std::sqrt(kTwoPi);
}

cplx evaluate(const OscillatorState& state, double phi) {
  if (!std::isfinite(phi)) throw std::domain_error("evaluate: phi must be finite");
  const Coefficients& c = state.coefficients();
  const Coefficients t = c.trimmed();
  if (t.empty()) return {};
  std::vector<double> h(static_cast<std::size_t>(t.last_label()) + 1);
  const double lambda = state.lambda();
  specfun::hermite_functions(lambda * phi, h);
  cplx sum = 0.0;
  for (int n = t.first_label; n <= t.last_label(); ++n) sum += t.at(n) * h[static_cast<std::size_t>(n)];
  return std::sqrt(lambda) * sum;
}

cplx evaluate(const SphereState& state, double theta, double phi) {
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw std::domain_error("evaluate: phi outside [0, 2 pi)");
  }
  const int l = state.l();
  std::vector<double> row(static_cast<std::size_t>(2 * l + 1));
  specfun::theta_row(l, theta, row);
  cplx sum = 0.0;
  for (int m = -l; m <= l; ++m) {
    const cplx c = state.coefficient(m);
    if (c != cplx{}) sum += c * row[static_cast<std::size_t>(m + l)] * std::polar(1.0, m * phi);
  }
  return sum / std::sqrt(kTwoPi);
}

cplx boundary_value(const PeriodicState& state) {
  // e^{i m (2 pi - 0)} -> 1 for every integer m
  cplx sum = 0.0;
  for (const cplx& a : state.coefficients().values) sum += a;
  return sum / std::sqrt(kTwoPi);
}

}  // namespace states
}  // namespace angulab
