#include "angulab/angular_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace angulab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
}  // namespace

cplx phi_power_moment(int power, int frequency) {
  if (power < 0) throw std::invalid_argument("phi_power_moment: negative power");
  if (frequency == 0) return std::pow(kTwoPi, power) / (power + 1.0);
  const cplx ij = kI * static_cast<double>(frequency);
  cplx mu = 0.0;  // mu_0(j) = 0 for j != 0
  for (int p = 1; p <= power; ++p) {
    mu = std::pow(kTwoPi, p - 1) / ij - (static_cast<double>(p) / ij) * mu;
  }
  return mu;
}

AngularFunction AngularFunction::constant(cplx value) { return monomial(value, 0, 0); }

AngularFunction AngularFunction::monomial(cplx coefficient, int power, int frequency) {
  if (power < 0) throw std::invalid_argument("AngularFunction: negative power");
  AngularFunction f;
  f.add_term({power, frequency}, coefficient);
  return f;
}

AngularFunction AngularFunction::sin_phi() {
  // sin(phi) = (e^{i phi} - e^{-i phi}) / 2i
  return monomial(-0.5 * kI, 0, 1) + monomial(0.5 * kI, 0, -1);
}

AngularFunction AngularFunction::cos_phi() {
  return monomial(0.5, 0, 1) + monomial(0.5, 0, -1);
}

void AngularFunction::add_term(Key key, cplx value) {
  if (value == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

int AngularFunction::max_power() const noexcept {
  int p = 0;
  for (const auto& [key, c] : terms_) p = std::max(p, key.first);
  return p;
}

int AngularFunction::max_frequency() const noexcept {
  int q = 0;
  for (const auto& [key, c] : terms_) q = std::max(q, std::abs(key.second));
  return q;
}

bool AngularFunction::is_real(double tol) const {
  for (const auto& [key, c] : terms_) {
    auto mirror = terms_.find({key.first, -key.second});
    const cplx partner = mirror == terms_.end() ? cplx{} : mirror->second;
    if (std::abs(c - std::conj(partner)) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

cplx AngularFunction::operator()(double phi) const {
  cplx sum = 0.0;
  for (const auto& [key, c] : terms_) {
    sum += c * std::pow(phi, key.first) * std::polar(1.0, key.second * phi);
  }
  return sum;
}

cplx AngularFunction::fourier_moment(int k) const {
  cplx sum = 0.0;
  for (const auto& [key, c] : terms_) sum += c * phi_power_moment(key.first, k + key.second);
  return sum;
}

AngularFunction AngularFunction::derivative() const {
  AngularFunction d;
  for (const auto& [key, c] : terms_) {
    const auto [p, q] = key;
    if (p > 0) d.add_term({p - 1, q}, c * static_cast<double>(p));
    if (q != 0) d.add_term({p, q}, c * kI * static_cast<double>(q));
  }
  return d;
}

AngularFunction AngularFunction::conj() const {
  AngularFunction f;
  for (const auto& [key, c] : terms_) f.add_term({key.first, -key.second}, std::conj(c));
  return f;
}

AngularFunction& AngularFunction::operator+=(const AngularFunction& other) {
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

AngularFunction& AngularFunction::operator*=(cplx scale) {
  if (scale == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scale;
  return *this;
}

AngularFunction operator*(const AngularFunction& a, const AngularFunction& b) {
  AngularFunction out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    }
  }
  return out;
}

std::string AngularFunction::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (key.first > 0) os << "*phi^" << key.first;
    if (key.second != 0) os << "*exp(" << key.second << "i*phi)";
  }
  return os.str();
}

}  // namespace angulab
