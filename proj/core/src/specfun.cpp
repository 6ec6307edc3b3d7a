#include "angulab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace angulab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void require_rule_size(int n, const char* name) {
  if (n < 2) {
    throw std::invalid_argument(std::string(name) + ": need at least 2 nodes, got " +
                                std::to_string(n));
  }
}

void require_hermite_order(int n, int max_order) {
  if (n < 0) throw std::invalid_argument("hermite: negative order " + std::to_string(n));
  if (n > max_order) {
    throw std::range_error("hermite: order " + std::to_string(n) + " exceeds supported maximum " +
                           std::to_string(max_order));
  }
}

void require_lm(int l, int m) {
  if (l < 0) throw std::domain_error("theta_lm: negative l");
  if (std::abs(m) > l) {
    throw std::domain_error("theta_lm: |m| = " + std::to_string(std::abs(m)) +
                            " exceeds l = " + std::to_string(l));
  }
  if (l > kMaxOrbitalNumber) throw std::range_error("theta_lm: l beyond supported range");
}

// Normalized associated Legendre value for m >= 0, scaled so that the
// result is Theta_lm (unit norm against sin(theta) dtheta), CS phase included.
double theta_nonnegative_m(int l, int m, double x) {
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  // Theta_mm = (-1)^m sqrt((2m+1)/2 * prod_{k=1}^m (2k-1)/(2k)) sin^m
  double pmm = std::sqrt(0.5);
  for (int k = 1; k <= m; ++k) {
    pmm *= -s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  }
  if (l == m) return pmm;
  double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
    const double b = std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) /
                               (4.0 * (ll - 1) * (ll - 1) - 1.0));
    pll = a * (x * pm1 - b * pmm);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

}  // namespace

double QuadratureRule::total_weight() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double hermite_polynomial(int n, double xi) {
  require_hermite_order(n, kMaxHermitePolynomialOrder);
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * xi;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * xi * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) {
    throw std::range_error("hermite_polynomial: H_" + std::to_string(n) + " overflows at xi = " +
                           std::to_string(xi));
  }
  return cur;
}

void hermite_functions(double xi, std::span<double> out) {
  if (out.empty()) return;
  require_hermite_order(static_cast<int>(out.size()) - 1, kMaxHermiteFunctionOrder);
  out[0] = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(kPi));
  if (out.size() == 1) return;
  out[1] = std::sqrt(2.0) * xi * out[0];
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * xi * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
  }
}

double hermite_function(int n, double xi) {
  require_hermite_order(n, kMaxHermiteFunctionOrder);
  double prev = 0.0;
  double cur = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(kPi));
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * xi * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double theta_lm(int l, int m, double theta) {
  require_lm(l, m);
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta_lm: theta outside [0, pi]");
  }
  const double x = std::cos(theta);
  const double value = theta_nonnegative_m(l, std::abs(m), x);
  // Theta_{l,-m} = (-1)^m Theta_{l,m}
  return (m < 0 && (std::abs(m) % 2 == 1)) ? -value : value;
}

void theta_row(int l, double theta, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(2 * l + 1)) {
    throw std::invalid_argument("theta_row: output must hold 2l+1 values");
  }
  for (int m = -l; m <= l; ++m) out[static_cast<std::size_t>(m + l)] = theta_lm(l, m, theta);
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  const double polar = theta_lm(l, m, theta);
  return polar * std::polar(1.0, m * phi) / std::sqrt(2.0 * kPi);
}

QuadratureRule gauss_legendre(int n) {
  require_rule_size(n, "gauss_legendre");
  QuadratureRule rule;
  rule.domain = Domain::FiniteInterval;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-14) break;
    }
    // refresh derivative at the converged node
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

// Nodes and e^{xi^2}-scaled weights; Newton on h_n with the asymptotic
// initial guesses of Numerical Recipes' gauher.
QuadratureRule build_gauss_hermite_scaled(int n) {
  QuadratureRule rule;
  rule.domain = Domain::RealLine;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
    }
    for (int iter = 0; iter < 200; ++iter) {
      hermite_functions(z, h);
      const double deriv = std::sqrt(2.0 * n) * h[static_cast<std::size_t>(n - 1)];
      const double step = h[static_cast<std::size_t>(n)] / deriv;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    hermite_functions(z, h);
    const double hn1 = h[static_cast<std::size_t>(n - 1)];
    const double w = 1.0 / (n * hn1 * hn1);
    rule.nodes[static_cast<std::size_t>(i)] = z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  // ascending order
  std::reverse(rule.nodes.begin(), rule.nodes.end());
  std::reverse(rule.weights.begin(), rule.weights.end());
  return rule;
}

}  // namespace

const QuadratureRule& gauss_hermite_scaled(int n) {
  require_rule_size(n, "gauss_hermite");
  require_hermite_order(n, kMaxHermiteFunctionOrder);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_gauss_hermite_scaled(n));
  return *slot;
}

QuadratureRule gauss_hermite(int n) {
  QuadratureRule rule = gauss_hermite_scaled(n);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.weights[i] *= std::exp(-rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n) {
  require_rule_size(n, "periodic_trapezoid");
  QuadratureRule rule;
  rule.domain = Domain::PeriodicCircle;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.assign(static_cast<std::size_t>(n), 2.0 * kPi / n);
  for (int j = 0; j < n; ++j) rule.nodes[static_cast<std::size_t>(j)] = 2.0 * kPi * j / n;
  return rule;
}

}  // namespace angulab::specfun
