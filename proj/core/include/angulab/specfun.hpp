#pragma once

// Special functions and quadrature rules shared by every basis: Hermite
// polynomials and functions, the normalized polar factor of the spherical
// harmonics, and Gauss-Legendre / Gauss-Hermite / periodic trapezoid rules.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace angulab::specfun {

/// Largest order accepted by hermite_polynomial (H_n overflows soon after).
inline constexpr int kMaxHermitePolynomialOrder = 100;
/// Largest order accepted by hermite_function; the normalized recurrence is
/// stable well past this, but |xi| beyond ~37 underflows the Gaussian.
inline constexpr int kMaxHermiteFunctionOrder = 512;
/// Largest orbital number accepted by theta_lm / spherical_harmonic.
inline constexpr int kMaxOrbitalNumber = 64;

enum class Domain { PeriodicCircle, FiniteInterval, RealLine };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Domain domain = Domain::FiniteInterval;

  std::size_t size() const noexcept { return nodes.size(); }
  double total_weight() const noexcept;
};

/// Physicists' Hermite polynomial H_n(xi) via H_{n+1} = 2 xi H_n - 2n H_{n-1}.
/// Throws std::range_error for n > kMaxHermitePolynomialOrder or overflow.
double hermite_polynomial(int n, double xi);

/// Orthonormal Hermite function h_n(xi) = (2^n n! sqrt(pi))^{-1/2} e^{-xi^2/2} H_n(xi).
/// Evaluated with the normalized recurrence directly on h_n, so no factorials
/// appear.
double hermite_function(int n, double xi);

/// Fills out[k] = h_k(xi) for k = 0 .. out.size()-1.
void hermite_functions(double xi, std::span<double> out);

/// Polar factor of Y_lm with the Condon-Shortley phase:
/// Y_lm(theta, phi) = theta_lm(l, m, theta) * e^{i m phi} / sqrt(2 pi),
/// normalized so that \int_0^pi theta_lm^2 sin(theta) dtheta = 1.
/// Throws std::domain_error if |m| > l or theta is outside [0, pi].
double theta_lm(int l, int m, double theta);

/// Fills out[k] = theta_lm(l, k - l, theta) for k = 0 .. 2l.
void theta_row(int l, double theta, std::span<double> out);

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration to 1e-14.
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite rule for weight e^{-xi^2} on the real line.
QuadratureRule gauss_hermite(int n);

/// Gauss-Hermite nodes with weights pre-multiplied by e^{xi^2}, i.e. a rule
/// for \int f(xi) dxi when f already carries its own Gaussian decay (as
/// products of Hermite functions do). Cached per n; the returned reference
/// stays valid for the life of the process.
const QuadratureRule& gauss_hermite_scaled(int n);

/// n equispaced nodes 2 pi j / n on [0, 2 pi) with weight 2 pi / n.
QuadratureRule periodic_trapezoid(int n);

}  // namespace angulab::specfun
