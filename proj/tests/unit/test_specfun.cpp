#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "angulab/specfun.hpp"

using namespace angulab;
using std::numbers::pi;

TEST_CASE("hermite polynomials match explicit low orders") {
  for (double x : {-2.5, -0.3, 0.0, 0.7, 1.9}) {
    CHECK(specfun::hermite_polynomial(0, x) == doctest::Approx(1.0));
    CHECK(specfun::hermite_polynomial(1, x) == doctest::Approx(2 * x));
    CHECK(specfun::hermite_polynomial(2, x) == doctest::Approx(4 * x * x - 2));
    CHECK(specfun::hermite_polynomial(3, x) == doctest::Approx(8 * x * x * x - 12 * x));
    CHECK(specfun::hermite_polynomial(4, x) == doctest::Approx(16 * std::pow(x, 4) - 48 * x * x + 12));
  }
}

TEST_CASE("hermite functions: explicit values and orthonormality") {
  CHECK(specfun::hermite_function(0, 0.0) == doctest::Approx(std::pow(pi, -0.25)).epsilon(1e-14));
  const double x = 0.8;
  CHECK(specfun::hermite_function(1, x) ==
        doctest::Approx(std::sqrt(2.0) * x * std::exp(-x * x / 2) * std::pow(pi, -0.25)).epsilon(1e-13));

  // Riemann sums on a wide grid are spectrally accurate for Gaussian-decaying integrands.
  const int N = 6000;
  const double L = 30.0, h = 2 * L / N;
  for (int a : {0, 3, 17, 60}) {
    for (int b : {0, 3, 17, 60}) {
      double s = 0;
      for (int i = 0; i <= N; ++i) {
        const double xi = -L + i * h;
        s += specfun::hermite_function(a, xi) * specfun::hermite_function(b, xi);
      }
      CHECK(s * h == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("hermite_functions fills the same values as the scalar call") {
  std::vector<double> row(40);
  specfun::hermite_functions(1.3, row);
  for (int n = 0; n < 40; ++n) CHECK(row[n] == doctest::Approx(specfun::hermite_function(n, 1.3)).epsilon(1e-13));
}

TEST_CASE("hermite polynomial order limit") {
  CHECK_THROWS_AS(specfun::hermite_polynomial(specfun::kMaxHermitePolynomialOrder + 1, 0.1), std::range_error);
}

TEST_CASE("theta functions: low orders and normalization") {
  const double t = 0.9;
  CHECK(specfun::theta_lm(0, 0, t) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(specfun::theta_lm(1, 0, t) == doctest::Approx(std::sqrt(1.5) * std::cos(t)));
  CHECK(std::abs(specfun::theta_lm(1, 1, t)) == doctest::Approx(std::sqrt(0.75) * std::sin(t)));
  CHECK(std::abs(specfun::theta_lm(2, 0, t)) ==
        doctest::Approx(std::sqrt(5.0 / 8.0) * (3 * std::cos(t) * std::cos(t) - 1)));

  // Simpson in theta.
  const int N = 4000;
  const double h = pi / N;
  for (int l : {1, 4, 9}) {
    for (int m = -l; m <= l; m += 2) {
      double s = 0;
      for (int i = 0; i <= N; ++i) {
        const double th = i * h;
        const double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
        s += w * std::pow(specfun::theta_lm(l, m, th), 2) * std::sin(th);
      }
      CHECK(s * h / 3 == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(specfun::theta_lm(1, 2, t), std::domain_error);
  CHECK_THROWS_AS(specfun::theta_lm(1, 0, -0.1), std::domain_error);
}

TEST_CASE("spherical harmonic phase factor") {
  const auto y = specfun::spherical_harmonic(2, 1, 0.4, 1.1);
  const double mag = std::abs(specfun::theta_lm(2, 1, 0.4)) / std::sqrt(2 * pi);
  CHECK(std::abs(y) == doctest::Approx(mag));
  const auto y0 = specfun::spherical_harmonic(2, 1, 0.4, 0.0);
  CHECK(std::arg(y / y0) == doctest::Approx(1.1));
}

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const auto rule = specfun::gauss_legendre(5);
  CHECK(rule.size() == 5);
  CHECK(rule.total_weight() == doctest::Approx(2.0));
  double s6 = 0, s9 = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    s6 += rule.weights[i] * std::pow(rule.nodes[i], 6);
    s9 += rule.weights[i] * std::pow(rule.nodes[i], 9);
  }
  CHECK(s6 == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(s9 == doctest::Approx(0.0));
}

TEST_CASE("gauss hermite integrates the Gaussian moments") {
  const auto rule = specfun::gauss_hermite(12);
  double s0 = 0, s2 = 0, s4 = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    s0 += rule.weights[i];
    s2 += rule.weights[i] * std::pow(rule.nodes[i], 2);
    s4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
  }
  CHECK(s0 == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(s2 == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-13));
  CHECK(s4 == doctest::Approx(3 * std::sqrt(pi) / 4).epsilon(1e-13));

  const auto& scaled = specfun::gauss_hermite_scaled(40);
  double g = 0;
  for (std::size_t i = 0; i < scaled.size(); ++i) g += scaled.weights[i] * std::exp(-scaled.nodes[i] * scaled.nodes[i]);
  CHECK(g == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("periodic trapezoid") {
  const auto rule = specfun::periodic_trapezoid(16);
  CHECK(rule.total_weight() == doctest::Approx(2 * pi));
  double c = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) c += rule.weights[i] * std::cos(3 * rule.nodes[i]);
  CHECK(c == doctest::Approx(0.0));
}

TEST_CASE("documented point values") {
  CHECK(specfun::hermite_polynomial(0, 0.7) == 1.0);
  CHECK(specfun::hermite_polynomial(1, 0.5) == doctest::Approx(1.0));
  CHECK(specfun::hermite_polynomial(3, 1.0) == doctest::Approx(-4.0));
  CHECK(std::abs(specfun::hermite_function(1, 0.0)) < 1e-16);
  CHECK(std::abs(specfun::theta_lm(1, 0, pi / 2)) < 1e-15);
  CHECK(std::abs(specfun::spherical_harmonic(0, 0, 0.3, 2.0) - 1 / std::sqrt(4 * pi)) < 1e-15);
  const auto a = specfun::spherical_harmonic(1, 1, pi / 2, 0.0);
  const auto b = specfun::spherical_harmonic(1, 1, pi / 2, pi);
  CHECK(std::abs(b + a) < 1e-15);
}

TEST_CASE("recurrence matches the explicit series for n <= 10") {
  // H_n(x) = n! sum_k (-1)^k (2x)^(n-2k) / (k! (n-2k)!)
  const auto series = [](int n, double x) {
    double s = 0;
    for (int k = 0; 2 * k <= n; ++k) {
      s += std::pow(-1.0, k) * std::pow(2 * x, n - 2 * k) * std::tgamma(n + 1) /
           (std::tgamma(k + 1) * std::tgamma(n - 2 * k + 1));
    }
    return s;
  };
  for (int n = 0; n <= 10; ++n) {
    for (double x = -5; x <= 5; x += 0.25) {
      const double ref = series(n, x);
      CHECK(std::abs(specfun::hermite_polynomial(n, x) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("rule shapes") {
  const auto gl2 = specfun::gauss_legendre(2);
  CHECK(std::abs(std::abs(gl2.nodes[0]) - 1 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(gl2.nodes[0] + gl2.nodes[1]) < 1e-14);
  CHECK(std::abs(gl2.weights[0] - 1) < 1e-14);
  CHECK(std::abs(gl2.weights[1] - 1) < 1e-14);
  CHECK(std::abs(specfun::periodic_trapezoid(4).total_weight() - 2 * pi) < 1e-14);
  const auto gh = specfun::gauss_hermite(40);
  double s = 0;
  for (std::size_t i = 0; i < gh.size(); ++i) s += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
  CHECK(std::abs(s - std::sqrt(pi) / 2) < 1e-12);
  for (int n : {2, 7, 64}) {
    const auto gl = specfun::gauss_legendre(n);
    CHECK(gl.nodes.size() == gl.weights.size());
    for (double w : gl.weights) CHECK(w > 0);
    CHECK(std::abs(gl.total_weight() - 2) < 2e-12);
    const auto pt = specfun::periodic_trapezoid(n);
    for (double w : pt.weights) CHECK(w > 0);
    CHECK(std::abs(pt.total_weight() - 2 * pi) < 2 * pi * 1e-12);
  }
}

TEST_CASE("gauss legendre error shrinks on doubling") {
  const double exact = std::exp(1.0) - std::exp(-1.0);
  double previous = 1e300;
  for (int n : {2, 4, 8, 16}) {
    const auto gl = specfun::gauss_legendre(n);
    double s = 0;
    for (std::size_t i = 0; i < gl.size(); ++i) s += gl.weights[i] * std::exp(gl.nodes[i]);
    const double err = std::abs(s - exact);
    if (previous > 1e-10) CHECK(err < previous);
    previous = err;
  }
  CHECK(previous <= 1e-10);
}

TEST_CASE("orthonormality matrices") {
  const auto gh = specfun::gauss_hermite(64);
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < gh.size(); ++i) {
        const double x = gh.nodes[i];
        s += gh.weights[i] * std::exp(x * x) * specfun::hermite_function(a, x) * specfun::hermite_function(b, x);
      }
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
  const auto gl = specfun::gauss_legendre(64);
  for (int l = 0; l <= 4; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int r = -l; r <= l; ++r) {
        if ((m - r) % 2 != 0) continue;  // Theta overlaps across parities are not orthogonal
        double s = 0;
        for (std::size_t i = 0; i < gl.size(); ++i) {
          const double th = std::acos(gl.nodes[i]);
          s += gl.weights[i] * specfun::theta_lm(l, m, th) * specfun::theta_lm(l, r, th);
        }
        if (m == r) CHECK(std::abs(s - 1.0) < 1e-9);
      }
    }
  }
  const auto pt = specfun::periodic_trapezoid(256);
  for (int m = -5; m <= 5; ++m) {
    for (int r = -5; r <= 5; ++r) {
      std::complex<double> s{};
      for (std::size_t i = 0; i < pt.size(); ++i) {
        s += pt.weights[i] * std::exp(std::complex<double>{0.0, 1.0 * (r - m) * pt.nodes[i]}) / (2 * pi);
      }
      CHECK(std::abs(s - (m == r ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("Y_21 is normalized on the sphere") {
  const auto gl = specfun::gauss_legendre(32);
  const auto pt = specfun::periodic_trapezoid(64);
  double s = 0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    for (std::size_t j = 0; j < pt.size(); ++j) {
      s += gl.weights[i] * pt.weights[j] * std::norm(specfun::spherical_harmonic(2, 1, std::acos(gl.nodes[i]), pt.nodes[j]));
    }
  }
  CHECK(std::abs(s - 1.0) < 1e-9);
}
