#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "angulab/operators.hpp"
#include "angulab/oracle.hpp"
#include "angulab/relations.hpp"

using namespace angulab;
using std::numbers::pi;

TEST_CASE("circle grid integrates smooth non-periodic functions") {
  const auto g = oracle::Grid1D::circle(512);
  CHECK(g.size() == 513);
  std::vector<cplx> one(g.size(), 1.0), x(g.size()), x3(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    x[i] = g.points[i];
    x3[i] = std::pow(g.points[i], 3);
  }
  CHECK(std::abs(oracle::quad_inner(one, one, g) - 2 * pi) < 1e-12);
  CHECK(std::abs(oracle::quad_inner(one, x, g) - 2 * pi * pi) < 1e-11);
  // \int_0^{2 pi} phi^4 = (2 pi)^5 / 5
  CHECK(std::abs(oracle::quad_inner(x, x3, g) - std::pow(2 * pi, 5) / 5) < 1e-7);
}

TEST_CASE("line grid and derivative") {
  const auto g = oracle::Grid1D::line(12.0, 2048);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.points[i] * g.points[i]);
  CHECK(std::abs(oracle::quad_inner(f, f, g) - std::sqrt(pi / 2)) < 1e-12);
  const auto d = oracle::numeric_derivative(f, g);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] - (-2 * g.points[i] * f[i])));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("derivative keeps fourth order at the ends") {
  const auto g = oracle::Grid1D::circle(256);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::pow(g.points[i], 4);
  const auto d = oracle::numeric_derivative(f, g);
  CHECK(std::abs(d.front()) < 1e-9);
  CHECK(std::abs(d.back() - 4 * std::pow(2 * pi, 3)) < 1e-8);
}

TEST_CASE("grids reject tiny sizes") {
  CHECK_THROWS(oracle::Grid1D::circle(4));
  CHECK_THROWS(oracle::Grid1D::line(5.0, 4));
}

TEST_CASE("sphere grid weights") {
  const auto g = oracle::Grid2D::sphere(32, 64);
  CHECK(g.total_weight() == doctest::Approx(4 * pi).epsilon(1e-12));
}

TEST_CASE("oracle agrees with spectral moments") {
  const State circle = states::periodic_superposition({{-2, 0.4}, {1, cplx{0.1, 0.9}}, {3, 0.2}});
  const State line = states::oscillator_superposition({{0, 0.5}, {3, cplx{0, 1.0}}}, 2.0, 0.5);
  const State sphere = states::sphere_state(2, {{-2, 1.0}, {0, cplx{0.3, 0.3}}, {1, 0.5}});
  for (const State& s : {circle, line, sphere}) {
    const SpectralEvaluator spec(s);
    const oracle::OracleEvaluator orc(s);
    for (const Observable& a : {Observable::lz(), Observable::phi(), Observable::sin_phi(), Observable::cos_phi()}) {
      CHECK(std::abs(spec.mean(a) - orc.mean(a)) < 1e-6);
      CHECK(std::abs(spec.std_dev(a) - orc.std_dev(a)) < 1e-6);
      CHECK(std::abs(spec.cross(Observable::lz(), a) - orc.cross(Observable::lz(), a)) < 1e-6);
      CHECK(std::abs(spec.compose(Observable::lz(), a) - orc.compose(Observable::lz(), a)) < 1e-6);
    }
  }
}

TEST_CASE("oracle boundary value is the left limit") {
  const PeriodicState s = states::periodic_superposition({{0, 1.0}, {2, cplx{0, 1}}});
  const oracle::OracleEvaluator orc{State{s}};
  REQUIRE(orc.boundary_value().has_value());
  CHECK(std::abs(*orc.boundary_value() - states::boundary_value(s)) < 1e-14);
}

TEST_CASE("oracle report runs a named relation") {
  const auto out = oracle::oracle_report({states::scr_eigenstate(2), "eq22", {}});
  REQUIRE(out.mismatch.has_value());
  CHECK(std::abs(out.mismatch->at(0, 1) - cplx{0, 1}) < 1e-6);
}

TEST_CASE("quadrature normalization and orthogonality on a 512-interval circle") {
  const auto g = oracle::Grid1D::circle(512);
  const auto e0 = oracle::sample_state(states::scr_eigenstate(0), g);
  const auto e1 = oracle::sample_state(states::scr_eigenstate(1), g);
  const auto e2 = oracle::sample_state(states::scr_eigenstate(2), g);
  CHECK(std::abs(oracle::quad_inner(e0, e0, g) - 1.0) < 1e-10);
  CHECK(std::abs(oracle::quad_inner(e1, e2, g)) < 1e-10);
  std::vector<cplx> phi_e0(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) phi_e0[i] = g.points[i] * e0[i];
  CHECK(std::abs(oracle::quad_inner(e0, phi_e0, g) - pi) < 1e-8);
}

TEST_CASE("derivative examples at 1024 intervals") {
  const auto g = oracle::Grid1D::circle(1024);
  std::vector<cplx> e(g.size()), x(g.size()), c(g.size(), 2.5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    e[i] = std::exp(cplx{0, g.points[i]});
    x[i] = g.points[i];
  }
  const auto de = oracle::numeric_derivative(e, g);
  const auto dx = oracle::numeric_derivative(x, g);
  const auto dc = oracle::numeric_derivative(c, g);
  for (std::size_t i = 2; i + 2 < g.size(); ++i) {
    CHECK(std::abs(de[i] - cplx{0, 1} * e[i]) < 1e-7);
  }
  // phi is not periodic, yet one-sided end stencils leave no spike anywhere.
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(dx[i] - 1.0) < 1e-7);
    CHECK(std::abs(dc[i]) < 1e-12);
  }
  CHECK_THROWS(oracle::numeric_derivative(std::vector<cplx>(4, 1.0), g));
}

TEST_CASE("oracle module examples") {
  const oracle::OracleEvaluator scr{State{states::scr_eigenstate(2)}};
  CHECK(scr.std_dev(Observable::lz()) < 1e-7);
  CHECK(std::abs(scr.std_dev(Observable::phi()) - pi / std::sqrt(3.0)) < 1e-6);

  oracle::Resolution res;
  res.line_half_width = 12.0;
  res.line_intervals = 4096;
  const oracle::OracleEvaluator qtp(states::qtp_eigenstate(1), res);
  CHECK(std::abs(qtp.std_dev(Observable::lz()) - std::sqrt(1.5)) < 1e-6);
  CHECK(std::abs(qtp.std_dev(Observable::phi()) - std::sqrt(1.5)) < 1e-6);

  const oracle::OracleEvaluator zero{State{states::scr_eigenstate(0)}};
  const auto d = relations::condition19(zero, Observable::lz(), Observable::phi());
  CHECK(std::abs(d.at(0, 1) - cplx{0, 1}) < 1e-6);
}

TEST_CASE("grid refinement converges at fourth order") {
  // Error of Delta L_z for a two-level circle state against the closed form 3/2.
  const State s = states::periodic_superposition({{0, 1.0}, {3, 1.0}});
  const double exact = 1.5;
  double previous = -1;
  for (int n : {64, 128, 256, 512}) {
    oracle::Resolution res;
    res.circle_intervals = n;
    const double err = std::abs(oracle::OracleEvaluator(s, res).std_dev(Observable::lz()) - exact);
    INFO("intervals ", n, " error ", err, " previous ", previous);
    if (previous > 0 && previous > 1e-9) CHECK(previous / err >= 4.0);
    previous = err;
  }
}

TEST_CASE("line truncation keeps the tail below 1e-12") {
  for (int n = 0; n <= 10; ++n) {
    const State s = states::qtp_eigenstate(n);
    // Trapezoid sum of |psi|^2 over [12, 40]; the mirror tail is equal.
    const int N = 20000;
    const double a = 12.0, b = 40.0, h = (b - a) / N;
    double tail = 0;
    for (int i = 0; i <= N; ++i) {
      const double w = (i == 0 || i == N) ? 0.5 : 1.0;
      tail += w * std::norm(states::evaluate(std::get<OscillatorState>(s), a + i * h));
    }
    CHECK(2 * tail * h < 1e-12);
  }
}
