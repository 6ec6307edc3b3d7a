#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "angulab/oracle.hpp"
#include "angulab/random_states.hpp"
#include "angulab/specfun.hpp"
#include "angulab/states.hpp"

using namespace angulab;
using std::numbers::pi;

TEST_CASE("scr eigenstate is a single unit coefficient") {
  const PeriodicState s = states::scr_eigenstate(-3, 10, 0.5);
  CHECK(s.coefficient(-3) == cplx{1.0, 0.0});
  CHECK(s.coefficient(2) == cplx{});
  CHECK(s.truncation() == 10);
  CHECK(s.hbar() == 0.5);
  const cplx v = states::evaluate(s, 1.2);
  CHECK(std::abs(v - std::exp(cplx{0, -3 * 1.2}) / std::sqrt(2 * pi)) < 1e-15);
}

TEST_CASE("superpositions are normalized and keep their phase") {
  const PeriodicState s = states::periodic_superposition({{0, 3.0}, {2, cplx{0, 4.0}}});
  CHECK(std::abs(s.coefficient(0) - 0.6) < 1e-15);
  CHECK(std::abs(s.coefficient(2) - cplx{0, 0.8}) < 1e-15);
  CHECK(s.coefficients().squared_norm() == doctest::Approx(1.0));
  CHECK(s.truncation() == kDefaultCircleTruncation);
}

TEST_CASE("boundary value is the periodic limit") {
  const PeriodicState s = states::periodic_superposition({{0, 1.0}, {1, 1.0}});
  // psi(0) = (1 + 1) / sqrt(2) / sqrt(2 pi)
  CHECK(std::abs(states::boundary_value(s) - cplx{1 / std::sqrt(pi), 0}) < 1e-15);
}

TEST_CASE("oscillator eigenstate samples the scaled Hermite function") {
  const OscillatorState s = states::qtp_eigenstate(2, 2.0, 0.5, 1.0);
  CHECK(s.lambda() == doctest::Approx(1.0));
  const OscillatorState t = states::qtp_eigenstate(1, 4.0, 1.0, 1.0);
  CHECK(t.lambda() == doctest::Approx(2.0));
  const double x = 0.37;
  const cplx v = states::evaluate(t, x);
  CHECK(v.real() == doctest::Approx(std::sqrt(2.0) * specfun::hermite_function(1, 2 * x)));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("sphere state evaluation") {
  const SphereState s = states::sphere_state(1, {{1, 1.0}});
  const cplx v = states::evaluate(s, 0.6, 0.3);
  CHECK(std::abs(v - specfun::spherical_harmonic(1, 1, 0.6, 0.3)) < 1e-15);
}

TEST_CASE("state constructors reject bad input") {
  CHECK_THROWS_AS(states::scr_eigenstate(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(states::periodic_superposition({}), std::invalid_argument);
  CHECK_THROWS_AS(states::periodic_superposition({{1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(states::periodic_superposition({{1, cplx{NAN, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(states::qtp_eigenstate(-1), std::invalid_argument);
  CHECK_THROWS_AS(states::qtp_eigenstate(1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(states::qtp_eigenstate(1, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(states::sphere_state(1, {{2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(states::sphere_state(-1, {{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicState(Coefficients(0, {0.5}), 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(states::evaluate(states::scr_eigenstate(0), 2 * pi), std::domain_error);
}

TEST_CASE("coefficient blocks") {
  Coefficients a(-1, {1.0, 2.0, 0.0});
  CHECK(a.last_label() == 1);
  CHECK(a.at(5) == cplx{});
  CHECK(a.trimmed().last_label() == 0);
  Coefficients b(0, {cplx{0, 1}, 1.0});
  // <a, b> = conj(a_0) b_0 + conj(a_1) b_1 = 2i
  CHECK(std::abs(dot(a, b) - cplx{0, 2}) < 1e-15);
  const Coefficients c = a + b;
  CHECK(c.first_label == -1);
  CHECK(c.at(0) == cplx{2, 1});
  CHECK(c.at(1) == cplx{1, 0});
}

TEST_CASE("documented state examples") {
  const double r = 1 / std::sqrt(2 * pi);
  const PeriodicState s0 = states::scr_eigenstate(0);
  for (double x : {0.0, 1.0, 6.0}) CHECK(std::abs(states::evaluate(s0, x) - r) < 1e-15);
  const PeriodicState s3 = states::scr_eigenstate(3);
  for (double x : {0.2, 2.9, 5.5}) CHECK(std::abs(std::norm(states::evaluate(s3, x)) - 1 / (2 * pi)) < 1e-15);
  for (int m : {-7, 0, 4}) CHECK(std::abs(std::abs(states::boundary_value(states::scr_eigenstate(m))) - r) < 1e-15);
  CHECK(std::abs(states::boundary_value(states::scr_eigenstate(5)) - r) < 1e-15);
  CHECK(std::abs(states::evaluate(states::scr_eigenstate(1), pi) + r) < 1e-15);

  const PeriodicState p = states::periodic_superposition({{0, 1.0}, {1, 1.0}});
  CHECK(std::abs(p.coefficient(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(p.coefficient(1) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(states::periodic_superposition({{2, cplx{0, 3}}}).coefficient(2) - cplx{0, 1}) < 1e-15);

  const SphereState sp = states::sphere_state(1, {{-1, 1.0}, {1, 1.0}});
  CHECK(std::abs(sp.coefficient(-1) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(sp.coefficient(1) - 1 / std::sqrt(2.0)) < 1e-15);

  const OscillatorState q = states::qtp_eigenstate(0, 4.0, 1.0, 1.0);  // lambda = 2
  CHECK(std::abs(states::evaluate(q, 0.0) - std::sqrt(2.0) * std::pow(pi, -0.25)) < 1e-14);
}

TEST_CASE("random superpositions are normalized") {
  random::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<int, cplx> c;
    for (int k = 0; k < 7; ++k) c[k - 3] = rng.coefficient();
    CHECK(std::abs(states::periodic_superposition(c).coefficients().squared_norm() - 1) < 1e-12);
    std::map<int, cplx> d;
    for (int m = -2; m <= 2; ++m) d[m] = rng.coefficient();
    CHECK(std::abs(states::sphere_state(2, d).coefficients().squared_norm() - 1) < 1e-12);
  }
}

TEST_CASE("second oscillator level has two real zeros") {
  const OscillatorState q = states::qtp_eigenstate(2);
  int changes = 0;
  double prev = states::evaluate(q, -10.0).real();
  for (int i = 1; i <= 20000; ++i) {
    const double v = states::evaluate(q, -10.0 + i * 1e-3).real();
    if ((v > 0) != (prev > 0) && std::abs(v) > 0 && std::abs(prev) > 0) ++changes;
    prev = v;
  }
  CHECK(changes == 2);
}

TEST_CASE("periodic continuity across the cut") {
  random::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const PeriodicState p = random::random_periodic(rng, 6);
    CHECK(std::abs(states::boundary_value(p) - states::evaluate(p, 0.0)) < 1e-12);
  }
}

TEST_CASE("Parseval against the quadrature norm") {
  random::Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const State states_[] = {random::random_periodic(rng, 5), random::random_oscillator(rng, 6, 2.0, 0.5),
                             random::random_sphere(rng, 3)};
    for (const State& s : states_) {
      const oracle::OracleEvaluator orc(s);
      CHECK(std::abs(orc.inner(orc.samples(), orc.samples()) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("oscillator eigenstates project onto a single level") {
  const double J = 2.0, w = 0.5;
  for (int n = 0; n <= 6; ++n) {
    const OscillatorState q = states::qtp_eigenstate(n, J, w);
    const double lam = q.lambda();
    const int N = 8000;
    const double L = 14.0 / lam, h = 2 * L / N;
    for (int k = 0; k <= 6; ++k) {
      double s = 0;
      for (int i = 0; i <= N; ++i) {
        const double x = -L + i * h;
        s += states::evaluate(q, x).real() * std::sqrt(lam) * specfun::hermite_function(k, lam * x);
      }
      CHECK(std::abs(s * h - (n == k ? 1.0 : 0.0)) < 1e-8);
    }
  }
}
