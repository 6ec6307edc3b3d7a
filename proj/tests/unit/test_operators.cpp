#include <doctest.h>

#include <cmath>
#include <numbers>

#include "angulab/operators.hpp"
#include "angulab/oracle.hpp"
#include "angulab/random_states.hpp"

using namespace angulab;
using std::numbers::pi;

namespace {

// (e_m, f e_r) = (1 / 2 pi) \int_0^{2 pi} f(phi) e^{i (r - m) phi} dphi by
// composite Simpson; independent of the library's closed-form moments.
cplx simpson_element(int m, int r, double (*f)(double)) {
  const int N = 20000;
  const double h = 2 * pi / N;
  cplx s{};
  for (int i = 0; i <= N; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
    s += w * f(x) * std::exp(cplx{0, (r - m) * x});
  }
  return s * h / 3.0 / (2 * pi);
}

double id_phi(double x) { return x; }
double sq_phi(double x) { return x * x; }

}  // namespace

TEST_CASE("phi matrix elements match direct integration") {
  const auto P = ops::phi_matrix(3);
  const auto P2 = ops::phi2_matrix(3);
  for (int m = -3; m <= 3; ++m) {
    for (int r = -3; r <= 3; ++r) {
      CHECK(std::abs(P(m + 3, r + 3) - simpson_element(m, r, id_phi)) < 1e-10);
      CHECK(std::abs(P2(m + 3, r + 3) - simpson_element(m, r, sq_phi)) < 1e-9);
    }
  }
  CHECK(std::abs(P(3, 3) - pi) < 1e-15);
  CHECK(std::abs(P2(3, 3) - 4 * pi * pi / 3) < 1e-13);
}

TEST_CASE("scr moments") {
  for (int m : {-5, 0, 4}) {
    for (double hbar : {1.0, 0.5}) {
      const State s = states::scr_eigenstate(m, 64, hbar);
      CHECK(ops::mean(Observable::lz(), s) == doctest::Approx(hbar * m));
      CHECK(ops::std_dev(Observable::lz(), s) == 0.0);
      CHECK(ops::mean(Observable::phi(), s) == doctest::Approx(pi));
      CHECK(std::abs(ops::std_dev(Observable::phi(), s) - pi / std::sqrt(3.0)) < 1e-12);
      CHECK(std::abs(ops::mean(Observable::phi_squared(), s) - 4 * pi * pi / 3) < 1e-12);
    }
  }
}

TEST_CASE("two-level circle state moments") {
  // c_0 = c_1 = 1/sqrt 2: <phi> = pi, <phi^2> = 4 pi^2 / 3 + 2.
  const State s = states::periodic_superposition({{0, 1.0}, {1, 1.0}});
  CHECK(std::abs(ops::mean(Observable::phi(), s) - pi) < 1e-12);
  CHECK(std::abs(ops::mean(Observable::phi_squared(), s) - (4 * pi * pi / 3 + 2)) < 1e-12);
  CHECK(std::abs(ops::std_dev(Observable::lz(), s) - 0.5) < 1e-14);
  CHECK(std::abs(ops::mean(Observable::cos_phi(), s) - 0.5) < 1e-14);
  CHECK(std::abs(ops::mean(Observable::sin_phi(), s)) < 1e-14);
}

TEST_CASE("oscillator closed forms") {
  for (int n : {0, 1, 5}) {
    for (auto [J, w] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
      const double hbar = 1.0;
      const State s = states::qtp_eigenstate(n, J, w, hbar);
      CHECK(std::abs(ops::std_dev(Observable::lz(), s) - std::sqrt(hbar * J * w * (n + 0.5))) < 1e-10);
      CHECK(std::abs(ops::std_dev(Observable::phi(), s) - std::sqrt(hbar * (n + 0.5) / (J * w))) < 1e-10);
      CHECK(std::abs(ops::mean(Observable::hamiltonian(), s) - hbar * w * (n + 0.5)) < 1e-10);
      CHECK(std::abs(ops::qtp_energy_mean(std::get<OscillatorState>(s)) - hbar * w * (n + 0.5)) < 1e-10);
    }
  }
}

TEST_CASE("Hamiltonian is oscillator-only") {
  const SpectralEvaluator ev(states::scr_eigenstate(1));
  CHECK_FALSE(ev.supports(Observable::hamiltonian()));
  CHECK_THROWS(ev.mean(Observable::hamiltonian()));
}

TEST_CASE("sphere closed-form variances") {
  const SphereState single = states::sphere_state(2, {{1, 1.0}});
  const auto v = ops::sphere_variances(single);
  CHECK(v.var_lz == doctest::Approx(0.0));
  CHECK(std::abs(v.var_phi - pi * pi / 3) < 1e-10);

  // Equal mix of m = -1 and m = 1 at l = 1: var L_z = hbar^2.
  const SphereState mix = states::sphere_state(1, {{-1, 1.0}, {1, 1.0}});
  const auto w = ops::sphere_variances(mix);
  CHECK(std::abs(w.var_lz - 1.0) < 1e-14);
  CHECK(std::abs(w.var_lz - std::pow(ops::std_dev(Observable::lz(), mix), 2)) < 1e-12);
  CHECK(std::abs(w.var_phi - std::pow(ops::std_dev(Observable::phi(), mix), 2)) < 1e-10);
}

TEST_CASE("deviation inner product structure") {
  const State s = states::periodic_superposition({{-1, 0.3}, {0, cplx{0.2, 0.5}}, {2, -0.7}});
  const SpectralEvaluator ev(s);
  const auto a = Observable::lz();
  const auto b = Observable::phi();
  const cplx ab = ev.deviation_inner(a, b);
  const cplx ba = ev.deviation_inner(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
  CHECK(std::abs(ev.deviation_inner(a, a).real() - std::pow(ev.std_dev(a), 2)) < 1e-12);
  CHECK(std::abs(ev.deviation_inner(a, a).imag()) < 1e-12);
}

TEST_CASE("commutator residual on the sampled grid") {
  CHECK(ops::commutator_residual(states::scr_eigenstate(3), oracle::Grid1D::circle(1024)) < 1e-6);
  const OscillatorState q = states::qtp_eigenstate(2);
  const auto grid = oracle::Grid1D::line(oracle::default_line_half_width(q), 1024);
  CHECK(ops::commutator_residual(q, grid) < 1e-6);
  CHECK_THROWS_AS(ops::commutator_residual(states::sphere_state(1, {{0, 1.0}}), oracle::Grid1D::circle(64)),
                  NotApplicable);
}

TEST_CASE("user multiplication observables") {
  const auto f = AngularFunction::cos_phi() * AngularFunction::cos_phi();
  const Observable c2 = Observable::multiplication("Cos2", f);
  CHECK(c2.hermitian());
  // <cos^2> = 1/2 on every circle eigenstate.
  CHECK(std::abs(ops::mean(c2, states::scr_eigenstate(4)) - 0.5) < 1e-14);
  const Observable e = Observable::multiplication("Exp", AngularFunction::monomial(1.0, 0, 1));
  CHECK_FALSE(e.hermitian());
}

TEST_CASE("L_z acts by its eigenvalues") {
  for (int m = -6; m <= 6; ++m) {
    const auto v = ops::apply_lz(states::scr_eigenstate(m, 6, 0.5));
    for (int r = -6; r <= 6; ++r) CHECK(std::abs(v.at(r) - (r == m ? cplx{0.5 * m} : cplx{})) < 1e-15);
  }
  const auto sp = ops::apply_lz(states::sphere_state(1, {{-1, 1.0}}));
  CHECK(std::abs(sp.at(-1) + 1.0) < 1e-15);
  // -i hbar d/dphi on h_0(lambda phi) lands purely on h_1 with modulus hbar lambda / sqrt 2.
  const OscillatorState q = states::qtp_eigenstate(0, 4.0, 1.0, 1.0);
  const auto w = ops::apply_lz(q);
  CHECK(std::abs(w.at(0)) < 1e-15);
  CHECK(std::abs(std::abs(w.at(1)) - q.lambda() / std::sqrt(2.0)) < 1e-14);
  for (int n = 2; n <= w.last_label(); ++n) CHECK(std::abs(w.at(n)) < 1e-15);
}

TEST_CASE("phi matrices are Hermitian") {
  const auto P = ops::phi_matrix(8);
  const auto P2 = ops::phi2_matrix(8);
  CHECK((P - P.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((P2 - P2.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(P(8, 9) - cplx{0, -1}) < 1e-15);  // (e_0, phi e_1)
  CHECK(std::abs(P(9, 8) - cplx{0, 1}) < 1e-15);
}

TEST_CASE("phi on the oscillator ground state") {
  const OscillatorState q = states::qtp_eigenstate(0);
  const auto a = ops::apply_phi(q);
  CHECK(std::abs(a.coefficients.at(0)) < 1e-15);
  CHECK(std::abs(a.coefficients.at(1) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(a.tail_norm == 0.0);
  CHECK(std::abs(ops::mean(Observable::phi(), q)) < 1e-15);
}

TEST_CASE("energy examples") {
  CHECK(std::abs(ops::qtp_energy_mean(states::qtp_eigenstate(3, 1.0, 2.0)) - 7.0) < 1e-12);
  const OscillatorState mix = states::oscillator_superposition({{0, 1.0}, {1, 1.0}});
  CHECK(std::abs(ops::qtp_energy_mean(mix) - 1.0) < 1e-12);
}

TEST_CASE("deviation vectors are orthogonal to the state") {
  random::Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const State states_[] = {random::random_periodic(rng, 4), random::random_oscillator(rng, 5, 1.5, 0.7),
                             random::random_sphere(rng, 2)};
    for (const State& s : states_) {
      const SpectralEvaluator ev(s);
      for (const Observable& a : {Observable::lz(), Observable::phi(), Observable::cos_phi()}) {
        const auto d = ops::deviation_vector(a, ev);
        const DeviationVector identity{Observable::multiplication("One", AngularFunction::constant(1.0)),
                                       ev.psi()};
        CHECK(std::abs(ops::inner_product(ev, identity, d)) < 1e-12);
      }
    }
  }
}

TEST_CASE("commutator residual on 512 intervals and its hbar scaling") {
  const auto circle = oracle::Grid1D::circle(512);
  CHECK(ops::commutator_residual(states::scr_eigenstate(1), circle) < 1e-6);
  const OscillatorState q = states::qtp_eigenstate(0);
  CHECK(ops::commutator_residual(q, oracle::Grid1D::line(oracle::default_line_half_width(q), 512)) < 1e-6);
  const State s1 = states::periodic_superposition({{0, 1.0}, {2, cplx{0, 1}}}, 1.0);
  const State s2 = states::periodic_superposition({{0, 1.0}, {2, cplx{0, 1}}}, 2.0);
  const double r1 = ops::commutator_residual(s1, circle);
  const double r2 = ops::commutator_residual(s2, circle);
  CHECK(std::abs(r2 - 2 * r1) <= 1e-6 * r2 + 1e-15);
}

TEST_CASE("closed forms against the spectral path up to n = 20") {
  for (int n = 0; n <= 20; ++n) {
    const OscillatorState q = states::qtp_eigenstate(n, 1.7, 0.6);
    const SpectralEvaluator ev{State{q}};
    const double J = 1.7, w = 0.6;
    CHECK(std::abs(ev.std_dev(Observable::lz()) - std::sqrt(J * w * (n + 0.5))) < 1e-10);
    CHECK(std::abs(ev.std_dev(Observable::phi()) - std::sqrt((n + 0.5) / (J * w))) < 1e-10);
  }
}
