#include <benchmark/benchmark.h>

#include "angulab/operators.hpp"
#include "angulab/oracle.hpp"
#include "angulab/random_states.hpp"
#include "angulab/relations.hpp"
#include "angulab/specfun.hpp"

using namespace angulab;

static void BM_HermiteFunctions(benchmark::State& st) {
  std::vector<double> row(static_cast<std::size_t>(st.range(0)));
  double xi = 0.3;
  for (auto _ : st) {
    specfun::hermite_functions(xi, row);
    benchmark::DoNotOptimize(row.data());
    xi += 1e-9;
  }
}
BENCHMARK(BM_HermiteFunctions)->Arg(16)->Arg(128)->Arg(512);

static void BM_GaussHermiteRule(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(specfun::gauss_hermite(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(32)->Arg(128);

static void BM_SpectralRsur(benchmark::State& st) {
  random::Rng rng(1);
  const State s = random::random_periodic(rng, static_cast<int>(st.range(0)));
  const SpectralEvaluator ev(s);
  for (auto _ : st) benchmark::DoNotOptimize(relations::rsur(ev, Observable::lz(), Observable::phi()));
}
BENCHMARK(BM_SpectralRsur)->Arg(2)->Arg(8)->Arg(32);

static void BM_OscillatorCsf(benchmark::State& st) {
  random::Rng rng(2);
  const State s = random::random_oscillator(rng, static_cast<int>(st.range(0)));
  const SpectralEvaluator ev(s);
  for (auto _ : st) benchmark::DoNotOptimize(relations::csf(ev, Observable::lz(), Observable::sin_phi()));
}
BENCHMARK(BM_OscillatorCsf)->Arg(2)->Arg(10);

static void BM_SphereEq24(benchmark::State& st) {
  random::Rng rng(3);
  const State s = random::random_sphere(rng, static_cast<int>(st.range(0)));
  const SpectralEvaluator ev(s);
  for (auto _ : st) benchmark::DoNotOptimize(relations::scenario_eq24(ev));
}
BENCHMARK(BM_SphereEq24)->Arg(1)->Arg(3)->Arg(8);

static void BM_OracleCircle(benchmark::State& st) {
  const State s = states::periodic_superposition({{-2, 1.0}, {1, 0.5}, {3, cplx{0, 0.2}}});
  oracle::Resolution res;
  res.circle_intervals = static_cast<int>(st.range(0));
  for (auto _ : st) {
    const oracle::OracleEvaluator ev(s, res);
    benchmark::DoNotOptimize(relations::condition19(ev, Observable::lz(), Observable::phi()));
  }
}
BENCHMARK(BM_OracleCircle)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMicrosecond);

static void BM_OracleSphere(benchmark::State& st) {
  const State s = states::sphere_state(2, {{-1, 1.0}, {0, 0.5}, {2, cplx{0, 0.3}}});
  for (auto _ : st) {
    const oracle::OracleEvaluator ev(s);
    benchmark::DoNotOptimize(ev.std_dev(Observable::phi()));
  }
}
BENCHMARK(BM_OracleSphere)->Unit(benchmark::kMillisecond);

static void BM_CommutatorResidual(benchmark::State& st) {
  const State s = states::qtp_eigenstate(3);
  const auto grid = oracle::Grid1D::line(oracle::default_line_half_width(std::get<OscillatorState>(s)),
                                         static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ops::commutator_residual(s, grid));
}
BENCHMARK(BM_CommutatorResidual)->Arg(1024)->Arg(8192)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
