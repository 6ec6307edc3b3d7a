#include "angulab/random_states.hpp"

#include <map>
#include <stdexcept>

namespace angulab::random {

int Rng::integer(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

PeriodicState random_periodic(Rng& rng, int bandwidth, double hbar) {
  if (bandwidth < 0) throw std::invalid_argument("random_periodic: bandwidth must be >= 0");
  std::map<int, cplx> c;
  for (int m = -bandwidth; m <= bandwidth; ++m) c[m] = rng.coefficient();
  return states::periodic_superposition(c, hbar);
}

OscillatorState random_oscillator(Rng& rng, int max_level, double inertia, double omega,
                                  double hbar) {
  if (max_level < 0) throw std::invalid_argument("random_oscillator: max_level must be >= 0");
  std::map<int, cplx> c;
  for (int n = 0; n <= max_level; ++n) c[n] = rng.coefficient();
  return states::oscillator_superposition(c, inertia, omega, hbar);
}

SphereState random_sphere(Rng& rng, int l, double hbar) {
  std::map<int, cplx> c;
  for (int m = -l; m <= l; ++m) c[m] = rng.coefficient();
  return states::sphere_state(l, c, hbar);
}

}  // namespace angulab::random
