#pragma once

// Reproducible random states. The generator is std::mt19937_64, whose output
// sequence is fixed by the standard, and every draw is derived from raw 64-bit
// outputs by explicit arithmetic (no std::*_distribution), so a seed gives the
// same states on every platform and standard library.

#include <cstdint>
#include <random>

#include "angulab/states.hpp"

namespace angulab::random {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer on [lo, hi].
  int integer(int lo, int hi);
  /// Real and imaginary parts independently uniform on (-1, 1).
  cplx coefficient() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 engine_;
};

/// Superposition of e_m, |m| <= bandwidth, with random complex weights.
PeriodicState random_periodic(Rng& rng, int bandwidth = 4, double hbar = 1.0);

/// Superposition of levels n <= max_level with random complex weights.
OscillatorState random_oscillator(Rng& rng, int max_level = 4, double inertia = 1.0,
                                  double omega = 1.0, double hbar = 1.0);

/// Random fixed-l state with every m populated.
SphereState random_sphere(Rng& rng, int l, double hbar = 1.0);

}  // namespace angulab::random
