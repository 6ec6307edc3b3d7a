#pragma once

// The three state families: superpositions of circle harmonics e^{im phi}/sqrt(2 pi)
// on [0, 2 pi), torsion-pendulum states expanded in Hermite functions of
// xi = phi sqrt(J omega / hbar) on the whole line, and fixed-l superpositions of
// spherical harmonics. States are immutable values, normalized on construction.

#include <complex>
#include <map>
#include <string_view>
#include <variant>
#include <vector>

namespace angulab {

using cplx = std::complex<double>;

/// Dense coefficient block indexed by consecutive integer labels starting at
/// first_label (m on the circle and sphere, n on the line). Labels outside the
/// block read as zero.
struct Coefficients {
  int first_label = 0;
  std::vector<cplx> values;

  Coefficients() = default;
  Coefficients(int first, std::vector<cplx> v) : first_label(first), values(std::move(v)) {}
  static Coefficients zeros(int first, int last);

  bool empty() const noexcept { return values.empty(); }
  int last_label() const noexcept { return first_label + static_cast<int>(values.size()) - 1; }
  bool contains(int label) const noexcept {
    return !values.empty() && label >= first_label && label <= last_label();
  }
  cplx at(int label) const noexcept {
    return contains(label) ? values[static_cast<std::size_t>(label - first_label)] : cplx{};
  }
  cplx& ref(int label) { return values.at(static_cast<std::size_t>(label - first_label)); }

  double squared_norm() const noexcept;
  /// Smallest block that keeps every nonzero entry.
  Coefficients trimmed() const;
  Coefficients& operator+=(const Coefficients& other);
  Coefficients& operator*=(cplx scale);
};

/// Conjugate-linear in the first argument.
cplx dot(const Coefficients& a, const Coefficients& b) noexcept;
Coefficients operator+(Coefficients a, const Coefficients& b);
Coefficients operator*(cplx s, Coefficients a);

enum class Family { Periodic, Oscillator, Sphere };
std::string_view family_name(Family f) noexcept;

inline constexpr int kDefaultCircleTruncation = 64;
inline constexpr int kDefaultOscillatorTruncation = 64;
inline constexpr double kNormalizationTolerance = 1e-12;

class PeriodicState {
 public:
  /// Coefficients must already be unit-norm (to 1e-12) and fit in [-M, M].
  PeriodicState(Coefficients coefficients, int truncation, double hbar);

  const Coefficients& coefficients() const noexcept { return coefficients_; }
  int truncation() const noexcept { return truncation_; }
  double hbar() const noexcept { return hbar_; }
  cplx coefficient(int m) const noexcept { return coefficients_.at(m); }

 private:
  Coefficients coefficients_;  // labels -M .. M
  int truncation_;
  double hbar_;
};

class OscillatorState {
 public:
  OscillatorState(Coefficients coefficients, int truncation, double inertia, double omega,
                  double hbar);

  const Coefficients& coefficients() const noexcept { return coefficients_; }
  int truncation() const noexcept { return truncation_; }
  double inertia() const noexcept { return inertia_; }
  double omega() const noexcept { return omega_; }
  double hbar() const noexcept { return hbar_; }
  /// xi = lambda * phi with lambda = sqrt(J omega / hbar).
  double lambda() const noexcept { return lambda_; }
  cplx coefficient(int n) const noexcept { return coefficients_.at(n); }

 private:
  Coefficients coefficients_;  // labels 0 .. N
  int truncation_;
  double inertia_;
  double omega_;
  double hbar_;
  double lambda_;
};

class SphereState {
 public:
  SphereState(int l, Coefficients coefficients, double hbar);

  int l() const noexcept { return l_; }
  const Coefficients& coefficients() const noexcept { return coefficients_; }
  double hbar() const noexcept { return hbar_; }
  cplx coefficient(int m) const noexcept { return coefficients_.at(m); }

 private:
  int l_;
  Coefficients coefficients_;  // labels -l .. l
  double hbar_;
};

using State = std::variant<PeriodicState, OscillatorState, SphereState>;

Family family_of(const State& state) noexcept;
double hbar_of(const State& state) noexcept;

namespace states {

PeriodicState scr_eigenstate(int m, int truncation = kDefaultCircleTruncation, double hbar = 1.0);

/// Rescales to unit norm, keeping the input's global phase. Truncation defaults
/// to max(kDefaultCircleTruncation, max |m|).
PeriodicState periodic_superposition(const std::map<int, cplx>& coefficients, double hbar = 1.0,
                                     int truncation = 0);

OscillatorState qtp_eigenstate(int n, double inertia = 1.0, double omega = 1.0, double hbar = 1.0,
                               int truncation = kDefaultOscillatorTruncation);

OscillatorState oscillator_superposition(const std::map<int, cplx>& coefficients,
                                         double inertia = 1.0, double omega = 1.0,
                                         double hbar = 1.0, int truncation = 0);

SphereState sphere_state(int l, const std::map<int, cplx>& coefficients, double hbar = 1.0);

/// psi(phi) for phi in [0, 2 pi).
cplx evaluate(const PeriodicState& state, double phi);
/// psi(phi) = sum_n b_n sqrt(lambda) h_n(lambda phi) for any finite phi.
cplx evaluate(const OscillatorState& state, double phi);
/// psi(theta, phi) for theta in [0, pi], phi in [0, 2 pi).
cplx evaluate(const SphereState& state, double theta, double phi);

/// The left limit psi(2 pi - 0); equals psi(0) because every member of the
/// circle basis is 2 pi periodic.
cplx boundary_value(const PeriodicState& state);

}  // namespace states
}  // namespace angulab
