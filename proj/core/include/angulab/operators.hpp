#pragma once

// Operator algebra of L_z = -i hbar d/dphi and phi on each family, plus the
// first and second moments built from it.

#include <Eigen/Dense>

#include "angulab/basis.hpp"
#include "angulab/observable.hpp"
#include "angulab/oracle.hpp"
#include "angulab/states.hpp"

namespace angulab {

/// Exact coefficient-space evaluator. Every inner product is a finite sum of
/// closed-form or exactly-integrated matrix elements; nothing is truncated.
class SpectralEvaluator final : public Evaluator {
 public:
  explicit SpectralEvaluator(State state);

  std::string_view name() const noexcept override { return "spectral"; }
  Family family() const noexcept override { return family_of(state_); }
  double hbar() const noexcept override { return hbar_of(state_); }
  bool supports(const Observable& a) const noexcept override;
  cplx cross(const Observable& a, const Observable& b) const override;
  cplx compose(const Observable& a, const Observable& b) const override;
  std::optional<cplx> boundary_value() const override;
  double hermitian_tolerance() const noexcept override { return 1e-10; }

  const State& state() const noexcept { return state_; }
  const spectral::Basis& basis() const noexcept { return basis_; }
  const spectral::Image& psi() const noexcept { return psi_; }
  /// A psi.
  spectral::Image image(const Observable& a) const;
  /// A applied to an arbitrary image.
  spectral::Image apply(const Observable& a, const spectral::Image& x) const;
  cplx inner(const spectral::Image& x, const spectral::Image& y) const;

 private:
  State state_;
  spectral::Basis basis_;
  spectral::Image psi_;
};

/// delta A psi = A psi - <A> psi, kept in exact image form.
struct DeviationVector {
  Observable observable;
  spectral::Image image;
};

/// A coefficient block with the norm of whatever fell outside it.
struct PhiAction {
  Coefficients coefficients;
  double tail_norm = 0.0;
};

/// phi acting on a fixed-l sphere state: column m of row r holds the
/// coefficient of Theta_lr(theta) e^{i m phi} / sqrt(2 pi).
struct SpherePhiAction {
  int l = 0;
  int truncation = 0;
  Eigen::MatrixXcd coefficients;
  double tail_norm = 0.0;
};

struct SphereVariances {
  double var_lz = 0.0;
  double var_phi = 0.0;
};

namespace ops {

/// Diagonal on the circle and sphere (hbar m), tridiagonal on the line.
Coefficients apply_lz(const State& state);

/// (e_m, phi e_r) for m, r in [-M, M], indexed [m + M][r + M].
Eigen::MatrixXcd phi_matrix(int truncation);
/// (e_m, phi^2 e_r) for m, r in [-M, M].
Eigen::MatrixXcd phi2_matrix(int truncation);

/// Projection of phi psi onto the state's own truncation [-M, M].
PhiAction apply_phi(const PeriodicState& state);
/// Exact: phi = xi / lambda and the basis grows by one.
PhiAction apply_phi(const OscillatorState& state);
SpherePhiAction apply_phi(const SphereState& state, int truncation = kDefaultCircleTruncation);

cplx inner_product(const State& x, const State& y);
cplx inner_product(const SpectralEvaluator& ev, const DeviationVector& x, const DeviationVector& y);

double mean(const Observable& a, const State& state);
double std_dev(const Observable& a, const State& state);
DeviationVector deviation_vector(const Observable& a, const SpectralEvaluator& ev);

/// Closed-form sphere moments: var L_z from the |c_m|^2 sums, var phi from the
/// double sums over (Y_lm, phi Y_lr) and (Y_lm, phi^2 Y_lr).
SphereVariances sphere_variances(const SphereState& state);

/// max over interior grid nodes of |(L_z phi - phi L_z) psi + i hbar psi|,
/// with derivatives from oracle::numeric_derivative. Circle and line only.
double commutator_residual(const State& state, const oracle::Grid1D& grid);

/// <H> for the torsion pendulum via the tridiagonal xi algebra:
/// (hbar omega / 2) (||d/dxi psi||^2 + ||xi psi||^2).
double qtp_energy_mean(const OscillatorState& state);

}  // namespace ops
}  // namespace angulab
