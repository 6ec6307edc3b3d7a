#pragma once

// Brute-force ground truth. Every quantity is recomputed from pointwise samples
// of the wave function: L_z by finite differences, phi by pointwise
// multiplication, inner products by quadrature on a dense grid. Nothing here
// touches the spectral matrices.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "angulab/observable.hpp"
#include "angulab/relations.hpp"
#include "angulab/specfun.hpp"
#include "angulab/states.hpp"

namespace angulab::oracle {

enum class GridDomain { Circle, Line };

/// Equispaced grid with high-order (Gregory-corrected trapezoid) weights.
///
/// On the circle the nodes are 2 pi j / n for j = 0 .. n. The last node is not
/// the point 2 pi itself (which is outside [0, 2 pi)) but carries the left
/// limit phi -> 2 pi - 0, so that integrands containing the non-periodic
/// factor phi are integrated on the closed interval without an O(h) end error.
struct Grid1D {
  std::vector<double> points;
  std::vector<double> weights;
  double spacing = 0.0;
  GridDomain domain = GridDomain::Circle;

  std::size_t size() const noexcept { return points.size(); }
  static Grid1D circle(int intervals);
  static Grid1D line(double half_width, int intervals);
};

/// Gauss-Legendre in cos(theta) times a closed circle grid in phi.
/// Samples are stored row-major: index = theta_index * phi_grid.size() + phi_index.
struct Grid2D {
  specfun::QuadratureRule theta_rule;
  Grid1D phi_grid;

  std::size_t size() const noexcept { return theta_rule.size() * phi_grid.size(); }
  double total_weight() const noexcept;
  static Grid2D sphere(int theta_nodes, int phi_intervals);
};

/// sum_i w_i conj(f_i) g_i. Throws std::invalid_argument on length mismatch.
cplx quad_inner(std::span<const cplx> f, std::span<const cplx> g, const Grid1D& grid);
cplx quad_inner(std::span<const cplx> f, std::span<const cplx> g, const Grid2D& grid);

/// Fourth-order central differences in the interior, one-sided fourth-order
/// stencils at the first two and last two nodes (forward at the start,
/// backward at the end). Never wraps around, not even on the circle.
std::vector<cplx> numeric_derivative(std::span<const cplx> samples, const Grid1D& grid);

struct Resolution {
  int circle_intervals = 4096;
  int line_intervals = 4096;
  /// 0 picks default_line_half_width(state).
  double line_half_width = 0.0;
  int theta_nodes = 128;
  int phi_intervals = 1024;
};

/// max(8, sqrt(2 n_max + 1) + 7) / lambda, where n_max is the highest
/// occupied level. |h_n|^2 has fallen below 1e-40 there for n <= 64.
double default_line_half_width(const OscillatorState& state);

class OracleEvaluator final : public Evaluator {
 public:
  explicit OracleEvaluator(const State& state, Resolution resolution = {});

  std::string_view name() const noexcept override { return "oracle"; }
  Family family() const noexcept override { return family_; }
  double hbar() const noexcept override { return hbar_; }
  bool supports(const Observable& a) const noexcept override;
  cplx cross(const Observable& a, const Observable& b) const override;
  cplx compose(const Observable& a, const Observable& b) const override;
  std::optional<cplx> boundary_value() const override;
  double hermitian_tolerance() const noexcept override { return 1e-6; }
  /// Inner product of the sampled deviation vectors (A - <A>) psi. Avoids the
  /// cancellation in <AB> - <A><B> that the generic expansion suffers on a grid.
  cplx deviation_inner(const Observable& a, const Observable& b) const override;

  const std::vector<cplx>& samples() const noexcept { return psi_; }
  /// A applied to sampled values.
  std::vector<cplx> apply(const Observable& a, const std::vector<cplx>& samples) const;
  cplx inner(const std::vector<cplx>& f, const std::vector<cplx>& g) const;
  const Grid1D& grid() const noexcept { return grid1_; }
  const Grid2D& sphere_grid() const noexcept { return grid2_; }

 private:
  std::vector<cplx> derivative(const std::vector<cplx>& samples) const;
  std::vector<cplx> multiply(const AngularFunction& f, const std::vector<cplx>& samples) const;

  Family family_;
  double hbar_;
  double inertia_ = 0.0;
  double omega_ = 0.0;
  Grid1D grid1_;   // circle or line; phi grid of the sphere lives in grid2_
  Grid2D grid2_;
  std::vector<cplx> psi_;
};

/// Samples of a circle or line state on a 1D grid (the last circle node
/// holds psi(2 pi - 0)).
std::vector<cplx> sample_state(const State& state, const Grid1D& grid);

struct ScenarioDescriptor {
  State state;
  std::string relation;
  Resolution resolution{};
};

/// Recomputes a named relation from grid samples; same result shape as the
/// spectral path. Throws std::invalid_argument for an unknown relation name.
relations::Outcome oracle_report(const ScenarioDescriptor& scenario);

}  // namespace angulab::oracle
