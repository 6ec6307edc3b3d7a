#pragma once

// Uncertainty-type inequalities and the identities around them. Every checker
// talks to an Evaluator, so the same code runs on exact spectral inner
// products and on the dense-grid oracle.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "angulab/observable.hpp"
#include "angulab/states.hpp"

namespace angulab::relations {

using Detail = std::variant<double, cplx>;

struct RelationReport {
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  double tolerance = 0.0;
  std::map<std::string, Detail> details;

  /// Fills slack and satisfied; throws NumericalError on a non-finite side.
  static RelationReport make(std::string relation, double lhs, double rhs, double tolerance);
};

/// Delta_jk = (A_j psi, A_k psi) - (psi, A_j A_k psi).
struct MismatchMatrix {
  Eigen::MatrixXcd entries;
  std::vector<std::string> observables;
  double max_modulus = 0.0;

  cplx at(std::size_t j, std::size_t k) const {
    return entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }
};

struct Decomposition {
  double symmetric = 0.0;      // Re (dA psi, dB psi)
  double antisymmetric = 0.0;  // Im (dA psi, dB psi)
  double residual = 0.0;
  double condition19_norm = 0.0;
  bool applicable = false;
  std::string diagnostic;
};

struct Eq24Result {
  cplx direct_mismatch;
  /// i hbar (1 + 2 Im S) with S = sum c_m^* c_r hbar m (Y_lm, phi Y_lr). Equals
  /// direct_mismatch only when hbar = 1; the exact form is i hbar + 2 i Im S.
  cplx factored_formula;
  double discrepancy = 0.0;
};

/// Tolerance used for inequality verdicts when the caller does not pass one:
/// 1e-10 for exact evaluators, the evaluator's own Hermitian tolerance otherwise.
double default_tolerance(const Evaluator& ev);

/// Delta A * Delta B >= |(dA psi, dB psi)|.
RelationReport csf(const Evaluator& ev, const Observable& a, const Observable& b,
                   std::optional<double> tolerance = std::nullopt);

MismatchMatrix condition19(const Evaluator& ev, const std::vector<Observable>& observables);
MismatchMatrix condition19(const Evaluator& ev, const Observable& a, const Observable& b);

/// Delta A * Delta B >= |<[A, B]>| / 2 with the commutator mean computed
/// directly as (psi, AB psi) - (psi, BA psi). The report carries the mismatch
/// norm; when that is below 1e-8 it also carries the commutator mean
/// recovered from 2 i Im (dA psi, dB psi).
RelationReport rsur(const Evaluator& ev, const Observable& a, const Observable& b,
                    std::optional<double> tolerance = std::nullopt);

Decomposition decomposition(const Evaluator& ev, const Observable& a, const Observable& b,
                            double threshold = 1e-8);

/// Circle states only. Two reports sharing rhs = (hbar/2) |1 - 2 pi B|:
/// "boundary-inner" with lhs |(dL psi, dphi psi)| and "boundary-product" with
/// lhs Delta L_z * Delta phi. B = |psi(2 pi - 0)|^2, or the bare modulus when
/// single_modulus is set.
std::vector<RelationReport> boundary_bound(const Evaluator& ev, bool single_modulus = false,
                                           std::optional<double> tolerance = std::nullopt);

enum class AdjustedForm { Ratio, Product, Sum };

/// Adjusted L_z - phi relations.
///   Ratio:   Delta L * Delta phi / a(Delta phi) >= hbar |<b>|
///   Product: Delta L * Delta f >= hbar |<g>|
///   Sum:     (Delta L)^2 + hbar^2 (Delta u)^2 >= hbar^2 <v>^2
struct AdjustedSpec {
  std::string name;
  AdjustedForm form = AdjustedForm::Product;
  std::function<double(double)> a;
  AngularFunction b;
  AngularFunction f;
  AngularFunction g;
  AngularFunction u;
  AngularFunction v;

  /// f = sin, g = cos / 2.
  static AdjustedSpec eq8_sin();
  /// f = cos, g = sin / 2.
  static AdjustedSpec eq8_cos();
  /// u = sin, v = cos.
  static AdjustedSpec eq9_trig();
};

/// Throws std::invalid_argument if a required function is missing or f, u
/// are not real-valued.
RelationReport adjusted_relation(const Evaluator& ev, const AdjustedSpec& spec,
                                 std::optional<double> tolerance = std::nullopt);

/// det of the Gram matrix of deviation vectors >= 0; details carry the
/// minimum eigenvalue and the imaginary residue of the determinant.
RelationReport gram_det(const Evaluator& ev, const std::vector<Observable>& observables,
                        double tolerance = 1e-9);

/// Sphere states only.
Eq24Result scenario_eq24(const Evaluator& ev);

struct AnnulmentSearch {
  double s = 0.0;
  SphereState state;
  cplx mismatch;
};

/// Minimizes |(L psi, phi psi) - (psi, L phi psi)| over the l = 1 family
/// c = (s, sqrt(1 - 2 s^2), s), s in [0, 1/sqrt 2], by golden-section search.
AnnulmentSearch find_annulling_sphere_state(double hbar = 1.0);

struct RunOptions {
  std::optional<Observable> a;  // default Lz
  std::optional<Observable> b;  // default Phi
  std::vector<Observable> gram_set;  // default {Lz, Phi, SinPhi}
  double decomposition_threshold = 1e-8;
  bool single_modulus = false;
  int commutator_points = 1024;
};

/// Result of one named registry entry. Exactly the fields that the relation
/// produces are set; not_applicable is set instead when the relation has no
/// meaning for the state's family.
struct Outcome {
  std::string relation;
  std::vector<RelationReport> reports;
  std::optional<MismatchMatrix> mismatch;
  std::optional<Decomposition> decomposition;
  std::optional<Eq24Result> eq24;
  std::map<std::string, Detail> values;
  std::optional<std::string> not_applicable;
};

const std::vector<std::string>& registry();
bool is_registered(const std::string& name);

/// Runs a registry entry. Throws std::invalid_argument for an unknown name.
Outcome run_named(const std::string& name, const State& state, const Evaluator& ev,
                  const RunOptions& options = {});

}  // namespace angulab::relations
