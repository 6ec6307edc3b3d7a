#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "angulab/angular_function.hpp"
#include "angulab/states.hpp"

namespace angulab {

enum class ObservableKind { Identity, Lz, Multiplication, Hamiltonian, Matrix };

/// Named tags for the observables the library knows by name; anything else
/// is Custom and carries its own label.
enum class ObservableTag { Identity, Lz, Phi, Phi2, SinPhi, CosPhi, Hamiltonian, Custom };

class Observable {
 public:
  static Observable identity();
  /// L_z = -i hbar d/dphi.
  static Observable lz();
  static Observable phi();
  static Observable phi_squared();
  static Observable sin_phi();
  static Observable cos_phi();
  /// L_z^2 / 2J + J omega^2 phi^2 / 2, with J and omega taken from the state.
  static Observable hamiltonian();
  /// Multiplication by f(phi). Hermitian exactly when f is real-valued.
  static Observable multiplication(std::string label, AngularFunction f);
  /// A coefficient-space matrix acting on basis labels
  /// first_label .. first_label + rows - 1 of the state it is applied to.
  static Observable matrix(std::string label, Eigen::MatrixXcd action, int first_label,
                           bool hermitian);

  ObservableKind kind() const noexcept { return kind_; }
  ObservableTag tag() const noexcept { return tag_; }
  const std::string& label() const noexcept { return label_; }
  bool hermitian() const noexcept { return hermitian_; }
  const AngularFunction& function() const noexcept { return function_; }
  const Eigen::MatrixXcd& action() const { return *action_; }
  int action_first_label() const noexcept { return action_first_label_; }

 private:
  Observable(ObservableKind kind, ObservableTag tag, std::string label);

  ObservableKind kind_;
  ObservableTag tag_;
  std::string label_;
  bool hermitian_ = true;
  AngularFunction function_;
  std::shared_ptr<const Eigen::MatrixXcd> action_;
  int action_first_label_ = 0;
};

/// Raised when an observable or relation has no meaning for a state family
/// (the Hamiltonian on the circle, a boundary bound on the line, ...).
class NotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed quantity is non-finite or breaks an asserted
/// numerical bound (e.g. a Hermitian mean with a sizeable imaginary part).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source of the inner products every moment and relation is built from.
/// Two implementations exist: the exact spectral one (operators module) and
/// the dense-grid oracle. Relations only ever talk to this interface.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual Family family() const noexcept = 0;
  virtual double hbar() const noexcept = 0;
  virtual bool supports(const Observable& a) const noexcept = 0;
  /// (A psi, B psi)
  virtual cplx cross(const Observable& a, const Observable& b) const = 0;
  /// (psi, A B psi), with B applied first
  virtual cplx compose(const Observable& a, const Observable& b) const = 0;
  /// psi(2 pi - 0) for circle states.
  virtual std::optional<cplx> boundary_value() const { return std::nullopt; }
  /// Bound on the imaginary part of a Hermitian mean before it is an error.
  virtual double hermitian_tolerance() const noexcept = 0;

  /// (psi, A psi)
  cplx expectation(const Observable& a) const { return cross(Observable::identity(), a); }
  /// Real mean of a Hermitian observable; throws std::invalid_argument for a
  /// non-Hermitian one and NumericalError if the imaginary part is too large.
  double mean(const Observable& a) const;
  /// (delta A psi, delta B psi) with delta A = A - <A>.
  virtual cplx deviation_inner(const Observable& a, const Observable& b) const;
  double std_dev(const Observable& a) const;

 protected:
  void require_supported(const Observable& a) const;
};

}  // namespace angulab
