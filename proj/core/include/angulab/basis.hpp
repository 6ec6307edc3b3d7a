#pragma once

// Coefficient-space machinery behind the spectral evaluator.
//
// The image of a state under a chain of observables is kept as
//     v + sum_k f_k(phi) * u_k
// with v and u_k coefficient vectors in the family's basis and f_k angular
// functions. Multiplication by f never has to be truncated: inner products
// of such images reduce to bilinear forms (u, f w) that each basis evaluates
// exactly (closed-form Fourier moments on the circle and sphere, Gauss-Hermite
// quadrature of sufficient order on the line).

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "angulab/angular_function.hpp"
#include "angulab/states.hpp"

namespace angulab::spectral {

struct Term {
  AngularFunction function;
  Coefficients vector;
};

struct Image {
  Coefficients vector;
  std::vector<Term> terms;

  static Image of(Coefficients v) { return Image{std::move(v), {}}; }
  Image& operator+=(const Image& other);
  Image& operator*=(cplx scale);
  /// Merges terms that share a function.
  void compact();
};

Image operator+(Image a, const Image& b);
Image operator*(cplx s, Image a);

/// e^{i m phi} / sqrt(2 pi) on [0, 2 pi).
class FourierBasis {
 public:
  explicit FourierBasis(double hbar) : hbar_(hbar) {}
  double hbar() const noexcept { return hbar_; }
  Coefficients apply_lz(const Coefficients& v) const;
  cplx form(const Coefficients& left, const AngularFunction& f, const Coefficients& right) const;
  Coefficients project(const AngularFunction& f, const Coefficients& u, int first, int last) const;

 private:
  double hbar_;
};

/// sqrt(lambda) h_n(lambda phi) on the real line.
class HermiteBasis {
 public:
  HermiteBasis(double hbar, double lambda) : hbar_(hbar), lambda_(lambda) {}
  double hbar() const noexcept { return hbar_; }
  double lambda() const noexcept { return lambda_; }
  Coefficients apply_lz(const Coefficients& v) const;
  /// xi v with xi h_n = sqrt(n/2) h_{n-1} + sqrt((n+1)/2) h_{n+1}.
  Coefficients apply_xi(const Coefficients& v) const;
  /// d/dxi v with h_n' = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}.
  Coefficients apply_dxi(const Coefficients& v) const;
  cplx form(const Coefficients& left, const AngularFunction& f, const Coefficients& right) const;
  Coefficients project(const AngularFunction& f, const Coefficients& u, int first, int last) const;
  /// Gauss-Hermite order used for a form between labels up to max_label with f.
  int quadrature_order(int max_label, const AngularFunction& f) const;

 private:
  double hbar_;
  double lambda_;
};

/// Y_lm at fixed l: circle harmonics in phi times polar factors Theta_lm.
class SphereBasis {
 public:
  SphereBasis(double hbar, int l);
  double hbar() const noexcept { return hbar_; }
  int l() const noexcept { return l_; }
  /// O_mr = \int Theta_lm Theta_lr sin(theta) dtheta, indexed [m + l][r + l].
  const Eigen::MatrixXd& overlaps() const noexcept { return overlaps_; }
  double overlap(int m, int r) const { return overlaps_(m + l_, r + l_); }
  Coefficients apply_lz(const Coefficients& v) const;
  cplx form(const Coefficients& left, const AngularFunction& f, const Coefficients& right) const;
  Coefficients project(const AngularFunction& f, const Coefficients& u, int first, int last) const;

 private:
  double hbar_;
  int l_;
  Eigen::MatrixXd overlaps_;
};

/// Polar overlap matrix for fixed l by Gauss-Legendre quadrature in cos(theta).
Eigen::MatrixXd theta_overlaps(int l);

using Basis = std::variant<FourierBasis, HermiteBasis, SphereBasis>;

Basis basis_for(const State& state);

Coefficients apply_lz(const Basis& basis, const Coefficients& v);
cplx form(const Basis& basis, const Coefficients& left, const AngularFunction& f,
          const Coefficients& right);
Coefficients project(const Basis& basis, const AngularFunction& f, const Coefficients& u, int first,
                     int last);

/// (X, Y) for two images.
cplx inner(const Basis& basis, const Image& x, const Image& y);
/// L_z applied to an image; multiplication terms follow the product rule
/// L (f u) = -i hbar f' u + f L u, with the derivative taken pointwise
/// inside the domain and never across the 2 pi cut.
Image apply_lz(const Basis& basis, const Image& x);
Image multiply(const AngularFunction& f, const Image& x);
/// Coefficient-space matrix on labels [first, first + rows); multiplication
/// terms are first projected onto those labels.
Image apply_matrix(const Basis& basis, const Eigen::MatrixXcd& action, int first, const Image& x);

}  // namespace angulab::spectral
