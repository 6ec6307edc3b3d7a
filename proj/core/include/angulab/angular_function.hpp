#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace angulab {

using cplx = std::complex<double>;

/// A function of the azimuthal angle of the form
///   f(phi) = sum_k c_k * phi^{p_k} * e^{i q_k phi}
/// with nonnegative integer powers p and integer frequencies q. The family is
/// closed under products and differentiation, and every member has closed-form
/// Fourier moments on [0, 2 pi), which is what makes the circle and sphere
/// matrix elements of phi, phi^2, sin(phi), cos(phi) and their products exact.
class AngularFunction {
 public:
  using Key = std::pair<int, int>;  // (power, frequency)

  AngularFunction() = default;

  static AngularFunction constant(cplx value);
  static AngularFunction monomial(cplx coefficient, int power, int frequency);
  static AngularFunction phi() { return monomial(1.0, 1, 0); }
  static AngularFunction phi_squared() { return monomial(1.0, 2, 0); }
  static AngularFunction sin_phi();
  static AngularFunction cos_phi();

  const std::map<Key, cplx>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int max_power() const noexcept;
  int max_frequency() const noexcept;

  /// True when every value f(phi) is real, i.e. f equals its conjugate.
  bool is_real(double tol = 1e-14) const;

  cplx operator()(double phi) const;

  /// (1 / 2 pi) \int_0^{2 pi} f(phi) e^{i k phi} dphi.
  cplx fourier_moment(int k) const;

  AngularFunction derivative() const;
  AngularFunction conj() const;

  AngularFunction& operator+=(const AngularFunction& other);
  AngularFunction& operator*=(cplx scale);
  friend AngularFunction operator+(AngularFunction a, const AngularFunction& b) { return a += b; }
  friend AngularFunction operator*(AngularFunction a, cplx s) { return a *= s; }
  friend AngularFunction operator*(cplx s, AngularFunction a) { return a *= s; }
  friend AngularFunction operator*(const AngularFunction& a, const AngularFunction& b);
  friend bool operator==(const AngularFunction&, const AngularFunction&) = default;

  std::string describe() const;

 private:
  void add_term(Key key, cplx value);

  std::map<Key, cplx> terms_;
};

/// (1 / 2 pi) \int_0^{2 pi} phi^p e^{i j phi} dphi, by integration by parts.
cplx phi_power_moment(int power, int frequency);

}  // namespace angulab
