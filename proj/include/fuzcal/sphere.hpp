#pragma once

#include <array>
#include <concepts>
#include <functional>
#include <map>
#include <string>
#include <variant>

#include "fuzcal/linalg.hpp"

namespace fuzcal {

/// Point of the unit sphere in the chart x3 = sigma, x1 + i x2 =
/// sqrt(1 - sigma^2) e^{i phi}. The symplectic form is d sigma ^ d phi.
class SpherePoint {
public:
  SpherePoint(double sigma, double phi);

  double sigma() const { return sigma_; }
  double phi() const { return phi_; }
  double x1() const;
  double x2() const;
  double x3() const { return sigma_; }
  std::array<double, 3> embedding() const { return {x1(), x2(), x3()}; }

private:
  double sigma_;
  double phi_;
};

/// Exponent triple (a, b, c) of the monomial x1^a x2^b x3^c.
using Exponents = std::array<int, 3>;

/// Polynomial in the ambient coordinates x1, x2, x3 with complex coefficients.
/// Polynomials are not reduced modulo x1^2 + x2^2 + x3^2 = 1.
class Polynomial {
public:
  Polynomial() = default;

  static Polynomial constant(Complex value);
  /// The coordinate x_{axis+1}, axis in {0, 1, 2}.
  static Polynomial coordinate(int axis);
  static Polynomial monomial(Complex coeff, int a, int b, int c);

  const std::map<Exponents, Complex> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  bool has_real_coefficients() const;

  Complex evaluate(double x1, double x2, double x3) const;
  Complex evaluate(const SpherePoint &pt) const;

  Polynomial derivative(int axis) const;
  /// (x1 d/dx2 - x2 d/dx1) f, the generator of rotations about x3; equals
  /// d/dphi on the sphere.
  Polynomial azimuthal_derivative() const;
  /// f o R_alpha with R_alpha the rotation by alpha about the x3 axis.
  Polynomial rotated_z(double alpha) const;
  Polynomial pow(int k) const;

  Polynomial &operator+=(const Polynomial &o);
  Polynomial &operator-=(const Polynomial &o);
  Polynomial &operator*=(Complex s);

  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);

private:
  void add_term(const Exponents &e, Complex c);

  std::map<Exponents, Complex> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial &b);
Polynomial operator-(Polynomial a, const Polynomial &b);
Polynomial operator*(Complex s, Polynomial a);

/// Lie-Poisson bracket sum eps_ijk x_k d_i f d_j g; {x1, x2} = x3.
Polynomial poisson_bracket(const Polynomial &f, const Polynomial &g);

/// Function of sigma alone, together with its derivative.
struct SigmaProfile {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// e^{i n phi}.
struct VortexPower {
  int power = 1;
};

/// delta(phi) on S^2.
struct DeltaPhi {};
/// delta(sigma1 - sigma2) on S^2 x S^2.
struct DeltaSigmaDiag {};
/// delta(sigma1 - sigma2) delta(phi1 - phi2) on S^2 x S^2.
struct DeltaFull {};

/// Closed-form function known only through its point values (results of
/// brackets between mixed representations). Not quantizable.
struct Pointwise {
  std::string name;
  std::function<Complex(const SpherePoint &)> value;
};

class SphereFunction {
public:
  using Representation = std::variant<Polynomial, SigmaProfile, VortexPower,
                                      DeltaPhi, DeltaSigmaDiag, DeltaFull,
                                      Pointwise>;

  template <class T>
    requires std::constructible_from<Representation, T &&>
  SphereFunction(T &&r) : rep_(std::forward<T>(r)) {}  // NOLINT(implicit)

  const Representation &representation() const { return rep_; }

  template <class T>
  const T *get_if() const {
    return std::get_if<T>(&rep_);
  }

  bool is_singular() const;
  bool lives_on_product() const;
  std::string describe() const;
  /// Point value; throws UnsupportedRepresentationError for distributions.
  Complex evaluate(const SpherePoint &pt) const;

private:
  Representation rep_;
};

/// Identity profile sigma -> sigma.
SigmaProfile sigma_identity();
SigmaProfile constant_profile(double value);

}  // namespace fuzcal
