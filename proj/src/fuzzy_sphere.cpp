#include "fuzcal/fuzzy_sphere.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "fuzcal/errors.hpp"
#include "fuzcal/numerics.hpp"

namespace fuzcal {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(int n) {
  if (n < 2) {
    throw DimensionError("fuzzy sphere size must be >= 2, got " +
                         std::to_string(n));
  }
}

double multinomial(int a, int b, int c) {
  return std::tgamma(a + b + c + 1.0) /
         (std::tgamma(a + 1.0) * std::tgamma(b + 1.0) * std::tgamma(c + 1.0));
}

/// Sums of all words with a copies of X1, b of X2 and c of X3, memoized on
/// the exponent triple: S(a,b,c) = X1 S(a-1,b,c) + X2 S(a,b-1,c) + X3 S(a,b,c-1).
class WordSums {
public:
  explicit WordSums(const Generators &g) : g_(g) {}

  const Matrix &get(const Exponents &e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    const int n = g_.x1.n();
    Matrix s;
    if (e[0] + e[1] + e[2] == 0) {
      s = Matrix::Identity(n, n);
    } else {
      s = Matrix::Zero(n, n);
      const Matrix *gens[3] = {&g_.x1.matrix(), &g_.x2.matrix(), &g_.x3.matrix()};
      for (int axis = 0; axis < 3; ++axis) {
        if (e[axis] == 0) continue;
        Exponents f = e;
        f[axis] -= 1;
        s.noalias() += *gens[axis] * get(f);
      }
    }
    return cache_.emplace(e, std::move(s)).first->second;
  }

private:
  const Generators &g_;
  std::map<Exponents, Matrix> cache_;
};

FuzzyMatrix quantize_polynomial(const Polynomial &p, int n) {
  const Generators g = build_generators(n);
  WordSums words(g);
  Matrix out = Matrix::Zero(n, n);
  for (const auto &[e, c] : p.terms()) {
    out += (c / multinomial(e[0], e[1], e[2])) * words.get(e);
  }
  return FuzzyMatrix(std::move(out));
}

FuzzyMatrix quantize_profile(const SigmaProfile &s, int n) {
  const std::vector<double> sig = sample_sigmas(n);
  Eigen::VectorXcd d(n);
  for (int j = 0; j < n; ++j) {
    const double v = s.value(sig[j]);
    if (!std::isfinite(v)) {
      throw DomainError("profile '" + s.name + "' undefined at sigma_" +
                        std::to_string(j + 1) + " = " + std::to_string(sig[j]));
    }
    d(j) = v;
  }
  return FuzzyMatrix::diagonal(d);
}

FuzzyMatrix quantize_vortex(int power, int n) {
  const FuzzyMatrix v = power >= 0 ? vortex_matrix(n) : vortex_matrix(n).adjoint();
  Matrix out = Matrix::Identity(n, n);
  for (int k = 0; k < std::abs(power); ++k) out = out * v.matrix();
  return FuzzyMatrix(std::move(out));
}

/// d/dsigma of a polynomial restricted to the sphere chart.
Complex sigma_derivative(const Polynomial &p, const SpherePoint &pt) {
  const double s = pt.sigma();
  const double rho = std::sqrt(1.0 - s * s);
  if (rho == 0.0) {
    throw DomainError("sigma derivative undefined at the poles");
  }
  const double dx1 = -s / rho * std::cos(pt.phi());
  const double dx2 = -s / rho * std::sin(pt.phi());
  const double x1 = pt.x1(), x2 = pt.x2(), x3 = pt.x3();
  return p.derivative(0).evaluate(x1, x2, x3) * dx1 +
         p.derivative(1).evaluate(x1, x2, x3) * dx2 +
         p.derivative(2).evaluate(x1, x2, x3);
}

// {f(sigma), g} with g a polynomial: -f'(sigma) d_phi g.
SphereFunction profile_polynomial_bracket(const SigmaProfile &f,
                                          const Polynomial &g, double sign) {
  Polynomial dphi = g.azimuthal_derivative();
  auto df = f.derivative;
  return Pointwise{"{" + f.name + ",polynomial}",
                   [df, dphi, sign](const SpherePoint &pt) {
                     return -sign * df(pt.sigma()) * dphi.evaluate(pt);
                   }};
}

// {f(sigma), e^{ik phi}} = -f'(sigma) i k e^{ik phi}.
SphereFunction profile_vortex_bracket(const SigmaProfile &f, int k,
                                      double sign) {
  auto df = f.derivative;
  return Pointwise{"{" + f.name + ",vortex}", [df, k, sign](const SpherePoint &pt) {
                     const double kk = static_cast<double>(k);
                     return -sign * df(pt.sigma()) * kI * kk *
                            std::exp(kI * (kk * pt.phi()));
                   }};
}

// {g, e^{ik phi}} = -d_sigma g i k e^{ik phi} for polynomial g.
SphereFunction polynomial_vortex_bracket(const Polynomial &g, int k,
                                         double sign) {
  return Pointwise{"{polynomial,vortex}", [g, k, sign](const SpherePoint &pt) {
                     const double kk = static_cast<double>(k);
                     return -sign * sigma_derivative(g, pt) * kI * kk *
                            std::exp(kI * (kk * pt.phi()));
                   }};
}

}  // namespace

Generators build_generators(int n) {
  require_size(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * n - 1.0);
  Matrix x3 = Matrix::Zero(n, n);
  Matrix raise = Matrix::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    x3(j - 1, j - 1) = (n + 1.0 - 2.0 * j) * scale;
    if (j >= 2) {
      raise(j - 2, j - 1) =
          2.0 * std::sqrt((j - 1.0) * (n - j + 1.0)) * scale;
    }
  }
  Matrix x1 = 0.5 * (raise + raise.adjoint());
  Matrix x2 = (raise - raise.adjoint()) / (2.0 * kI);
  return {FuzzyMatrix(std::move(x1)), FuzzyMatrix(std::move(x2)),
          FuzzyMatrix(std::move(x3))};
}

std::vector<double> sample_sigmas(int n) {
  require_size(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * n - 1.0);
  std::vector<double> s(n);
  for (int j = 1; j <= n; ++j) s[j - 1] = (n + 1.0 - 2.0 * j) * scale;
  return s;
}

FuzzyMatrix vortex_matrix(int n) {
  require_size(n);
  Matrix v = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) v(i, i + 1) = 1.0;
  return FuzzyMatrix(std::move(v));
}

FuzzyMatrix all_ones_matrix(int n) {
  require_size(n);
  return FuzzyMatrix(Matrix::Ones(n, n));
}

FuzzyMatrix quantize(const SphereFunction &f, int n) {
  require_size(n);
  if (const auto *p = f.get_if<Polynomial>()) return quantize_polynomial(*p, n);
  if (const auto *s = f.get_if<SigmaProfile>()) return quantize_profile(*s, n);
  if (const auto *v = f.get_if<VortexPower>()) return quantize_vortex(v->power, n);
  if (f.get_if<DeltaPhi>()) {
    return (1.0 / (2.0 * kPi)) * all_ones_matrix(n);
  }
  if (f.lives_on_product()) {
    throw UnsupportedRepresentationError(
        f.describe() + " lives on S^2 x S^2; use quantize_product");
  }
  throw UnsupportedRepresentationError("cannot quantize " + f.describe());
}

TensorOperator quantize_product(const SphereFunction &f, int n) {
  require_size(n);
  if (f.get_if<DeltaSigmaDiag>()) {
    return Complex(n / 2.0) * TensorOperator::diagonal_projector(n);
  }
  if (f.get_if<DeltaFull>()) {
    return Complex(n / (4.0 * kPi)) * TensorOperator::transposition(n);
  }
  throw UnsupportedRepresentationError(f.describe() +
                                       " is not a two-sphere symbol");
}

SphereFunction sphere_bracket(const SphereFunction &f, const SphereFunction &g) {
  const auto *fp = f.get_if<Polynomial>();
  const auto *gp = g.get_if<Polynomial>();
  const auto *fs = f.get_if<SigmaProfile>();
  const auto *gs = g.get_if<SigmaProfile>();
  const auto *fv = f.get_if<VortexPower>();
  const auto *gv = g.get_if<VortexPower>();

  if (fp && gp) return poisson_bracket(*fp, *gp);
  if ((fs || fv) && (gs || gv) && !(fs && gv) && !(fv && gs)) {
    return Polynomial{};  // both depend on a single chart coordinate
  }
  if (fs && gp) return profile_polynomial_bracket(*fs, *gp, 1.0);
  if (fp && gs) return profile_polynomial_bracket(*gs, *fp, -1.0);
  if (fs && gv) return profile_vortex_bracket(*fs, gv->power, 1.0);
  if (fv && gs) return profile_vortex_bracket(*gs, fv->power, -1.0);
  if (fp && gv) return polynomial_vortex_bracket(*fp, gv->power, 1.0);
  if (fv && gp) return polynomial_vortex_bracket(*gp, fv->power, -1.0);
  throw UnsupportedRepresentationError("no closed-form bracket for " +
                                       f.describe() + " and " + g.describe());
}

double sphere_moment(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw DomainError("negative exponent");
  if (a % 2 || b % 2 || c % 2) return 0.0;
  // int_{S^2} x^a y^b z^c dA = 2 G((a+1)/2) G((b+1)/2) G((c+1)/2) / G((a+b+c+3)/2)
  const double num = 2.0 * std::tgamma((a + 1) / 2.0) *
                     std::tgamma((b + 1) / 2.0) * std::tgamma((c + 1) / 2.0);
  return num / std::tgamma((a + b + c + 3) / 2.0) / (2.0 * kPi);
}

Complex sphere_average(const SphereFunction &f) {
  if (const auto *p = f.get_if<Polynomial>()) {
    Complex s{};
    for (const auto &[e, c] : p->terms()) s += c * sphere_moment(e[0], e[1], e[2]);
    return s;
  }
  if (const auto *s = f.get_if<SigmaProfile>()) {
    return integrate(s->value, -1.0, 1.0);
  }
  if (const auto *v = f.get_if<VortexPower>()) {
    return v->power == 0 ? 2.0 : 0.0;
  }
  if (f.is_singular()) {
    throw UnsupportedRepresentationError("no sphere average for " + f.describe());
  }
  // (1/2pi) int dsigma int dphi f
  auto part = [&f](bool imag) {
    return integrate(
        [&f, imag](double sigma) {
          return integrate(
              [&f, imag, sigma](double phi) {
                const Complex v = f.evaluate(SpherePoint(sigma, phi));
                return imag ? v.imag() : v.real();
              },
              -kPi, kPi);
        },
        -1.0, 1.0);
  };
  return Complex(part(false), part(true)) / (2.0 * kPi);
}

CorrespondenceResiduals correspondence_residuals(const Polynomial &f,
                                                 const Polynomial &g, int n) {
  require_size(n);
  if (f.degree() > 4 || g.degree() > 4) {
    throw PreconditionError("correspondence residuals need degree <= 4");
  }
  const FuzzyMatrix qf = quantize(f, n);
  const FuzzyMatrix qg = quantize(g, n);
  CorrespondenceResiduals r;
  r.product = fuzzy_norm(qf * qg - quantize(f * g, n));
  r.commutator = fuzzy_norm(commutator(qf, qg) -
                            Complex(0.0, 2.0 / n) * quantize(poisson_bracket(f, g), n));
  r.trace = std::abs((2.0 / n) * qf.trace() - sphere_average(f));
  return r;
}

double full_delta_pairing_residual(const SphereFunction &f, int n) {
  const FuzzyMatrix qf = quantize(f, n);
  const TensorOperator delta = quantize_product(DeltaFull{}, n);
  const FuzzyMatrix lhs =
      Complex(4.0 * kPi / n) * (delta * TensorOperator::right(qf)).partial_trace_second();
  return max_entry_norm(lhs - qf);
}

double diagonal_delta_pairing_residual(const SphereFunction &f, int n) {
  const FuzzyMatrix qf = quantize(f, n);
  if (!qf.is_diagonal()) {
    throw PreconditionError("diagonal-delta pairing needs a diagonal Q(f), got " +
                            f.describe());
  }
  const TensorOperator delta = quantize_product(DeltaSigmaDiag{}, n);
  const FuzzyMatrix lhs =
      Complex(2.0 / n) * (delta * TensorOperator::right(qf)).partial_trace_second();
  return max_entry_norm(lhs - qf);
}

PairingResiduals pairing_identity_check(const SphereFunction &f, int n) {
  return {full_delta_pairing_residual(f, n), diagonal_delta_pairing_residual(f, n)};
}

namespace {

// A^2, done in real arithmetic when A is purely real or purely imaginary.
Matrix square(const Matrix &a) {
  const Eigen::MatrixXd re = a.real();
  const Eigen::MatrixXd im = a.imag();
  if (im.isZero(0.0)) return (re * re).cast<Complex>();
  if (re.isZero(0.0)) return (-(im * im)).cast<Complex>();
  return a * a;
}

}  // namespace

double fuzzy_sphere_relation_residual(int n) {
  const Generators g = build_generators(n);
  const Matrix casimir = square(g.x1.matrix()) + square(g.x2.matrix()) + square(g.x3.matrix());
  return max_entry_norm(casimir - Matrix::Identity(n, n));
}

double vortex_factorization_residual(int n) {
  const Generators g = build_generators(n);
  const double a = std::sqrt((n - 1.0) / (n + 1.0));
  const double b = 1.0 / a;
  Eigen::VectorXcd d(n);
  for (int j = 0; j < n; ++j) {
    const double x3 = g.x3(j, j).real();
    const double lo = 1.0 - a * x3;
    // 1 + b Q(x3) vanishes in the last row, where V(N) has no entry
    double hi = 1.0 + b * x3;
    if (hi < 0.0 && hi > -1e-12) hi = 0.0;
    if (!(lo > 0.0) || !(hi >= 0.0)) {
      throw NumericalError("factorization radicand is not positive");
    }
    d(j) = std::sqrt(lo) * std::sqrt(hi);
  }
  const FuzzyMatrix rhs = FuzzyMatrix::diagonal(d) * vortex_matrix(n);
  const FuzzyMatrix lhs = g.x1 + kI * g.x2;
  return max_entry_norm(lhs - rhs);
}

}  // namespace fuzcal
