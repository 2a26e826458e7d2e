#include "fuzcal/sphere.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fuzcal/errors.hpp"

namespace fuzcal {

SpherePoint::SpherePoint(double sigma, double phi) : sigma_(sigma), phi_(phi) {
  if (!(sigma >= -1.0 && sigma <= 1.0)) {
    throw DomainError("sigma outside [-1, 1]");
  }
  if (!(phi >= -std::numbers::pi && phi <= std::numbers::pi)) {
    throw DomainError("phi outside [-pi, pi]");
  }
}

double SpherePoint::x1() const {
  return std::sqrt(1.0 - sigma_ * sigma_) * std::cos(phi_);
}

double SpherePoint::x2() const {
  return std::sqrt(1.0 - sigma_ * sigma_) * std::sin(phi_);
}

Polynomial Polynomial::constant(Complex value) {
  Polynomial p;
  p.add_term({0, 0, 0}, value);
  return p;
}

Polynomial Polynomial::coordinate(int axis) {
  if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1 or 2");
  Exponents e{0, 0, 0};
  e[axis] = 1;
  Polynomial p;
  p.add_term(e, 1.0);
  return p;
}

Polynomial Polynomial::monomial(Complex coeff, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw DomainError("negative exponent");
  Polynomial p;
  p.add_term({a, b, c}, coeff);
  return p;
}

void Polynomial::add_term(const Exponents &e, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto &[e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

bool Polynomial::has_real_coefficients() const {
  for (const auto &[e, c] : terms_) {
    if (c.imag() != 0.0) return false;
  }
  return true;
}

Complex Polynomial::evaluate(double x1, double x2, double x3) const {
  Complex s{};
  for (const auto &[e, c] : terms_) {
    s += c * std::pow(x1, e[0]) * std::pow(x2, e[1]) * std::pow(x3, e[2]);
  }
  return s;
}

Complex Polynomial::evaluate(const SpherePoint &pt) const {
  return evaluate(pt.x1(), pt.x2(), pt.x3());
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial out;
  for (const auto &[e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponents f = e;
    f[axis] -= 1;
    out.add_term(f, c * static_cast<double>(e[axis]));
  }
  return out;
}

Polynomial Polynomial::azimuthal_derivative() const {
  return coordinate(0) * derivative(1) - coordinate(1) * derivative(0);
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw DomainError("negative polynomial power");
  Polynomial out = constant(1.0);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::rotated_z(double alpha) const {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const Polynomial y1 = ca * coordinate(0) - sa * coordinate(1);
  const Polynomial y2 = sa * coordinate(0) + ca * coordinate(1);
  Polynomial out;
  for (const auto &[e, c] : terms_) {
    out += c * (y1.pow(e[0]) * y2.pow(e[1]) * coordinate(2).pow(e[2]));
  }
  return out;
}

Polynomial &Polynomial::operator+=(const Polynomial &o) {
  for (const auto &[e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o) {
  for (const auto &[e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial &Polynomial::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  Polynomial out;
  for (const auto &[ea, ca] : a.terms_) {
    for (const auto &[eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
Polynomial operator*(Complex s, Polynomial a) { return a *= s; }

Polynomial poisson_bracket(const Polynomial &f, const Polynomial &g) {
  std::array<Polynomial, 3> df{f.derivative(0), f.derivative(1), f.derivative(2)};
  std::array<Polynomial, 3> dg{g.derivative(0), g.derivative(1), g.derivative(2)};
  Polynomial out;
  // cyclic (i, j, k): x_k (d_i f d_j g - d_j f d_i g)
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    out += Polynomial::coordinate(k) * (df[i] * dg[j] - df[j] * dg[i]);
  }
  return out;
}

bool SphereFunction::is_singular() const {
  return std::holds_alternative<DeltaPhi>(rep_) ||
         std::holds_alternative<DeltaSigmaDiag>(rep_) ||
         std::holds_alternative<DeltaFull>(rep_);
}

bool SphereFunction::lives_on_product() const {
  return std::holds_alternative<DeltaSigmaDiag>(rep_) ||
         std::holds_alternative<DeltaFull>(rep_);
}

std::string SphereFunction::describe() const {
  struct Visitor {
    std::string operator()(const Polynomial &p) const {
      std::ostringstream os;
      os << "polynomial(degree " << p.degree() << ", " << p.terms().size()
         << " terms)";
      return os.str();
    }
    std::string operator()(const SigmaProfile &s) const {
      return "sigma-profile:" + s.name;
    }
    std::string operator()(const VortexPower &v) const {
      return "vortex:" + std::to_string(v.power);
    }
    std::string operator()(const DeltaPhi &) const { return "delta-phi"; }
    std::string operator()(const DeltaSigmaDiag &) const {
      return "delta-sigma-diag";
    }
    std::string operator()(const DeltaFull &) const { return "delta-full"; }
    std::string operator()(const Pointwise &p) const {
      return "pointwise:" + p.name;
    }
  };
  return std::visit(Visitor{}, rep_);
}

Complex SphereFunction::evaluate(const SpherePoint &pt) const {
  if (const auto *p = get_if<Polynomial>()) return p->evaluate(pt);
  if (const auto *s = get_if<SigmaProfile>()) return s->value(pt.sigma());
  if (const auto *v = get_if<VortexPower>()) {
    return std::exp(kI * (static_cast<double>(v->power) * pt.phi()));
  }
  if (const auto *w = get_if<Pointwise>()) return w->value(pt);
  throw UnsupportedRepresentationError("no point values for " + describe());
}

SigmaProfile sigma_identity() {
  return {"sigma", [](double s) { return s; }, [](double) { return 1.0; }};
}

SigmaProfile constant_profile(double value) {
  return {"const", [value](double) { return value; },
          [](double) { return 0.0; }};
}

}  // namespace fuzcal
