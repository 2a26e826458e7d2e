#include "fuzcal/poisson.hpp"

#include <cmath>

#include "fuzcal/errors.hpp"

namespace fuzcal {

namespace {

void require_partials(bool ok, const std::string &name) {
  if (!ok) {
    throw UnsupportedObservableError("observable '" + name +
                                     "' has no registered partials");
  }
}

Gradient unit_gradient(int n, int i, bool in_q) {
  Gradient g{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
  (in_q ? g.dq : g.dp)(i) = 1.0;
  return g;
}

void require_index(int i, const PhasePoint &pt) {
  if (i < 0 || i >= pt.n()) throw DimensionError("coordinate index out of range");
}

}  // namespace

BracketValue PoissonEngine::bracket(const ScalarObservable &a,
                                    const ScalarObservable &b,
                                    const PhasePoint &pt) const {
  require_partials(a.has_partials(), a.name);
  require_partials(b.has_partials(), b.name);
  const Gradient ga = a.gradient(pt);
  const Gradient gb = b.gradient(pt);
  BracketValue out{};
  for (int i = 0; i < pt.n(); ++i) {
    const Complex t1 = ga.dp(i) * gb.dq(i);
    const Complex t2 = ga.dq(i) * gb.dp(i);
    out.value += t1 - t2;
    out.magnitude += std::abs(t1) + std::abs(t2);
  }
  out.value *= scale_;
  out.magnitude *= std::abs(scale_);
  return out;
}

TensorOperator PoissonEngine::bracket(const MatrixObservable &a,
                                      const MatrixObservable &b,
                                      const PhasePoint &pt) const {
  require_partials(a.has_partials(), a.name);
  require_partials(b.has_partials(), b.name);
  const int n = pt.n();
  check_tensor_size(n);
  const MatrixGradient ga = a.gradient(pt);
  const MatrixGradient gb = b.gradient(pt);
  TensorOperator out(n);
  for (int i = 0; i < n; ++i) {
    out += TensorOperator::product(FuzzyMatrix(ga.dp[i]), FuzzyMatrix(gb.dq[i]));
    out -= TensorOperator::product(FuzzyMatrix(ga.dq[i]), FuzzyMatrix(gb.dp[i]));
  }
  out *= scale_;
  return out;
}

ScalarObservable value_only(std::string name,
                            std::function<Complex(const PhasePoint &)> value) {
  return {std::move(name), std::move(value), {}};
}

ScalarObservable position(int i) {
  return {"q" + std::to_string(i + 1),
          [i](const PhasePoint &pt) {
            require_index(i, pt);
            return Complex(pt.q(i));
          },
          [i](const PhasePoint &pt) {
            require_index(i, pt);
            return unit_gradient(pt.n(), i, true);
          }};
}

ScalarObservable momentum(int i) {
  return {"p" + std::to_string(i + 1),
          [i](const PhasePoint &pt) {
            require_index(i, pt);
            return Complex(pt.p(i));
          },
          [i](const PhasePoint &pt) {
            require_index(i, pt);
            return unit_gradient(pt.n(), i, false);
          }};
}

ScalarObservable linear_in_positions(std::vector<double> weights) {
  auto check = [](const std::vector<double> &w, const PhasePoint &pt) {
    if (static_cast<int>(w.size()) != pt.n()) {
      throw DimensionError("weight vector length differs from N");
    }
  };
  return {"linear(q)",
          [weights, check](const PhasePoint &pt) {
            check(weights, pt);
            Complex s{};
            for (int j = 0; j < pt.n(); ++j) s += weights[j] * pt.q(j);
            return s;
          },
          [weights, check](const PhasePoint &pt) {
            check(weights, pt);
            Gradient g{Eigen::VectorXcd::Zero(pt.n()), Eigen::VectorXcd::Zero(pt.n())};
            for (int j = 0; j < pt.n(); ++j) g.dq(j) = weights[j];
            return g;
          }};
}

ScalarObservable sum(const ScalarObservable &a, const ScalarObservable &b) {
  ScalarObservable out;
  out.name = "(" + a.name + "+" + b.name + ")";
  out.value = [a, b](const PhasePoint &pt) { return a.value(pt) + b.value(pt); };
  if (a.has_partials() && b.has_partials()) {
    out.gradient = [a, b](const PhasePoint &pt) {
      Gradient ga = a.gradient(pt);
      const Gradient gb = b.gradient(pt);
      ga.dq += gb.dq;
      ga.dp += gb.dp;
      return ga;
    };
  }
  return out;
}

ScalarObservable product(const ScalarObservable &a, const ScalarObservable &b) {
  ScalarObservable out;
  out.name = a.name + "*" + b.name;
  out.value = [a, b](const PhasePoint &pt) { return a.value(pt) * b.value(pt); };
  if (a.has_partials() && b.has_partials()) {
    out.gradient = [a, b](const PhasePoint &pt) {
      const Complex va = a.value(pt);
      const Complex vb = b.value(pt);
      const Gradient ga = a.gradient(pt);
      const Gradient gb = b.gradient(pt);
      return Gradient{vb * ga.dq + va * gb.dq, vb * ga.dp + va * gb.dp};
    };
  }
  return out;
}

Gradient finite_difference_gradient(const ScalarObservable &a,
                                    const PhasePoint &pt, double step) {
  const int n = pt.n();
  Gradient g{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
  std::vector<double> q(pt.q().begin(), pt.q().end());
  std::vector<double> p(pt.p().begin(), pt.p().end());
  for (int i = 0; i < n; ++i) {
    for (int which = 0; which < 2; ++which) {
      std::vector<double> &x = which == 0 ? q : p;
      const double x0 = x[i];
      x[i] = x0 + step;
      const Complex fp = a.value(pt.with_coordinates(q, p));
      x[i] = x0 - step;
      const Complex fm = a.value(pt.with_coordinates(q, p));
      x[i] = x0;
      (which == 0 ? g.dq : g.dp)(i) = (fp - fm) / (2.0 * step);
    }
  }
  return g;
}

MatrixGradient finite_difference_gradient(const MatrixObservable &a,
                                          const PhasePoint &pt, double step) {
  const int n = pt.n();
  MatrixGradient g;
  g.dq.resize(n);
  g.dp.resize(n);
  std::vector<double> q(pt.q().begin(), pt.q().end());
  std::vector<double> p(pt.p().begin(), pt.p().end());
  for (int i = 0; i < n; ++i) {
    for (int which = 0; which < 2; ++which) {
      std::vector<double> &x = which == 0 ? q : p;
      const double x0 = x[i];
      x[i] = x0 + step;
      const Matrix fp = a.value(pt.with_coordinates(q, p)).matrix();
      x[i] = x0 - step;
      const Matrix fm = a.value(pt.with_coordinates(q, p)).matrix();
      x[i] = x0;
      (which == 0 ? g.dq : g.dp)[i] = (fp - fm) / (2.0 * step);
    }
  }
  return g;
}

}  // namespace fuzcal
