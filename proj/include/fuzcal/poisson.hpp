#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fuzcal/linalg.hpp"
#include "fuzcal/phase_point.hpp"

namespace fuzcal {

/// Partial derivatives of a scalar observable in q and p.
struct Gradient {
  Eigen::VectorXcd dq;
  Eigen::VectorXcd dp;
};

/// Partial derivatives of a matrix-valued observable: one N x N matrix per
/// coordinate.
struct MatrixGradient {
  std::vector<Matrix> dq;
  std::vector<Matrix> dp;
};

/// Phase-space function with (optionally) registered analytic partials.
struct ScalarObservable {
  std::string name;
  std::function<Complex(const PhasePoint &)> value;
  std::function<Gradient(const PhasePoint &)> gradient;

  bool has_partials() const { return static_cast<bool>(gradient); }
};

struct MatrixObservable {
  std::string name;
  std::function<FuzzyMatrix(const PhasePoint &)> value;
  std::function<MatrixGradient(const PhasePoint &)> gradient;

  bool has_partials() const { return static_cast<bool>(gradient); }
};

/// Bracket value together with the magnitude of the gradient products it
/// sums, sum_i |dA/dp_i dB/dq_i| + |dA/dq_i dB/dp_i| times the scale.
struct BracketValue {
  Complex value;
  double magnitude = 0.0;
};

/// {A, B} = scale * sum_i (dA/dp_i dB/dq_i - dA/dq_i dB/dp_i).
///
/// The fuzzy convention {p_i, q_j} = (N/2) delta_ij uses scale N/2; the
/// canonical one uses scale 1 (note the sign: {p, q} = +scale here).
class PoissonEngine {
public:
  explicit PoissonEngine(double scale) : scale_(scale) {}

  static PoissonEngine fuzzy(int n) { return PoissonEngine(n / 2.0); }
  static PoissonEngine canonical() { return PoissonEngine(1.0); }

  double scale() const { return scale_; }

  BracketValue bracket(const ScalarObservable &a, const ScalarObservable &b,
                       const PhasePoint &pt) const;
  /// Entrywise {A_ij, B_kl} collected as sum {A_ij, B_kl} E_ij (x) E_kl.
  TensorOperator bracket(const MatrixObservable &a, const MatrixObservable &b,
                         const PhasePoint &pt) const;

private:
  double scale_;
};

/// Observable known only through its values; brackets with it are rejected.
ScalarObservable value_only(std::string name,
                            std::function<Complex(const PhasePoint &)> value);

ScalarObservable position(int i);
ScalarObservable momentum(int i);
/// sum_j w_j q_j.
ScalarObservable linear_in_positions(std::vector<double> weights);
ScalarObservable sum(const ScalarObservable &a, const ScalarObservable &b);
ScalarObservable product(const ScalarObservable &a, const ScalarObservable &b);

/// Central finite-difference gradient of the observable value.
Gradient finite_difference_gradient(const ScalarObservable &a,
                                    const PhasePoint &pt, double step = 1e-5);
MatrixGradient finite_difference_gradient(const MatrixObservable &a,
                                          const PhasePoint &pt,
                                          double step = 1e-5);

}  // namespace fuzcal
