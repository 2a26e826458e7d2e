#include "fuzcal/calogero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fuzcal/errors.hpp"
#include "fuzcal/fuzzy_sphere.hpp"

namespace fuzcal {

namespace {

Matrix matrix_power(const Matrix &a, int m) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < m; ++i) out = out * a;
  return out;
}

/// dL/dq_i: row i carries -i kappa/(q_i - q_l)^2, column i carries
/// +i kappa/(q_k - q_i)^2.
Matrix lax_position_derivative(const PhasePoint &pt, int i) {
  const int n = pt.n();
  const double kappa = pt.kappa();
  Matrix d = Matrix::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    if (l == i) continue;
    const double dil = pt.q(i) - pt.q(l);
    d(i, l) = -kI * kappa / (dil * dil);
    d(l, i) = kI * kappa / (dil * dil);
  }
  return d;
}

}  // namespace

FuzzyMatrix build_lax(const PhasePoint &pt) {
  pt.require_distinct();
  const int n = pt.n();
  const double kappa = pt.kappa();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      l(i, j) = i == j ? Complex(pt.p(i)) : kI * kappa / (pt.q(i) - pt.q(j));
    }
  }
  return FuzzyMatrix(std::move(l));
}

PositionMatrices build_position_matrices(const PhasePoint &pt) {
  Eigen::VectorXcd q(pt.n());
  Eigen::VectorXcd p(pt.n());
  for (int i = 0; i < pt.n(); ++i) {
    q(i) = pt.q(i);
    p(i) = pt.p(i);
  }
  return {FuzzyMatrix::diagonal(q), FuzzyMatrix::diagonal(p)};
}

Residual commutator_identity_residual(const PhasePoint &pt) {
  const FuzzyMatrix lax = build_lax(pt);
  const FuzzyMatrix r = build_position_matrices(pt).positions;
  const int n = pt.n();
  // R is diagonal: scale rows and columns instead of multiplying densely
  const auto rd = r.matrix().diagonal().asDiagonal();
  const Matrix rl = rd * lax.matrix();
  const Matrix lr = lax.matrix() * rd;
  const FuzzyMatrix rhs =
      Complex(0.0, pt.kappa()) * (all_ones_matrix(n) - FuzzyMatrix::identity(n));
  return compare(rl - lr, rhs.matrix(), std::max(max_entry_norm(rl), max_entry_norm(lr)));
}

RMatrix build_r_matrix(const PhasePoint &pt) {
  pt.require_distinct();
  const int n = pt.n();
  TensorOperator r(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      const Complex w = kI / (pt.q(l) - pt.q(k));
      r.coeff(k, l, l, k) += w;
      r.coeff(k, k, k, l) += 0.5 * w;
      r.coeff(k, k, l, k) -= 0.5 * w;
    }
  }
  TensorOperator swapped = r.swapped();
  return {std::move(r), std::move(swapped)};
}

MatrixObservable lax_observable() {
  return {"L",
          [](const PhasePoint &pt) { return build_lax(pt); },
          [](const PhasePoint &pt) {
            pt.require_distinct();
            const int n = pt.n();
            MatrixGradient g;
            g.dq.reserve(n);
            g.dp.reserve(n);
            for (int i = 0; i < n; ++i) {
              g.dq.push_back(lax_position_derivative(pt, i));
              Matrix e = Matrix::Zero(n, n);
              e(i, i) = 1.0;
              g.dp.push_back(std::move(e));
            }
            return g;
          }};
}

ScalarObservable lax_entry(int k, int l) {
  auto check = [k, l](const PhasePoint &pt) {
    if (k < 0 || l < 0 || k >= pt.n() || l >= pt.n()) {
      throw DimensionError("Lax entry index out of range");
    }
  };
  return {"L" + std::to_string(k + 1) + std::to_string(l + 1),
          [k, l, check](const PhasePoint &pt) {
            check(pt);
            return build_lax(pt)(k, l);
          },
          [k, l, check](const PhasePoint &pt) {
            check(pt);
            pt.require_distinct();
            const int n = pt.n();
            Gradient g{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
            if (k == l) {
              g.dp(k) = 1.0;
              return g;
            }
            const double d = pt.q(k) - pt.q(l);
            const Complex w = -kI * pt.kappa() / (d * d);
            g.dq(k) = w;
            g.dq(l) = -w;
            return g;
          }};
}

ScalarObservable trace_power(int m) {
  if (m < 1) throw DomainError("trace power needs m >= 1");
  return {"trL^" + std::to_string(m),
          [m](const PhasePoint &pt) {
            return matrix_power(build_lax(pt).matrix(), m).trace();
          },
          [m](const PhasePoint &pt) {
            const Matrix lax = build_lax(pt).matrix();
            const Matrix a = matrix_power(lax, m - 1);
            const int n = pt.n();
            const double kappa = pt.kappa();
            Gradient g{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
            for (int i = 0; i < n; ++i) {
              g.dp(i) = static_cast<double>(m) * a(i, i);
              Complex s{};
              for (int l = 0; l < n; ++l) {
                if (l == i) continue;
                const double d = pt.q(i) - pt.q(l);
                s += (a(l, i) - a(i, l)) / (d * d);
              }
              g.dq(i) = -kI * (static_cast<double>(m) * kappa) * s;
            }
            return g;
          }};
}

Residual fundamental_relation_residual(const PhasePoint &pt) {
  const int n = pt.n();
  check_tensor_size(n);
  const FuzzyMatrix lax = build_lax(pt);
  const RMatrix r = build_r_matrix(pt);
  const TensorOperator lhs =
      PoissonEngine::fuzzy(n).bracket(lax_observable(), lax_observable(), pt);
  const Complex half_n(0.0, n / 2.0);
  const TensorOperator t1 = (-half_n) * slot1_commutator(r.r12, lax);
  const TensorOperator t2 = half_n * slot2_commutator(r.r21, lax);
  return compare(lhs.matrix(), (t1 + t2).matrix(),
                 std::max(max_entry_norm(t1.matrix()), max_entry_norm(t2.matrix())));
}

RCommutatorResiduals r_commutator_identities_residual(const PhasePoint &pt) {
  const int n = pt.n();
  const RMatrix r = build_r_matrix(pt);
  const FuzzyMatrix big_r = build_position_matrices(pt).positions;
  // [R_a, r] = -[r, R_a]
  const TensorOperator c1 = Complex(-1.0) * slot1_commutator(r.r12, big_r);
  const TensorOperator c2 = Complex(-1.0) * slot2_commutator(r.r12, big_r);

  const TensorOperator transposition = TensorOperator::transposition(n);
  const TensorOperator diag = TensorOperator::diagonal_projector(n);
  const TensorOperator rhs1 = Complex(0.0, -1.0) * (transposition - diag);
  const TensorOperator rhs2 = kI * transposition -
                              Complex(0.0, 0.5) * slot2_anticommutator(diag, all_ones_matrix(n));

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const TensorOperator delta_full = quantize_product(DeltaFull{}, n);
  const TensorOperator delta_sigma = quantize_product(DeltaSigmaDiag{}, n);
  // Q(2 pi delta(phi_2)) sits in the second slot
  const FuzzyMatrix delta_phi = Complex(two_pi) * quantize(DeltaPhi{}, n);
  const TensorOperator rewrite1 =
      Complex(0.0, -2.0 / n) * (Complex(two_pi) * delta_full - delta_sigma);
  const TensorOperator rewrite2 =
      Complex(0.0, 2.0 / n) * (Complex(two_pi) * delta_full) -
      Complex(0.0, 1.0 / n) * slot2_anticommutator(delta_sigma, delta_phi);

  RCommutatorResiduals out;
  out.slot1 = compare(c1.matrix(), rhs1.matrix());
  out.slot2 = compare(c2.matrix(), rhs2.matrix());
  out.slot1_rewrite = max_entry_norm((rhs1 - rewrite1).matrix());
  out.slot2_rewrite = max_entry_norm((rhs2 - rewrite2).matrix());
  return out;
}

Residual involutivity_residual(const PhasePoint &pt, int m, int k,
                               int max_power) {
  if (m < 1 || k < 1 || m > max_power || k > max_power) {
    throw DomainError("trace powers must lie in [1, " +
                      std::to_string(max_power) + "]");
  }
  const BracketValue b =
      PoissonEngine::fuzzy(pt.n()).bracket(trace_power(m), trace_power(k), pt);
  Residual r;
  r.absolute = std::abs(b.value);
  r.scale = b.magnitude;
  return r;
}

}  // namespace fuzcal

namespace fuzcal {

namespace {

double gradient_deviation(const Gradient &analytic, const Gradient &numeric) {
  const double scale = std::max({analytic.dq.cwiseAbs().maxCoeff(), analytic.dp.cwiseAbs().maxCoeff(),
                                 numeric.dq.cwiseAbs().maxCoeff(), numeric.dp.cwiseAbs().maxCoeff()});
  const double diff = std::max((analytic.dq - numeric.dq).cwiseAbs().maxCoeff(),
                               (analytic.dp - numeric.dp).cwiseAbs().maxCoeff());
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace

double registered_partials_residual(const PhasePoint &pt) {
  const int n = pt.n();
  std::vector<ScalarObservable> obs{position(0), position(n - 1), momentum(0), momentum(n - 1),
                                    linear_in_positions(std::vector<double>(n, 2.0 / n)),
                                    lax_entry(0, 0), lax_entry(0, n - 1), lax_entry(n - 1, 0),
                                    lax_entry(1, 0)};
  for (int m = 1; m <= kMaxTracePower; ++m) obs.push_back(trace_power(m));
  double worst = 0.0;
  for (const ScalarObservable &o : obs) {
    worst = std::max(worst, gradient_deviation(o.gradient(pt), finite_difference_gradient(o, pt)));
  }
  const MatrixGradient an = lax_observable().gradient(pt);
  const MatrixGradient fd = finite_difference_gradient(lax_observable(), pt);
  double err = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    err = std::max({err, max_entry_norm(an.dq[i] - fd.dq[i]), max_entry_norm(an.dp[i] - fd.dp[i])});
    scale = std::max({scale, max_entry_norm(an.dq[i]), max_entry_norm(an.dp[i])});
  }
  return std::max(worst, scale == 0.0 ? err : err / scale);
}

}  // namespace fuzcal
