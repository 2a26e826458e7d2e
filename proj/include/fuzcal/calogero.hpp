#pragma once

#include "fuzcal/linalg.hpp"
#include "fuzcal/phase_point.hpp"
#include "fuzcal/poisson.hpp"

namespace fuzcal {

/// L_ij = p_i delta_ij + (1 - delta_ij) i kappa / (q_i - q_j).
FuzzyMatrix build_lax(const PhasePoint &pt);

struct PositionMatrices {
  FuzzyMatrix positions;  // R = diag(q)
  FuzzyMatrix momenta;    // P = diag(p)
};

PositionMatrices build_position_matrices(const PhasePoint &pt);

/// Residual of [R, L] = i kappa (K - 1).
Residual commutator_identity_residual(const PhasePoint &pt);

struct RMatrix {
  TensorOperator r12;
  TensorOperator r21;
};

/// r_12 = sum_{k != l} i/(q_l - q_k) E_kl (x) E_lk
///      + (1/2) sum_{k != l} i/(q_l - q_k) E_kk (x) (E_kl - E_lk),
/// returned together with its slot exchange r_21.
RMatrix build_r_matrix(const PhasePoint &pt);

/// L as a matrix observable with analytic partials.
MatrixObservable lax_observable();
/// Single entry L_kl (zero-based indices).
ScalarObservable lax_entry(int k, int l);
/// tr L^m with dp_i = m (L^{m-1})_ii and
/// dq_i = -i m kappa sum_{l != i} ((L^{m-1})_li - (L^{m-1})_il) / (q_i - q_l)^2.
ScalarObservable trace_power(int m);

/// Residual of {L_1, L_2} = -(iN/2)[r_12, L_1] + (iN/2)[r_21, L_2] with the
/// bracket {p_i, q_j} = (N/2) delta_ij. Requires N <= kMaxTensorN.
Residual fundamental_relation_residual(const PhasePoint &pt);

struct RCommutatorResiduals {
  /// [R_1, r_12] = -i sum_{k != l} E_kl (x) E_lk
  Residual slot1;
  /// [R_2, r_12] = i sum_{k,l} E_kl (x) E_lk - (i/2)[sum_m E_mm (x) E_mm, 1 (x) K]_+
  Residual slot2;
  /// Max-entry distance between the explicit right-hand sides and their
  /// rewriting through the quantized delta symbols.
  double slot1_rewrite = 0.0;
  double slot2_rewrite = 0.0;
};

RCommutatorResiduals r_commutator_identities_residual(const PhasePoint &pt);

inline constexpr int kMaxTracePower = 8;

/// |{tr L^m, tr L^k}| relative to the magnitude of the gradient products.
Residual involutivity_residual(const PhasePoint &pt, int m, int k,
                               int max_power = kMaxTracePower);

/// Largest relative deviation between analytic partials and central finite
/// differences over the registered observables: coordinates, a linear
/// pairing, sample Lax entries, tr L^m for m <= kMaxTracePower and L itself.
double registered_partials_residual(const PhasePoint &pt);

}  // namespace fuzcal
