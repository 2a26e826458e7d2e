#pragma once

#include <vector>

#include "fuzcal/linalg.hpp"
#include "fuzcal/sphere.hpp"

namespace fuzcal {

/// Quantized embedding coordinates Q_N(x1), Q_N(x2), Q_N(x3): the spin
/// (N-1)/2 generators rescaled by 2/sqrt(N^2-1).
struct Generators {
  FuzzyMatrix x1;
  FuzzyMatrix x2;
  FuzzyMatrix x3;
};

Generators build_generators(int n);

/// sigma_j = (N + 1 - 2j)/sqrt(N^2 - 1), j = 1..N; the spectrum of Q_N(x3),
/// descending from nearly +1 to nearly -1.
std::vector<double> sample_sigmas(int n);

/// V(N): ones on the first superdiagonal, the fuzzy e^{i phi}.
FuzzyMatrix vortex_matrix(int n);
/// K(N): all entries equal to one, the fuzzy 2 pi delta(phi).
FuzzyMatrix all_ones_matrix(int n);

/// Fuzzy matrix of a function on S^2.
///
/// Polynomials use the Weyl (fully symmetrized) ordering of the generators;
/// sigma profiles are sampled on the spectrum of Q_N(x3). Symbols living on
/// S^2 x S^2 must go through quantize_product.
FuzzyMatrix quantize(const SphereFunction &f, int n);

/// Quantization of the two-sphere singular symbols:
/// delta(sigma1 - sigma2) -> (N/2) sum_k E_kk (x) E_kk,
/// delta(sigma1 - sigma2) delta(phi1 - phi2) -> (N/4pi) sum_kl E_kl (x) E_lk.
TensorOperator quantize_product(const SphereFunction &f, int n);

/// {f, g}_B = d_phi f d_sigma g - d_sigma f d_phi g, so that {x1, x2} = x3 and
/// {q(sigma), L} = -q'(sigma) d_phi L.
SphereFunction sphere_bracket(const SphereFunction &f, const SphereFunction &g);

/// (1/2pi) int_{S^2} omega x1^a x2^b x3^c in closed form.
double sphere_moment(int a, int b, int c);
/// (1/2pi) int_{S^2} omega f. Polynomials use closed-form moments, other
/// point-evaluable functions use adaptive quadrature.
Complex sphere_average(const SphereFunction &f);

struct CorrespondenceResiduals {
  double product = 0.0;     // ||Q(f)Q(g) - Q(fg)||_N
  double commutator = 0.0;  // ||[Q(f),Q(g)] - i(2/N)Q({f,g})||_N
  double trace = 0.0;       // |(2/N) tr Q(f) - (1/2pi) int omega f|
};

/// Residuals of the product, commutator and trace correspondences for
/// polynomials of degree at most 4.
CorrespondenceResiduals correspondence_residuals(const Polynomial &f,
                                                 const Polynomial &g, int n);

/// Max-entry residual of (4pi/N) tr_2(Q(delta delta)(1 (x) Q(f))) = Q(f).
double full_delta_pairing_residual(const SphereFunction &f, int n);
/// Max-entry residual of (2/N) tr_2(Q(delta(sigma1-sigma2))(1 (x) Q(f))) = Q(f);
/// Q(f) must be diagonal.
double diagonal_delta_pairing_residual(const SphereFunction &f, int n);

struct PairingResiduals {
  double full_delta = 0.0;
  double diagonal_delta = 0.0;
};

PairingResiduals pairing_identity_check(const SphereFunction &f, int n);

/// Max-entry residual of X1^2 + X2^2 + X3^2 = 1.
double fuzzy_sphere_relation_residual(int n);

/// Max-entry residual of
/// Q(x1 + i x2) = sqrt(1 - a Q(x3)) sqrt(1 + b Q(x3)) V(N),
/// a = sqrt(N-1)/sqrt(N+1), b = 1/a.
double vortex_factorization_residual(int n);

}  // namespace fuzcal
