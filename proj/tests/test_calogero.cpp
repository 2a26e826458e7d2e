#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fuzcal/calogero.hpp"
#include "fuzcal/errors.hpp"
#include "fuzcal/fuzzy_sphere.hpp"

namespace fuzcal {
namespace {

PhasePoint two_body(double c = 1.0, std::vector<double> p = {3.0, 5.0}) {
  return PhasePoint({1.0, -1.0}, std::move(p), c);
}

TEST(Lax, TwoParticleValues) {
  const FuzzyMatrix l = build_lax(two_body());
  EXPECT_EQ(l(0, 0), Complex(3.0));
  EXPECT_EQ(l(1, 1), Complex(5.0));
  EXPECT_EQ(l(0, 1), Complex(0.0, 0.25));
  EXPECT_EQ(l(1, 0), Complex(0.0, -0.25));
}

TEST(Lax, FreeParticlesAreDiagonal) {
  const FuzzyMatrix l = build_lax(PhasePoint({0.1, 0.5, -0.3}, {1.0, 2.0, 3.0}, 0.0));
  EXPECT_TRUE(l.is_diagonal());
  EXPECT_EQ(l(2, 2), Complex(3.0));
}

TEST(Lax, HermitianWithQuadraticTraceFormula) {
  std::mt19937_64 rng(42);
  for (int n : {2, 5, 13, 40}) {
    const PhasePoint pt = random_phase_point(n, 1.7, rng);
    const FuzzyMatrix l = build_lax(pt);
    EXPECT_LE(max_entry_norm(l - l.adjoint()), 0.0);
    double h = 0.0;
    for (int i = 0; i < n; ++i) {
      h += 0.5 * pt.p(i) * pt.p(i);
      for (int j = 0; j < n; ++j) {
        if (i != j) {
          const double d = pt.q(i) - pt.q(j);
          h += 0.5 * pt.kappa() * pt.kappa() / (d * d);
        }
      }
    }
    const double half_trace = 0.5 * (l * l).trace().real();
    EXPECT_NEAR(half_trace, h, 1e-12 * std::abs(h));
    // real spectrum
    Eigen::ComplexEigenSolver<Matrix> es(l.matrix());
    EXPECT_LE(es.eigenvalues().imag().cwiseAbs().maxCoeff(),
              1e-10 * es.eigenvalues().cwiseAbs().maxCoeff());
  }
}

TEST(Lax, CoincidentPositionsNameThePair) {
  const PhasePoint pt({0.0, 0.3, 0.3}, {0, 0, 0}, 1.0);
  try {
    build_lax(pt);
    FAIL() << "expected SingularConfigurationError";
  } catch (const SingularConfigurationError &e) {
    EXPECT_EQ(e.first(), 1);
    EXPECT_EQ(e.second(), 2);
  }
  EXPECT_THROW(build_r_matrix(pt), SingularConfigurationError);
}

TEST(PositionMatrices, DiagonalAndCommuting) {
  const PositionMatrices m = build_position_matrices(two_body());
  EXPECT_EQ(m.positions(0, 0), Complex(1.0));
  EXPECT_EQ(m.positions(1, 1), Complex(-1.0));
  EXPECT_EQ(m.positions(0, 1), Complex{});
  const PositionMatrices z = build_position_matrices(PhasePoint({0, 0, 0}, {1, 2, 3}, 1.0));
  EXPECT_EQ(max_entry_norm(z.positions), 0.0);
  EXPECT_EQ(max_entry_norm(commutator(m.positions, m.momenta)), 0.0);
}

TEST(CommutatorIdentity, ExactForSmallAndLargeN) {
  EXPECT_LE(commutator_identity_residual(two_body()).absolute, 1e-15);
  EXPECT_EQ(commutator_identity_residual(two_body(0.0)).absolute, 0.0);
  std::mt19937_64 rng(7);
  const PhasePoint pt = random_phase_point(64, 1.0, rng);
  EXPECT_LE(commutator_identity_residual(pt).relative(), 1e-13);
}

TEST(RMatrix, TwoParticleCoefficients) {
  const RMatrix r = build_r_matrix(two_body());
  // E12 (x) E21 carries i/(q2 - q1) = -i/2
  EXPECT_EQ(r.r12.coeff(0, 1, 1, 0), Complex(0.0, -0.5));
  EXPECT_EQ(r.r12.coeff(1, 0, 0, 1), Complex(0.0, 0.5));
  // E11 (x) E12 from the second sum: (1/2) i/(q2 - q1)
  EXPECT_EQ(r.r12.coeff(0, 0, 0, 1), Complex(0.0, -0.25));
  EXPECT_EQ(r.r12.coeff(0, 0, 1, 0), Complex(0.0, 0.25));
  // slot exchange: E21 (x) E12 coefficient of r21
  EXPECT_EQ(r.r21.coeff(1, 0, 0, 1), Complex(0.0, -0.5));
  EXPECT_EQ(r.r21.coeff(0, 1, 0, 0), Complex(0.0, -0.25));
}

TEST(RMatrix, SwapIsAnInvolutionAndTranslationInvariance) {
  std::mt19937_64 rng(9);
  const PhasePoint pt = random_phase_point(5, 1.0, rng);
  const RMatrix r = build_r_matrix(pt);
  EXPECT_EQ(r.r21.swapped().matrix(), r.r12.matrix());
  std::vector<double> shifted(pt.q().begin(), pt.q().end());
  for (double &v : shifted) v += 3.25;
  const RMatrix s = build_r_matrix(pt.with_coordinates(shifted, {pt.p().begin(), pt.p().end()}));
  EXPECT_LE(max_entry_norm((s.r12 - r.r12).matrix()), 1e-12);
}

TEST(PoissonEngine, CanonicalPairsAndAntisymmetry) {
  std::mt19937_64 rng(1);
  const PhasePoint pt = random_phase_point(4, 1.0, rng);
  const PoissonEngine e = PoissonEngine::fuzzy(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(e.bracket(momentum(i), position(j), pt).value, Complex(i == j ? 2.0 : 0.0));
      EXPECT_EQ(e.bracket(position(i), position(j), pt).value, Complex{});
    }
  }
  for (const ScalarObservable &a : {trace_power(3), lax_entry(0, 2), position(1)}) {
    EXPECT_EQ(e.bracket(a, a, pt).value, Complex{});
  }
}

TEST(PoissonEngine, HandEvaluatedLaxBracket) {
  const PhasePoint pt = two_body(1.0, {0.7, -0.2});
  const BracketValue b = PoissonEngine::fuzzy(2).bracket(lax_entry(0, 0), lax_entry(0, 1), pt);
  EXPECT_NEAR(std::abs(b.value - Complex(0.0, -0.125)), 0.0, 1e-16);
}

TEST(PoissonEngine, RejectsObservablesWithoutPartials) {
  const PhasePoint pt = two_body();
  const ScalarObservable opaque = value_only("opaque", [](const PhasePoint &p) {
    return Complex(p.q(0) * p.p(1));
  });
  EXPECT_THROW(PoissonEngine(1.0).bracket(opaque, position(0), pt),
               UnsupportedObservableError);
  EXPECT_FALSE(product(opaque, position(0)).has_partials());
  MatrixObservable opaque_matrix{"M", [](const PhasePoint &p) { return build_lax(p); }, {}};
  EXPECT_THROW(PoissonEngine(1.0).bracket(opaque_matrix, lax_observable(), pt),
               UnsupportedObservableError);
}

double relative_gradient_error(const Gradient &a, const Gradient &b) {
  const double scale = std::max({a.dq.cwiseAbs().maxCoeff(), a.dp.cwiseAbs().maxCoeff(), 1e-300});
  return std::max((a.dq - b.dq).cwiseAbs().maxCoeff(), (a.dp - b.dp).cwiseAbs().maxCoeff()) / scale;
}

TEST(PoissonEngine, AnalyticPartialsMatchFiniteDifferences) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 4, 8}) {
    for (int trial = 0; trial < 5; ++trial) {
      const PhasePoint pt = random_phase_point(n, 1.0, rng);
      std::vector<ScalarObservable> obs{position(0), momentum(n - 1),
                                        linear_in_positions(std::vector<double>(n, 0.5)),
                                        lax_entry(0, n - 1), lax_entry(1, 1),
                                        product(position(0), trace_power(2)),
                                        sum(momentum(0), lax_entry(n - 1, 0))};
      for (int m = 1; m <= 6; ++m) obs.push_back(trace_power(m));
      for (const ScalarObservable &o : obs) {
        EXPECT_LE(relative_gradient_error(o.gradient(pt), finite_difference_gradient(o, pt)), 1e-6)
            << o.name << " n=" << n;
      }
      const MatrixGradient an = lax_observable().gradient(pt);
      const MatrixGradient fd = finite_difference_gradient(lax_observable(), pt);
      double err = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        err = std::max({err, max_entry_norm(an.dq[i] - fd.dq[i]), max_entry_norm(an.dp[i] - fd.dp[i])});
        scale = std::max({scale, max_entry_norm(an.dq[i]), max_entry_norm(an.dp[i])});
      }
      EXPECT_LE(err / scale, 1e-6);
    }
  }
}

TEST(PoissonEngine, LeibnizRule) {
  std::mt19937_64 rng(77);
  const PhasePoint pt = random_phase_point(5, 1.2, rng);
  const PoissonEngine e = PoissonEngine::fuzzy(5);
  const ScalarObservable a = trace_power(3), b = lax_entry(1, 3), c = product(momentum(2), position(4));
  const BracketValue lhs = e.bracket(a, product(b, c), pt);
  const Complex rhs = e.bracket(a, b, pt).value * c.value(pt) + b.value(pt) * e.bracket(a, c, pt).value;
  EXPECT_LE(std::abs(lhs.value - rhs), 1e-12 * lhs.magnitude);
}

// {B, C} as an observable whose partials come from central differences of
// the analytic bracket.
ScalarObservable bracket_observable(const ScalarObservable &b, const ScalarObservable &c,
                                    const PoissonEngine &e) {
  ScalarObservable out;
  out.name = "{" + b.name + "," + c.name + "}";
  out.value = [b, c, e](const PhasePoint &pt) { return e.bracket(b, c, pt).value; };
  // five-point stencil; the library helper's second-order differences are
  // too coarse for the nested bracket
  out.gradient = [value = out.value](const PhasePoint &pt) {
    const int n = pt.n();
    const double h = 1e-3;
    Gradient g{Vector::Zero(n), Vector::Zero(n)};
    std::vector<double> q(pt.q().begin(), pt.q().end()), p(pt.p().begin(), pt.p().end());
    auto diff = [&](std::vector<double> &x, int i) {
      const double x0 = x[i];
      Complex acc{};
      const double off[4] = {-2 * h, -h, h, 2 * h};
      const double w[4] = {1, -8, 8, -1};
      for (int s = 0; s < 4; ++s) {
        x[i] = x0 + off[s];
        acc += w[s] * value(pt.with_coordinates(q, p));
      }
      x[i] = x0;
      return acc / (12 * h);
    };
    for (int i = 0; i < n; ++i) {
      g.dq[i] = diff(q, i);
      g.dp[i] = diff(p, i);
    }
    return g;
  };
  return out;
}

TEST(PoissonEngine, JacobiIdentity) {
  std::mt19937_64 rng(5);
  const PhasePoint pt = random_phase_point(4, 1.0, rng);
  const PoissonEngine e = PoissonEngine::fuzzy(4);
  const std::vector<std::array<ScalarObservable, 3>> triples{
      {product(position(0), momentum(1)), product(momentum(0), momentum(0)),
       product(position(1), position(0))},
      {trace_power(2), trace_power(3), trace_power(4)},
      {trace_power(2), lax_entry(0, 1), product(position(2), momentum(2))}};
  for (const auto &[a, b, c] : triples) {
    const BracketValue t1 = e.bracket(a, bracket_observable(b, c, e), pt);
    const BracketValue t2 = e.bracket(b, bracket_observable(c, a, e), pt);
    const BracketValue t3 = e.bracket(c, bracket_observable(a, b, e), pt);
    const double scale = std::max({t1.magnitude, t2.magnitude, t3.magnitude, 1.0});
    EXPECT_LE(std::abs(t1.value + t2.value + t3.value) / scale, 1e-9)
        << a.name << " " << b.name << " " << c.name;
  }
}

TEST(PoissonEngine, DiscretizedFieldBracket) {
  // {p_i, (2/N) tr(Q(T) R)} = T(sigma_i) with {p_i, q_j} = (N/2) delta_ij
  const int n = 9;
  std::mt19937_64 rng(3);
  const PhasePoint pt = random_phase_point(n, 1.0, rng);
  const auto sig = sample_sigmas(n);
  auto profile = [](double s) { return std::cos(2.0 * s) + s * s * s; };
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = (2.0 / n) * profile(sig[j]);
  const ScalarObservable pairing = linear_in_positions(w);
  for (int i = 0; i < n; ++i) {
    const Complex v = PoissonEngine::fuzzy(n).bracket(momentum(i), pairing, pt).value;
    EXPECT_NEAR(std::abs(v - profile(sig[i])), 0.0, 1e-15);
  }
}

TEST(FundamentalRelation, SmallSystems) {
  std::mt19937_64 rng(314);
  EXPECT_LE(fundamental_relation_residual(random_phase_point(2, 1.0, rng)).relative(), 1e-14);
  const PhasePoint free_pt = random_phase_point(4, 0.0, rng);
  const Residual r = fundamental_relation_residual(free_pt);
  EXPECT_EQ(r.absolute, 0.0);
  EXPECT_EQ(max_entry_norm(PoissonEngine::fuzzy(4)
                               .bracket(lax_observable(), lax_observable(), free_pt)
                               .matrix()),
            0.0);
}

TEST(FundamentalRelation, SeededSweepAtTwelveParticles) {
  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    worst = std::max(worst, fundamental_relation_residual(random_phase_point(12, 1.0, rng)).relative());
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(FundamentalRelation, SizeGuard) {
  std::mt19937_64 rng(1);
  const PhasePoint pt = random_phase_point(kMaxTensorN + 1, 1.0, rng);
  EXPECT_THROW(fundamental_relation_residual(pt), ResourceError);
}

TEST(RCommutators, ExactIdentitiesAndRewrites) {
  const RCommutatorResiduals two = r_commutator_identities_residual(two_body());
  EXPECT_LE(two.slot1.absolute, 1e-14);
  EXPECT_LE(two.slot2.absolute, 1e-14);
  std::mt19937_64 rng(16);
  const PhasePoint pt = random_phase_point(16, 1.0, rng);
  const RCommutatorResiduals r = r_commutator_identities_residual(pt);
  EXPECT_LE(r.slot1.relative(), 1e-12);
  EXPECT_LE(r.slot2.relative(), 1e-12);
  EXPECT_LE(r.slot1_rewrite, 1e-14);
  EXPECT_LE(r.slot2_rewrite, 1e-14);
}

TEST(RCommutators, TranslationLeavesResidualsUnchanged) {
  std::mt19937_64 rng(8);
  const PhasePoint pt = random_phase_point(6, 1.0, rng);
  std::vector<double> shifted(pt.q().begin(), pt.q().end());
  for (double &v : shifted) v -= 0.75;
  const auto a = r_commutator_identities_residual(pt);
  const auto b = r_commutator_identities_residual(pt.with_coordinates(shifted, {pt.p().begin(), pt.p().end()}));
  EXPECT_LE(a.slot1.relative(), 1e-14);
  EXPECT_LE(b.slot1.relative(), 1e-14);
  EXPECT_LE(a.slot2.relative(), 1e-14);
  EXPECT_LE(b.slot2.relative(), 1e-14);
}

TEST(Involutivity, TrivialCases) {
  std::mt19937_64 rng(6);
  const PhasePoint pt = random_phase_point(6, 1.0, rng);
  EXPECT_EQ(involutivity_residual(pt, 4, 4).absolute, 0.0);
  for (int k = 1; k <= 6; ++k) {
    EXPECT_LE(involutivity_residual(pt, 1, k).relative(), 1e-13);
  }
  EXPECT_THROW(involutivity_residual(pt, 0, 2), DomainError);
  EXPECT_THROW(involutivity_residual(pt, 2, 9), DomainError);
}

TEST(Involutivity, GridOfTracePowers) {
  std::mt19937_64 rng(99);
  EXPECT_LE(involutivity_residual(random_phase_point(6, 1.0, rng), 2, 3).relative(), 1e-10);
  for (int n : {3, 8, 17, 32}) {
    const PhasePoint pt = random_phase_point(n, 1.0, rng);
    for (int m = 2; m <= 6; ++m) {
      for (int k = 2; k <= 6; ++k) {
        const Residual r = involutivity_residual(pt, m, k);
        EXPECT_LE(r.relative(), 1e-9) << "n=" << n << " m=" << m << " k=" << k;
      }
    }
  }
}

}  // namespace
}  // namespace fuzcal
