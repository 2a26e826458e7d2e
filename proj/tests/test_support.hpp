#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "fuzcal/fuzzy_sphere.hpp"
#include "fuzcal/sphere.hpp"

namespace fuzcal::testing {

/// Random real polynomial with up to `terms` monomials of total degree <= max_degree.
inline Polynomial random_polynomial(std::mt19937_64 &rng, int max_degree,
                                    int terms = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Polynomial p;
  for (int t = 0; t < terms; ++t) {
    const int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    const int a = split(rng);
    std::uniform_int_distribution<int> split2(0, d - a);
    const int b = split2(rng);
    p += Polynomial::monomial(coeff(rng), a, b, d - a - b);
  }
  return p;
}

/// Weyl ordering by explicit enumeration of every distinct word.
inline Matrix brute_force_weyl(const Polynomial &p, int n) {
  const Generators g = build_generators(n);
  const Matrix *gens[3] = {&g.x1.matrix(), &g.x2.matrix(), &g.x3.matrix()};
  Matrix out = Matrix::Zero(n, n);
  for (const auto &[e, c] : p.terms()) {
    std::vector<int> word;
    for (int axis = 0; axis < 3; ++axis) word.insert(word.end(), e[axis], axis);
    std::sort(word.begin(), word.end());
    Matrix acc = Matrix::Zero(n, n);
    int count = 0;
    do {
      Matrix m = Matrix::Identity(n, n);
      for (int axis : word) m = m * *gens[axis];
      acc += m;
      ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    out += (c / static_cast<double>(count)) * acc;
  }
  return out;
}

/// Grid of interior chart points, away from the poles and the phi = +-pi seam.
inline std::vector<SpherePoint> interior_grid(int ns = 7, int nphi = 9) {
  std::vector<SpherePoint> pts;
  for (int i = 0; i < ns; ++i) {
    const double s = -0.9 + 1.8 * i / (ns - 1);
    for (int j = 0; j < nphi; ++j) {
      const double phi = -3.0 + 6.0 * j / (nphi - 1);
      pts.emplace_back(s, phi);
    }
  }
  return pts;
}

}  // namespace fuzcal::testing
