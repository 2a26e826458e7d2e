#include "fuzcal/phase_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fuzcal/errors.hpp"

namespace fuzcal {

PhasePoint::PhasePoint(std::vector<double> q, std::vector<double> p, double c,
                       double min_gap)
    : q_(std::move(q)), p_(std::move(p)), c_(c), min_gap_(min_gap) {
  if (q_.size() != p_.size()) {
    throw DimensionError("q and p must have the same length");
  }
  if (q_.size() < 2) throw DimensionError("phase point needs N >= 2");
  if (!(c_ >= 0.0) || !std::isfinite(c_)) {
    throw DomainError("coupling c must be finite and non-negative");
  }
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!std::isfinite(q_[i]) || !std::isfinite(p_[i])) {
      throw DomainError("phase point coordinates must be finite");
    }
  }
}

double PhasePoint::smallest_gap() const {
  std::vector<double> s(q_);
  std::sort(s.begin(), s.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i] - s[i - 1]);
  return gap;
}

void PhasePoint::require_distinct() const {
  const int m = n();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(q_[i] - q_[j]) <= min_gap_) {
        std::ostringstream os;
        os << "singular configuration: q_" << i + 1 << " = " << q_[i]
           << " and q_" << j + 1 << " = " << q_[j] << " closer than "
           << min_gap_;
        throw SingularConfigurationError(os.str(), i, j);
      }
    }
  }
}

PhasePoint PhasePoint::with_coordinates(std::vector<double> q,
                                        std::vector<double> p) const {
  return PhasePoint(std::move(q), std::move(p), c_, min_gap_);
}

double random_point_gap(int n) {
  return std::min(10.0 / (static_cast<double>(n) * n), 1.0 / (n - 1.0));
}

PhasePoint random_phase_point(int n, double c, std::mt19937_64 &rng) {
  if (n < 2) throw DimensionError("phase point needs N >= 2");
  const double gap = random_point_gap(n);
  // uniform order statistics on a shortened interval, then spread by the gap:
  // the same law as rejection sampling on consecutive gaps
  std::uniform_real_distribution<double> uni(-1.0, 1.0 - (n - 1) * gap);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> q(n);
  std::vector<double> p(n);
  for (auto &x : q) x = uni(rng);
  for (auto &x : p) x = normal(rng);
  std::sort(q.begin(), q.end());
  for (int i = 0; i < n; ++i) q[i] += i * gap;
  return PhasePoint(std::move(q), std::move(p), c);
}

}  // namespace fuzcal
