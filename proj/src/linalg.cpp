#include "fuzcal/linalg.hpp"

#include <algorithm>
#include <string>

#include "fuzcal/errors.hpp"

namespace fuzcal {

namespace {

void require_same_size(int a, int b) {
  if (a != b) {
    throw DimensionError("size mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

FuzzyMatrix::FuzzyMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("fuzzy matrix must be square");
  }
  if (m_.rows() < 1) {
    throw DimensionError("fuzzy matrix must be non-empty");
  }
}

FuzzyMatrix FuzzyMatrix::zero(int n) { return FuzzyMatrix(Matrix::Zero(n, n)); }

FuzzyMatrix FuzzyMatrix::identity(int n) {
  return FuzzyMatrix(Matrix::Identity(n, n));
}

FuzzyMatrix FuzzyMatrix::diagonal(const Eigen::VectorXcd &d) {
  return FuzzyMatrix(d.asDiagonal().toDenseMatrix());
}

bool FuzzyMatrix::is_diagonal(double tol) const {
  for (int j = 0; j < n(); ++j) {
    for (int i = 0; i < n(); ++i) {
      if (i != j && std::abs(m_(i, j)) > tol) return false;
    }
  }
  return true;
}

FuzzyMatrix &FuzzyMatrix::operator+=(const FuzzyMatrix &o) {
  require_same_size(n(), o.n());
  m_ += o.m_;
  return *this;
}

FuzzyMatrix &FuzzyMatrix::operator-=(const FuzzyMatrix &o) {
  require_same_size(n(), o.n());
  m_ -= o.m_;
  return *this;
}

FuzzyMatrix &FuzzyMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

FuzzyMatrix operator+(FuzzyMatrix a, const FuzzyMatrix &b) { return a += b; }
FuzzyMatrix operator-(FuzzyMatrix a, const FuzzyMatrix &b) { return a -= b; }

FuzzyMatrix operator*(const FuzzyMatrix &a, const FuzzyMatrix &b) {
  require_same_size(a.n(), b.n());
  return FuzzyMatrix(a.matrix() * b.matrix());
}

FuzzyMatrix operator*(Complex s, FuzzyMatrix a) { return a *= s; }

FuzzyMatrix commutator(const FuzzyMatrix &a, const FuzzyMatrix &b) {
  return a * b - b * a;
}

FuzzyMatrix anticommutator(const FuzzyMatrix &a, const FuzzyMatrix &b) {
  return a * b + b * a;
}

double fuzzy_norm(const FuzzyMatrix &a) {
  return std::sqrt(a.planck() * a.matrix().squaredNorm());
}

double max_entry_norm(const Matrix &a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void check_tensor_size(int n) {
  if (n > kMaxTensorN) {
    throw ResourceError("tensor operator of size " + std::to_string(n) +
                        " exceeds dense limit " + std::to_string(kMaxTensorN));
  }
}

TensorOperator::TensorOperator(int n) : n_(n) {
  check_tensor_size(n);
  m_ = Matrix::Zero(n * n, n * n);
}

TensorOperator::TensorOperator(int n, Matrix entries)
    : n_(n), m_(std::move(entries)) {
  check_tensor_size(n);
  if (m_.rows() != n * n || m_.cols() != n * n) {
    throw DimensionError("tensor operator entries must be N^2 x N^2");
  }
}

TensorOperator TensorOperator::left(const FuzzyMatrix &a) {
  const int n = a.n();
  TensorOperator t(n);
  for (int c = 0; c < n; ++c) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) t.coeff(x, y, c, c) = a(x, y);
    }
  }
  return t;
}

TensorOperator TensorOperator::right(const FuzzyMatrix &a) {
  const int n = a.n();
  TensorOperator t(n);
  for (int c = 0; c < n; ++c) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) t.coeff(c, c, x, y) = a(x, y);
    }
  }
  return t;
}

TensorOperator TensorOperator::product(const FuzzyMatrix &a,
                                       const FuzzyMatrix &b) {
  require_same_size(a.n(), b.n());
  const int n = a.n();
  TensorOperator t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) t.coeff(i, j, k, l) = aij * b(k, l);
      }
    }
  }
  return t;
}

TensorOperator TensorOperator::transposition(int n) {
  TensorOperator t(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) t.coeff(k, l, l, k) = 1.0;
  }
  return t;
}

TensorOperator TensorOperator::diagonal_projector(int n) {
  TensorOperator t(n);
  for (int k = 0; k < n; ++k) t.coeff(k, k, k, k) = 1.0;
  return t;
}

TensorOperator TensorOperator::swapped() const {
  TensorOperator t(n_);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      for (int c = 0; c < n_; ++c) {
        for (int d = 0; d < n_; ++d) t.coeff(c, d, a, b) = coeff(a, b, c, d);
      }
    }
  }
  return t;
}

FuzzyMatrix TensorOperator::partial_trace_second() const {
  Matrix out = Matrix::Zero(n_, n_);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      Complex s{};
      for (int c = 0; c < n_; ++c) s += coeff(a, b, c, c);
      out(a, b) = s;
    }
  }
  return FuzzyMatrix(std::move(out));
}

TensorOperator &TensorOperator::operator+=(const TensorOperator &o) {
  require_same_size(n_, o.n_);
  m_ += o.m_;
  return *this;
}

TensorOperator &TensorOperator::operator-=(const TensorOperator &o) {
  require_same_size(n_, o.n_);
  m_ -= o.m_;
  return *this;
}

TensorOperator &TensorOperator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

TensorOperator operator+(TensorOperator a, const TensorOperator &b) {
  return a += b;
}

TensorOperator operator-(TensorOperator a, const TensorOperator &b) {
  return a -= b;
}

TensorOperator operator*(const TensorOperator &a, const TensorOperator &b) {
  require_same_size(a.n(), b.n());
  return TensorOperator(a.n(), a.matrix() * b.matrix());
}

TensorOperator operator*(Complex s, TensorOperator a) { return a *= s; }

TensorOperator commutator(const TensorOperator &a, const TensorOperator &b) {
  return a * b - b * a;
}

TensorOperator anticommutator(const TensorOperator &a, const TensorOperator &b) {
  return a * b + b * a;
}

namespace {

// T (A (x) 1) and T (1 (x) A) as dense products. Column b*N + d of the
// N^2 x N^2 storage is contiguous, so the first slot is a single
// (N^3 x N)(N x N) product and the second one N blocks of (N^2 x N)(N x N).
Matrix right_slot_product(const Matrix &t, const Matrix &a, int n, int slot) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  Matrix out(n2, n2);
  const bool diagonal = (a - Matrix(a.diagonal().asDiagonal())).isZero(0.0);
  if (diagonal) {
    // column b*N + d picks up a_bb (slot 1) or a_dd (slot 2)
    for (int b = 0; b < n; ++b) {
      for (int d = 0; d < n; ++d) {
        const Complex w = slot == 1 ? a(b, b) : a(d, d);
        out.col(b * n + d) = t.col(b * n + d) * w;
      }
    }
    return out;
  }
  if (slot == 1) {
    Eigen::Map<const Matrix> in(t.data(), n2 * n, n);
    Eigen::Map<Matrix>(out.data(), n2 * n, n).noalias() = in * a;
  } else {
    for (int b = 0; b < n; ++b) {
      out.middleCols(b * n, n).noalias() = t.middleCols(b * n, n) * a;
    }
  }
  return out;
}

}  // namespace

TensorOperator times_slot(const TensorOperator &t, const FuzzyMatrix &a, int slot) {
  require_same_size(t.n(), a.n());
  if (slot != 1 && slot != 2) throw DomainError("slot must be 1 or 2");
  return TensorOperator(t.n(), right_slot_product(t.matrix(), a.matrix(), t.n(), slot));
}

TensorOperator slot_times(const FuzzyMatrix &a, const TensorOperator &t, int slot) {
  require_same_size(t.n(), a.n());
  if (slot != 1 && slot != 2) throw DomainError("slot must be 1 or 2");
  // (A (x) 1) T = (T^t (A^t (x) 1))^t
  const Matrix tt = t.matrix().transpose();
  const Matrix at = a.matrix().transpose();
  return TensorOperator(t.n(), right_slot_product(tt, at, t.n(), slot).transpose());
}

TensorOperator slot1_commutator(const TensorOperator &t, const FuzzyMatrix &a) {
  return times_slot(t, a, 1) - slot_times(a, t, 1);
}

TensorOperator slot2_commutator(const TensorOperator &t, const FuzzyMatrix &a) {
  return times_slot(t, a, 2) - slot_times(a, t, 2);
}

TensorOperator slot2_anticommutator(const TensorOperator &t, const FuzzyMatrix &a) {
  return times_slot(t, a, 2) + slot_times(a, t, 2);
}

Residual compare(const Matrix &lhs, const Matrix &rhs, double extra_scale) {
  Residual r;
  r.absolute = max_entry_norm(lhs - rhs);
  r.scale = std::max({1.0, max_entry_norm(lhs), max_entry_norm(rhs), extra_scale});
  return r;
}

}  // namespace fuzcal
