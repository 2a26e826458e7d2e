#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fuzcal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Dense N x N complex matrix tagged with its size N, the fuzzy-sphere
/// resolution. The auxiliary Planck parameter is 2/N.
class FuzzyMatrix {
public:
  explicit FuzzyMatrix(Matrix entries);

  static FuzzyMatrix zero(int n);
  static FuzzyMatrix identity(int n);
  static FuzzyMatrix diagonal(const Eigen::VectorXcd &d);

  int n() const { return static_cast<int>(m_.rows()); }
  double planck() const { return 2.0 / n(); }
  const Matrix &matrix() const { return m_; }
  const Complex &operator()(int i, int j) const { return m_(i, j); }

  FuzzyMatrix adjoint() const { return FuzzyMatrix(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }
  bool is_diagonal(double tol = 0.0) const;

  FuzzyMatrix &operator+=(const FuzzyMatrix &o);
  FuzzyMatrix &operator-=(const FuzzyMatrix &o);
  FuzzyMatrix &operator*=(Complex s);

private:
  Matrix m_;
};

FuzzyMatrix operator+(FuzzyMatrix a, const FuzzyMatrix &b);
FuzzyMatrix operator-(FuzzyMatrix a, const FuzzyMatrix &b);
FuzzyMatrix operator*(const FuzzyMatrix &a, const FuzzyMatrix &b);
FuzzyMatrix operator*(Complex s, FuzzyMatrix a);

FuzzyMatrix commutator(const FuzzyMatrix &a, const FuzzyMatrix &b);
FuzzyMatrix anticommutator(const FuzzyMatrix &a, const FuzzyMatrix &b);

/// ||A||_N = sqrt((2/N) tr A^dagger A); matches the trace rule of the
/// quantization so that constants have norm sqrt(2)|c|.
double fuzzy_norm(const FuzzyMatrix &a);
double max_entry_norm(const Matrix &a);
inline double max_entry_norm(const FuzzyMatrix &a) { return max_entry_norm(a.matrix()); }

/// Largest tensor-square dimension N accepted by dense tensor code.
inline constexpr int kMaxTensorN = 64;

/// Element of gl(N) (x) gl(N), stored as an N^2 x N^2 Kronecker matrix:
/// the coefficient of E_ab (x) E_cd sits at row a*N+c, column b*N+d.
class TensorOperator {
public:
  explicit TensorOperator(int n);
  TensorOperator(int n, Matrix entries);

  static TensorOperator left(const FuzzyMatrix &a);   // A (x) 1
  static TensorOperator right(const FuzzyMatrix &a);  // 1 (x) A
  static TensorOperator product(const FuzzyMatrix &a, const FuzzyMatrix &b);
  /// P = sum_{k,l} E_kl (x) E_lk, the slot-exchange operator.
  static TensorOperator transposition(int n);
  /// D = sum_k E_kk (x) E_kk.
  static TensorOperator diagonal_projector(int n);

  int n() const { return n_; }
  const Matrix &matrix() const { return m_; }

  Complex coeff(int a, int b, int c, int d) const {
    return m_(a * n_ + c, b * n_ + d);
  }
  Complex &coeff(int a, int b, int c, int d) {
    return m_(a * n_ + c, b * n_ + d);
  }

  /// Exchange of the two tensor slots, X_12 -> X_21.
  TensorOperator swapped() const;
  /// tr_2, contraction over the second slot.
  FuzzyMatrix partial_trace_second() const;

  TensorOperator &operator+=(const TensorOperator &o);
  TensorOperator &operator-=(const TensorOperator &o);
  TensorOperator &operator*=(Complex s);

private:
  int n_;
  Matrix m_;
};

TensorOperator operator+(TensorOperator a, const TensorOperator &b);
TensorOperator operator-(TensorOperator a, const TensorOperator &b);
TensorOperator operator*(const TensorOperator &a, const TensorOperator &b);
TensorOperator operator*(Complex s, TensorOperator a);

TensorOperator commutator(const TensorOperator &a, const TensorOperator &b);
TensorOperator anticommutator(const TensorOperator &a, const TensorOperator &b);

/// Products with A (x) 1 (slot 1) or 1 (x) A (slot 2) in O(N^5), without
/// forming the Kronecker factor.
TensorOperator times_slot(const TensorOperator &t, const FuzzyMatrix &a, int slot);
TensorOperator slot_times(const FuzzyMatrix &a, const TensorOperator &t, int slot);

/// [T, A (x) 1] and [T, 1 (x) A].
TensorOperator slot1_commutator(const TensorOperator &t, const FuzzyMatrix &a);
TensorOperator slot2_commutator(const TensorOperator &t, const FuzzyMatrix &a);
/// [T, 1 (x) A]_+.
TensorOperator slot2_anticommutator(const TensorOperator &t, const FuzzyMatrix &a);

/// Residual of an exact identity, with the magnitude of the largest term it
/// compares so that rounding can be judged relative to the data.
struct Residual {
  double absolute = 0.0;
  double scale = 1.0;

  double relative() const { return scale > 0.0 ? absolute / scale : absolute; }
};

/// max|lhs - rhs| against scale max(1, max|lhs|, max|rhs|, extra).
Residual compare(const Matrix &lhs, const Matrix &rhs, double extra_scale = 0.0);

/// Throws ResourceError when a dense tensor of size n would exceed kMaxTensorN.
void check_tensor_size(int n);

}  // namespace fuzcal
