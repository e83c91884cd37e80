#pragma once

// Dense complex linear algebra and Schatten norms.

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>

namespace moplab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for malformed numerical input (shape mismatch, NaN, non-PSD, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Relative tolerance for positivity tests: lambda_min >= -tol * (1 + maxabs).
inline constexpr double kPsdTolerance = 1e-10;
// Relative tolerance used to flag a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// Exponent q of a Schatten (quasi-)norm. Valid values are q >= 1/2 and +inf;
/// 1/2 <= q < 1 is the quasi-norm regime.
class SchattenOrder {
 public:
  SchattenOrder(double q);  // NOLINT: implicit from double is intended

  static SchattenOrder infinity() {
    return SchattenOrder(std::numeric_limits<double>::infinity());
  }

  double value() const { return q_; }
  bool is_infinite() const { return q_ == std::numeric_limits<double>::infinity(); }
  bool is_quasi_norm() const { return q_ < 1.0; }

  // Order of the "square-rooted" norm, 2q.
  SchattenOrder doubled() const { return SchattenOrder(2.0 * q_); }

  friend bool operator==(const SchattenOrder&, const SchattenOrder&) = default;

 private:
  double q_;
};

double max_abs(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTolerance);
ComplexMatrix hermitian_part(const ComplexMatrix& a);
ComplexMatrix outer(const ComplexVector& v);

/// Singular values, descending. Hermitian inputs go through the
/// self-adjoint eigensolver (|lambda_i|), everything else through SVD.
RealVector singular_values(const ComplexMatrix& a);

/// (sum_i s_i^q)^(1/q) of a nonnegative vector, computed with max-scaling.
double lq_norm(const RealVector& s, SchattenOrder q);

/// Schatten q-norm from the singular values; q = inf is the operator norm.
double schatten_norm(const ComplexMatrix& a, SchattenOrder q);

/// Tr |A|^q = sum_i s_i^q (finite q only).
double trace_abs_power(const ComplexMatrix& a, double q);

/// Von Neumann entropy -sum lambda log lambda (natural log, 0 log 0 = 0).
double entropy(const ComplexMatrix& a);

/// Standard Kronecker product; block (i,j) equals a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_1 of a (d1*d2)x(d1*d2) matrix, returning d2 x d2.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, Index d1, Index d2);

/// Tr_2 of a (d1*d2)x(d1*d2) matrix, returning d1 x d1.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index d1, Index d2);

/// Transpose of the first tensor factor (block transpose of the d1 x d1 grid).
ComplexMatrix partial_transpose_first(const ComplexMatrix& m, Index d1, Index d2);

struct PsdCheck {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// Requires a Hermitian input (1e-10 relative); throws InputError otherwise.
PsdCheck psd_check(const ComplexMatrix& a, double tol = kPsdTolerance);

/// Hermitian PSD square root; eigenvalues within tolerance of zero are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// A^p for Hermitian PSD A (p > 0), same clamping policy as psd_sqrt.
ComplexMatrix psd_power(const ComplexMatrix& a, double p);

/// |H|^p = (H* H)^(p/2) for a general square H.
ComplexMatrix abs_power(const ComplexMatrix& h, double p);

}  // namespace moplab
