#include "moplab/matcore.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace moplab {

namespace {

void require_finite(const ComplexMatrix& a, const char* where) {
  if (!all_finite(a)) {
    throw InputError(std::string(where) + ": non-finite matrix entry");
  }
}

void require_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols()) {
    throw InputError(std::string(where) + ": matrix is not square");
  }
}

// Eigen-decomposition of a Hermitian matrix; checks positivity and clamps
// small negative eigenvalues to zero.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> psd_eigen(const ComplexMatrix& a,
                                                       const char* where) {
  require_square(a, where);
  require_finite(a, where);
  if (!is_hermitian(a, 1e-10)) {
    throw InputError(std::string(where) + ": matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    throw InputError(std::string(where) + ": eigensolver failed");
  }
  if (a.size() > 0) {
    const double floor = -kPsdTolerance * (1.0 + max_abs(a));
    if (es.eigenvalues()(0) < floor) {
      throw InputError(std::string(where) + ": matrix is not PSD (eigenvalue " +
                       std::to_string(es.eigenvalues()(0)) + ")");
    }
  }
  return es;
}

ComplexMatrix spectral_function(const Eigen::SelfAdjointEigenSolver<ComplexMatrix>& es,
                                double p) {
  RealVector lam = es.eigenvalues().cwiseMax(0.0);
  for (Index i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) > 0.0 ? std::pow(lam(i), p) : 0.0;
  }
  const ComplexMatrix& u = es.eigenvectors();
  return u * lam.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace

SchattenOrder::SchattenOrder(double q) : q_(q) {
  if (std::isnan(q) || q < 0.5) {
    throw InputError("SchattenOrder: q must satisfy q >= 1/2 (got " + std::to_string(q) + ")");
  }
}

double max_abs(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  return defect <= rel_tol * (1.0 + max_abs(a));
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector(0);
  if (is_hermitian(a)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
    RealVector s = es.eigenvalues().cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double lq_norm(const RealVector& s, SchattenOrder q) {
  if (s.size() == 0) return 0.0;
  const double smax = s.maxCoeff();
  if (smax <= 0.0) return 0.0;
  if (q.is_infinite()) return smax;
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 0.0) acc += std::pow(s(i) / smax, q.value());
  }
  return smax * std::pow(acc, 1.0 / q.value());
}

double schatten_norm(const ComplexMatrix& a, SchattenOrder q) {
  require_finite(a, "schatten_norm");
  return lq_norm(singular_values(a), q);
}

double trace_abs_power(const ComplexMatrix& a, double q) {
  require_finite(a, "trace_abs_power");
  const RealVector s = singular_values(a);
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 0.0) acc += std::pow(s(i), q);
  }
  return acc;
}

double entropy(const ComplexMatrix& a) {
  require_square(a, "entropy");
  require_finite(a, "entropy");
  if (!is_hermitian(a, 1e-10)) throw InputError("entropy: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const RealVector& lam = es.eigenvalues();
  const double tr = lam.sum();
  if (!(tr > 0.0)) throw InputError("entropy: trace must be positive");
  if (lam(0) < -1e-10 * tr) {
    throw InputError("entropy: negative eigenvalue " + std::to_string(lam(0)));
  }
  double s = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > 0.0) s -= lam(i) * std::log(lam(i));
  }
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, Index d1, Index d2) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw InputError("partial_trace_first: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index d1, Index d2) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw InputError("partial_trace_second: dimension mismatch");
  }
  ComplexMatrix out(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
  }
  return out;
}

ComplexMatrix partial_transpose_first(const ComplexMatrix& m, Index d1, Index d2) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw InputError("partial_transpose_first: dimension mismatch");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d1; ++j) {
      out.block(i * d2, j * d2, d2, d2) = m.block(j * d2, i * d2, d2, d2);
    }
  }
  return out;
}

PsdCheck psd_check(const ComplexMatrix& a, double tol) {
  require_square(a, "psd_check");
  require_finite(a, "psd_check");
  if (!is_hermitian(a, 1e-10)) throw InputError("psd_check: matrix is not Hermitian");
  if (a.size() == 0) return {true, 0.0};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return {lmin >= -tol * (1.0 + max_abs(a)), lmin};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) { return psd_power(a, 0.5); }

ComplexMatrix psd_power(const ComplexMatrix& a, double p) {
  if (!(p > 0.0)) throw InputError("psd_power: exponent must be positive");
  if (a.size() == 0) return a;
  return spectral_function(psd_eigen(a, "psd_power"), p);
}

ComplexMatrix abs_power(const ComplexMatrix& h, double p) {
  require_finite(h, "abs_power");
  return psd_power(hermitian_part(h.adjoint() * h), 0.5 * p);
}

}  // namespace moplab
