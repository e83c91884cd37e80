#include "moplab/toeplitz.hpp"

#include "moplab/io.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace moplab {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResidualTolerance = 1e-8;

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi - 1e-12) t = 0.0;
  return t;
}

}  // namespace

ComplexMatrix ToeplitzDecomposition::sum_p() const {
  if (terms.empty()) return ComplexMatrix(0, 0);
  ComplexMatrix s = ComplexMatrix::Zero(terms.front().p.rows(), terms.front().p.cols());
  for (const auto& t : terms) s += t.p;
  return s;
}

ComplexMatrix ToeplitzDecomposition::sum_phased_p() const {
  if (terms.empty()) return ComplexMatrix(0, 0);
  ComplexMatrix s = ComplexMatrix::Zero(terms.front().p.rows(), terms.front().p.cols());
  for (const auto& t : terms) s += std::polar(1.0, t.theta) * t.p;
  return s;
}

ToeplitzDecomposition decompose_block_toeplitz(const ComplexMatrix& b, const ComplexMatrix& c) {
  const Index d = b.rows();
  if (d == 0 || b.cols() != d || c.rows() != d || c.cols() != d) {
    throw InputError("decompose_block_toeplitz: B and C must be square of equal nonzero size");
  }
  if (!is_hermitian(b, 1e-10)) throw InputError("decompose_block_toeplitz: B is not Hermitian");
  ComplexMatrix rho(2 * d, 2 * d);
  rho << b, c, c.adjoint(), b;
  if (!psd_check(rho).is_psd) throw InputError("decompose_block_toeplitz: [[B, C], [C^*, B]] is not PSD");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(b));
  const RealVector& lam = es.eigenvalues();
  if (lam(0) <= kPsdTolerance * (1.0 + max_abs(b))) {
    throw SingularBlockError(
        fmt::format("decompose_block_toeplitz: B is singular (eigenvalue {:.3e}); regularize or reject", lam(0)),
        lam(0));
  }
  const ComplexMatrix& u = es.eigenvectors();
  const RealVector sq = lam.cwiseSqrt();
  const ComplexMatrix s = u * sq.cast<Complex>().asDiagonal() * u.adjoint();
  const ComplexMatrix s_inv = u * sq.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();

  const ComplexMatrix t = s_inv * c * s_inv;
  const double commutator = (t * t.adjoint() - t.adjoint() * t).cwiseAbs().maxCoeff();
  if (commutator > 1e-9) {
    throw UnsupportedDecomposition(
        fmt::format("decompose_block_toeplitz: whitened block B^-1/2 C B^-1/2 is not normal "
                    "(||TT* - T*T||_max = {:.3e}); unsupported",
                    commutator),
        commutator);
  }

  Eigen::ComplexSchur<ComplexMatrix> schur(t);
  const ComplexMatrix& v = schur.matrixU();
  const ComplexMatrix& tri = schur.matrixT();

  std::vector<ToeplitzTerm> raw;
  for (Index m = 0; m < d; ++m) {
    const Complex ev = tri(m, m);
    double r = std::abs(ev);
    if (r > 1.0 + 1e-8) {
      throw InputError(fmt::format("decompose_block_toeplitz: whitened eigenvalue of modulus {} > 1", r));
    }
    r = std::min(r, 1.0);
    const ComplexVector w = s * v.col(m);
    const ComplexMatrix q = w * w.adjoint();
    if (r >= 1.0 - 1e-14) {
      raw.push_back({wrap(std::arg(ev)), q});
    } else if (r <= 1e-14) {
      raw.push_back({0.0, 0.5 * q});
      raw.push_back({std::numbers::pi, 0.5 * q});
    } else {
      const double alpha = std::arg(ev);
      const double phi = std::acos(r);
      raw.push_back({wrap(alpha + phi), 0.5 * q});
      raw.push_back({wrap(alpha - phi), 0.5 * q});
    }
  }

  std::sort(raw.begin(), raw.end(), [](const ToeplitzTerm& a, const ToeplitzTerm& b) { return a.theta < b.theta; });
  ToeplitzDecomposition dec;
  for (auto& term : raw) {
    if (!dec.terms.empty() && std::abs(dec.terms.back().theta - term.theta) <= 1e-12) {
      dec.terms.back().p += term.p;
    } else {
      dec.terms.push_back(std::move(term));
    }
  }
  for (auto& term : dec.terms) term.p = hermitian_part(term.p);
  return dec;
}

CheckReport verify_decomposition(const ToeplitzDecomposition& dec, const ComplexMatrix& b, const ComplexMatrix& c) {
  std::vector<std::string> failures;
  const double norm = std::max({b.norm(), c.norm(), 1e-300});

  auto residual = [&](const ComplexMatrix& sum, const ComplexMatrix& target) {
    if (sum.size() == 0) return target.norm() / norm;
    if (sum.rows() != target.rows() || sum.cols() != target.cols()) return std::numeric_limits<double>::infinity();
    return (sum - target).norm() / norm;
  };
  const double res_b = residual(dec.sum_p(), b);
  const double res_c = residual(dec.sum_phased_p(), c);
  double worst = std::max(res_b, res_c) / kResidualTolerance;
  if (res_b > kResidualTolerance) failures.push_back("sum P_k = B");
  if (res_c > kResidualTolerance) failures.push_back("sum e^{i theta_k} P_k = C");

  for (std::size_t k = 0; k < dec.terms.size(); ++k) {
    const ComplexMatrix& p = dec.terms[k].p;
    const double allowance = kPsdTolerance * (1.0 + max_abs(p));
    double defect = 0.0;
    if (p.rows() != p.cols()) {
      defect = std::numeric_limits<double>::infinity();
    } else {
      defect = (p - p.adjoint()).cwiseAbs().maxCoeff() / allowance;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(p), Eigen::EigenvaluesOnly);
      defect = std::max(defect, -es.eigenvalues()(0) / allowance);
    }
    if (defect > 1.0) failures.push_back(fmt::format("P_{} PSD", k + 1));
    worst = std::max(worst, defect);
  }

  CheckReport r = make_report("toeplitz_decomposition", worst, 1.0, 0.0);
  r.params = {{"terms", dec.terms.size()}, {"residual_b", res_b}, {"residual_c", res_c}, {"dim", b.rows()}};
  r.notes = failures;
  if (!r.holds) {
    r.witness = json{{"decomposition", decomposition_to_json(dec)}, {"b", matrix_to_json(b)}, {"c", matrix_to_json(c)}};
  }
  return r;
}

json decomposition_to_json(const ToeplitzDecomposition& dec) {
  json terms = json::array();
  for (const auto& t : dec.terms) terms.push_back({{"theta", t.theta}, {"p", matrix_to_json(t.p)}});
  return {{"type", "toeplitz_decomposition"}, {"terms", std::move(terms)}};
}

ToeplitzDecomposition decomposition_from_json(const json& j) {
  ToeplitzDecomposition dec;
  try {
    for (const auto& t : j.at("terms")) dec.terms.push_back({t.at("theta").get<double>(), matrix_from_json(t.at("p"))});
  } catch (const json::exception& e) {
    throw InputError(std::string("decomposition_from_json: ") + e.what());
  }
  return dec;
}

}  // namespace moplab
