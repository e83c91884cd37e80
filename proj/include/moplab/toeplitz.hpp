#pragma once

// Finite positive decomposition of PSD 2 x d block-Toeplitz matrices
//
//   [[B, C], [C^*, B]] = sum_k [[1, e^{i theta_k}], [e^{-i theta_k}, 1]] (x) P_k,   P_k >= 0,
//
// which exhibits such states as separable.
//
// Supported regime: B positive definite and T = B^{-1/2} C B^{-1/2} normal.
// Each eigenvalue r e^{i alpha} of T (r <= 1) is split as the midpoint of
// e^{i(alpha + phi)} and e^{i(alpha - phi)} with cos(phi) = r; a zero eigenvalue
// uses the points 0 and pi. The eigenprojectors are pulled back through
// B^{1/2}, and terms with equal angles are merged. At most 2d terms result.

#include "moplab/inequalities.hpp"
#include "moplab/matcore.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace moplab {

struct ToeplitzTerm {
  double theta = 0.0;  // in [0, 2pi)
  ComplexMatrix p;     // PSD
};

struct ToeplitzDecomposition {
  std::vector<ToeplitzTerm> terms;  // sorted by theta

  ComplexMatrix sum_p() const;
  ComplexMatrix sum_phased_p() const;
};

/// B is singular (or not PSD) within tolerance; carries the offending eigenvalue.
class SingularBlockError : public InputError {
 public:
  SingularBlockError(const std::string& what, double eigenvalue) : InputError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// T is not normal; no certified decomposition is attempted.
class UnsupportedDecomposition : public std::runtime_error {
 public:
  UnsupportedDecomposition(const std::string& what, double commutator_norm)
      : std::runtime_error(what), commutator_norm_(commutator_norm) {}
  double commutator_norm() const { return commutator_norm_; }

 private:
  double commutator_norm_;
};

ToeplitzDecomposition decompose_block_toeplitz(const ComplexMatrix& b, const ComplexMatrix& c);

/// Checks sum P_k = B and sum e^{i theta_k} P_k = C (relative 1e-8) and each
/// P_k PSD. lhs is the worst defect normalized by its threshold, rhs = 1,
/// tol = 0; failing invariants are listed in notes.
CheckReport verify_decomposition(const ToeplitzDecomposition& dec, const ComplexMatrix& b, const ComplexMatrix& c);

nlohmann::json decomposition_to_json(const ToeplitzDecomposition& dec);
ToeplitzDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace moplab
