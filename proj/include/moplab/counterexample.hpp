#pragma once

// The diagonal family G1 = X1 = Diag(1, b), G2 = X2 = Diag(b, -1) that breaks
// the single-angle inequality for 2 < 2q < p0(b).

#include "moplab/channels.hpp"
#include "moplab/inequalities.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace moplab {

/// f(p) = ((1+b)^p + (1-b)^p)(1 + b^p) - 2(1+b^2)^p. f(2) = 0 for every b, and
/// the square-rooted inequality at norm order p = 2q fails exactly where f(p) < 0.
double counterexample_f(double p, double b);

class RootNotFound : public std::runtime_error {
 public:
  RootNotFound(const std::string& what, double b) : std::runtime_error(what), b_(b) {}
  double b() const { return b_; }

 private:
  double b_;
};

/// The root p0 > 2 of f, bracketed on (2, 64] and bisected to 1e-12.
/// Throws RootNotFound for b outside (0, 1), for b < 1e-6 (f degenerates to
/// roundoff), or when no sign change exists in the bracket.
double p0_of_b(double b);

struct CounterexampleFamily {
  double b = 0.5;
  ComplexMatrix g1, g2, x1, x2;
  std::optional<double> p0;

  static CounterexampleFamily make(double b);

  /// The CP map with Choi blocks Phi_ij = G_i^* G_j.
  Channel channel() const;
  /// The state [[X1^* X1, X1^* X2], [X2^* X1, X2^* X2]].
  BipartiteBlockState state() const;

  /// check_case3_sqrt at Schatten order q (norm order 2q).
  CheckReport check_sqrt(SchattenOrder q, double tol = kDefaultCheckTolerance) const;
};

}  // namespace moplab
