#include "moplab/counterexample.hpp"

#include <cmath>

#include <fmt/format.h>

namespace moplab {

double counterexample_f(double p, double b) {
  return (std::pow(1.0 + b, p) + std::pow(1.0 - b, p)) * (1.0 + std::pow(b, p)) -
         2.0 * std::pow(1.0 + b * b, p);
}

double p0_of_b(double b) {
  if (!(b > 0.0 && b < 1.0)) throw RootNotFound(fmt::format("p0_of_b: b = {} is outside (0, 1)", b), b);
  if (b < 1e-6) {
    throw RootNotFound(fmt::format("p0_of_b: no root in range, f degenerates to roundoff for b = {} < 1e-6", b), b);
  }
  // f vanishes at p = 2 and is negative just above it; scan for the first
  // nonnegative value.
  constexpr double kStep = 1e-2;
  constexpr double kUpper = 64.0;
  double lo = 2.0 + kStep;
  double flo = counterexample_f(lo, b);
  if (!(flo < 0.0)) {
    throw RootNotFound(fmt::format("p0_of_b: no root in range, f({}) = {} is not negative for b = {}", lo, flo, b), b);
  }
  double hi = lo;
  bool bracketed = false;
  for (int k = 2; 2.0 + k * kStep <= kUpper + 1e-12; ++k) {
    hi = 2.0 + k * kStep;
    if (counterexample_f(hi, b) >= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) {
    throw RootNotFound(fmt::format("p0_of_b: no root in range, f stays negative on (2, {}] for b = {}", kUpper, b), b);
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (counterexample_f(mid, b) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CounterexampleFamily CounterexampleFamily::make(double b) {
  CounterexampleFamily f;
  f.b = b;
  f.g1 = ComplexMatrix::Zero(2, 2);
  f.g1(0, 0) = 1.0;
  f.g1(1, 1) = b;
  f.g2 = ComplexMatrix::Zero(2, 2);
  f.g2(0, 0) = b;
  f.g2(1, 1) = -1.0;
  f.x1 = f.g1;
  f.x2 = f.g2;
  try {
    f.p0 = p0_of_b(b);
  } catch (const RootNotFound&) {
    f.p0.reset();
  }
  return f;
}

Channel CounterexampleFamily::channel() const {
  return Channel::from_blocks({{g1.adjoint() * g1, g1.adjoint() * g2}, {g2.adjoint() * g1, g2.adjoint() * g2}});
}

BipartiteBlockState CounterexampleFamily::state() const {
  return BipartiteBlockState(x1.adjoint() * x1, x1.adjoint() * x2, x2.adjoint() * x2);
}

CheckReport CounterexampleFamily::check_sqrt(SchattenOrder q, double tol) const {
  CheckReport r = check_case3_sqrt(g1, g2, x1, x2, q, tol);
  r.params["b"] = b;
  if (p0) r.params["p0"] = *p0;
  return r;
}

}  // namespace moplab
