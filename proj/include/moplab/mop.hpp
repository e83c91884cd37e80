#pragma once

// Maximal output purity nu_q and minimal output entropy nu_S, by numerical
// optimization over pure input states.

#include "moplab/channels.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace moplab {

struct MopOptions {
  // Qubit inputs: uniform (theta, phi) Bloch grid, then Nelder-Mead from the
  // best `refine_starts` grid points.
  int grid_theta = 120;
  int grid_phi = 240;
  int refine_starts = 5;
  // Larger inputs: seeded random starts with projected gradient ascent.
  int restarts = 64;
  int max_iterations = 4000;
  double tolerance = 1e-7;
  Index max_dim = 8;
  std::uint64_t seed = 0x6d6f706c6162ULL;
};

struct OptimizerTrace {
  int iterations = 0;
  int restarts = 0;
  std::vector<double> best_per_restart;
  // True when no global guarantee applies (random-restart ascent).
  bool heuristic = false;
};

struct MopResult {
  double value = 0.0;
  ComplexVector argmax_state;
  double q = 2.0;
  OptimizerTrace trace;
};

struct TensorMopResult {
  MopResult joint;
  double nu_first = 0.0;
  double nu_second = 0.0;
  // joint.value - nu_first * nu_second
  double gap = 0.0;
};

struct EntropyResult {
  double value = 0.0;
  ComplexVector argmin_state;
  OptimizerTrace trace;
};

/// Maximizes `objective` over unit vectors of C^d. The returned value is the
/// objective at the returned state (so a certified lower bound on the max).
/// `extra_starts` are polished alongside the standard starts.
MopResult maximize_over_pure_states(Index d, const std::function<double(const ComplexVector&)>& objective,
                                    const MopOptions& opts,
                                    const std::vector<ComplexVector>& extra_starts = {});

/// nu_q(Phi) = max_psi ||Phi(|psi><psi|)||_q.
MopResult nu_q(const Channel& ch, SchattenOrder q, const MopOptions& opts = {});

/// nu_q(Phi (x) Omega) over entangled inputs, with the multiplicativity gap.
TensorMopResult nu_q_tensor(const Channel& a, const Channel& b, SchattenOrder q,
                            const MopOptions& opts = {});

/// nu_S(Phi) = min_psi S(Phi(|psi><psi|)); requires a CP trace-preserving map.
EntropyResult nu_s(const Channel& ch, const MopOptions& opts = {});

/// Global phase convention: first component with |c| > 1e-12 made real positive.
ComplexVector canonical_phase(const ComplexVector& v);

}  // namespace moplab
