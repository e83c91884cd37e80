#pragma once

// Checkers for the block-matrix inequalities around multiplicativity of the
// maximal output purity of qubit maps. Every checker returns a CheckReport;
// a failed check is a mathematical outcome, not an error.

#include "moplab/channels.hpp"
#include "moplab/mop.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace moplab {

// Default relative tolerance: holds <=> gap >= -tol * (1 + |rhs|).
inline constexpr double kDefaultCheckTolerance = 1e-9;
// Violations smaller than this (relative) are treated as roundoff, not witnesses.
inline constexpr double kWitnessThreshold = 1e-8;

struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs
  bool holds = true;
  double tol = kDefaultCheckTolerance;
  // False when the check could not be run (e.g. no EB certificate).
  bool evaluated = true;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> notes;
  // Serialized inputs; present iff holds is false.
  std::optional<nlohmann::json> witness;

  double scale() const;
  bool significant_violation() const;
};

/// Fills gap and holds from lhs, rhs and tol.
CheckReport make_report(std::string name, double lhs, double rhs, double tol);

nlohmann::json to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

struct PhaseMax {
  double value = 0.0;
  double theta_star = 0.0;
  bool extreme_points_only = false;
};

/// max over theta in [0, 2pi) of h(theta). With `extreme_points_only` only
/// theta in {0, pi} is evaluated; otherwise a `grid`-point scan is followed
/// by golden-section polishing (1e-10 in theta) of the best local maxima.
PhaseMax maximize_over_phase(const std::function<double(double)>& h, bool extreme_points_only,
                             int grid = 720);

/// max_theta ||Phi([[beta, e^{i theta} sqrt(beta delta)], [e^{-i theta} sqrt(beta delta), delta]])||_q
/// for a map with d_in = 2. When Phi_12 = Phi_21 (Hermitian Phi_12 for CP maps)
/// and q >= 1 the objective is convex in cos(theta) and only theta in {0, pi}
/// is evaluated.
PhaseMax rhs_case3(const Channel& ch, double beta, double delta, SchattenOrder q);

/// ||rho||_q <= ||B||_q + ||D||_q.
CheckReport check_block_norm_bound(const BipartiteBlockState& rho, SchattenOrder q,
                                   double tol = kDefaultCheckTolerance);

/// ||(Phi (x) 1)(rho)||_q <= nu_q(Phi) (||B||_q + ||D||_q); conjectured.
CheckReport check_chris0(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q,
                         const MopOptions& opts = {}, double tol = kDefaultCheckTolerance);
/// Same, with nu_q(Phi) supplied by the caller.
CheckReport check_chris0_with_nu(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q,
                                 double nu, double tol = kDefaultCheckTolerance);

/// ||(Phi (x) 1)(rho)||_q <= rhs_case3(Phi, ||B||_q, ||D||_q, q). Known to
/// fail in general; failures carry the note "conjecture-violating witness".
CheckReport check_case3(const Channel& ch, const BipartiteBlockState& rho, SchattenOrder q,
                        double tol = kDefaultCheckTolerance);

/// Square-rooted form:
/// ||G1 (x) X1 + G2 (x) X2||_{2q} <= max_theta ||G1 ||X1||_{2q} + e^{i theta} G2 ||X2||_{2q}||_{2q}.
CheckReport check_case3_sqrt(const ComplexMatrix& g1, const ComplexMatrix& g2, const ComplexMatrix& x1,
                             const ComplexMatrix& x2, SchattenOrder q, double tol = kDefaultCheckTolerance);

/// Tr|F H F^*|^q <= Tr[(F^* F)^q (|H|^q + |H^*|^q) / 2] for q >= 1.
CheckReport check_alt(const ComplexMatrix& f, const ComplexMatrix& h, double q,
                      double tol = kDefaultCheckTolerance);

/// ||sum A_k (x) B_k||_q <= ||sum ||B_k||_q A_k||_q <= ||sum A_k||_q max_j ||B_j||_q
/// for PSD A_k. rhs is the outer bound; the middle term is params["rhs_weighted"]
/// and gap is the smaller of the two link gaps.
CheckReport check_positive_tensor(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                                  SchattenOrder q, double tol = kDefaultCheckTolerance);

/// ||(Phi (x) 1)(X)||_q <= ||Phi([||X_ij||_q])||_q for maps whose blocks are all PSD.
CheckReport check_blockwise(const Channel& ch, const ComplexMatrix& x, SchattenOrder q,
                            double tol = kDefaultCheckTolerance);

/// check_case3_sqrt with G_i = e^{i theta_i} H_i, H_i PSD; valid for q >= 1/2.
CheckReport check_psd_phase_sqrt(const ComplexMatrix& h1, const ComplexMatrix& h2, double theta1,
                                 double theta2, const ComplexMatrix& x1, const ComplexMatrix& x2,
                                 SchattenOrder q, double tol = kDefaultCheckTolerance);

struct SeparableTerm {
  ComplexMatrix sigma;  // unit-trace state on the map's input
  ComplexMatrix b;      // PSD, unnormalized
};

/// rho = sum sigma_k (x) B_k:  ||(Phi (x) 1)(rho)||_q <= nu_q(Phi) ||Tr_1 rho||_q.
CheckReport check_separable_bound(const Channel& ch, const std::vector<SeparableTerm>& terms,
                                  SchattenOrder q, const MopOptions& opts = {},
                                  double tol = kDefaultCheckTolerance);
CheckReport check_separable_bound_with_nu(const Channel& ch, const std::vector<SeparableTerm>& terms,
                                          SchattenOrder q, double nu, double tol = kDefaultCheckTolerance);

/// nu_q(Phi (x) Omega) against nu_q(Phi) nu_q(Omega) for an EB-certified Omega.
/// Skipped (evaluated = false) when Omega has no EB certificate.
/// params["equality_gap"] holds |lhs - rhs|.
CheckReport check_multiplicativity_eb(const Channel& ch, const Channel& eb, SchattenOrder q,
                                      const MopOptions& opts = {}, double tol = kDefaultCheckTolerance);

/// For rho = [[B, C], [C^*, B]] >= 0 and any (Hermitian-block) linear map.
CheckReport check_toeplitz_theorem(const Channel& ch, const ComplexMatrix& b, const ComplexMatrix& c,
                                   SchattenOrder q, double tol = kDefaultCheckTolerance);

/// -X <= Delta <= X with X = Phi_11 + Phi_22, Delta = Phi_11 - Phi_22.
/// lhs = 0 and rhs = min eigenvalue of X -/+ Delta over (1 + maxabs X).
CheckReport check_delta_bound(const Channel& ch, double tol = kDefaultCheckTolerance);

/// Re-runs a checker from a report carrying a witness.
CheckReport rerun_from_witness(const nlohmann::json& report, const MopOptions& opts = {});

}  // namespace moplab
