#pragma once

// Experiment orchestration behind the CLI: seeded sweeps over checkers,
// falsification search with witness bundles, and the counterexample table.
//
// Exit-code contract shared by every command:
//   0  everything checked holds
//   1  operational error (bad input, I/O)
//   2  a mathematical violation was witnessed

#include "moplab/inequalities.hpp"
#include "moplab/mop.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace moplab {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

enum class Command { kNorm, kMop, kCheck, kCounterexample, kSweep, kSearch, kDecompose, kComplement };

std::string to_string(Command c);

struct ExperimentConfig {
  Command command = Command::kSweep;
  std::vector<std::string> checkers;
  std::vector<double> q_list;  // +inf allowed
  std::vector<double> b_list;
  std::uint64_t seed = 1;
  int samples = 10;
  // Instance dimensions: map output dimension, ancilla dimension, Kraus rank.
  Index d_out = 2;
  Index dim = 2;
  Index rank = 2;
  MopOptions mop;
  std::optional<double> tol;
  std::string input;
  std::string output;
  std::string format = "csv";
  // Search only.
  std::string mode = "chris0";
  std::string family = "random";
  int threads = 0;  // 0: MOPLAB_THREADS, else hardware concurrency

  double tolerance() const { return tol.value_or(kDefaultCheckTolerance); }
  nlohmann::json to_json() const;
  /// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
  std::string hash() const;
};

/// Thread count: MOPLAB_THREADS when set (>= 1), else hardware concurrency.
int threads_from_env();

/// Runs fn(0..n-1) on up to `threads` workers. Results must be written to
/// per-index slots; the first exception is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// --- Checker samplers -----------------------------------------------------------

/// Names accepted by `sweep --checkers` and `check <name>`.
const std::vector<std::string>& checker_names();

/// Instance seed for (base seed, checker, sample index); independent of
/// scheduling and of which other checkers run.
std::uint64_t instance_seed(std::uint64_t base, const std::string& checker, std::uint64_t index);

/// Draws one random instance for `checker` from `seed` and checks it.
CheckReport run_checker_sample(const std::string& checker, std::uint64_t seed, SchattenOrder q,
                               const ExperimentConfig& config);

// --- Formatting ----------------------------------------------------------------------

/// Shortest round-trip decimal; "inf" for +infinity.
std::string format_double(double v);

struct ResultRow {
  std::string name;
  std::uint64_t seed = 0;
  double q = 0.0;
  CheckReport report;
};

/// Fixed columns: name,seed,q,lhs,rhs,gap,holds, preceded by one
/// "# moplab <version> config=<hash>" provenance line.
std::string rows_to_csv(const std::vector<ResultRow>& rows, const ExperimentConfig& config);
nlohmann::json rows_to_json(const std::vector<ResultRow>& rows, const ExperimentConfig& config);

// --- Commands -----------------------------------------------------------------------

struct SweepResult {
  std::vector<ResultRow> rows;  // sorted by (checker order, q order, sample index)
  bool any_violation = false;
  int exit_code() const { return any_violation ? kExitViolation : kExitClean; }
};

/// Cross product (checker, q, sample). Throws InputError for unknown checkers.
SweepResult run_sweep(const ExperimentConfig& config);

struct CounterexampleRow {
  double b = 0.0;
  std::optional<double> p0;
  std::string error;  // set when p0 could not be found
  double two_q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool holds = true;
};

/// Per b: p0(b) and check_case3_sqrt at each norm order 2q. An empty
/// `two_q_grid` means {2.05, (2 + p0)/2, p0 + 1}. Root failures are recorded
/// per row and the run continues.
std::vector<CounterexampleRow> run_counterexample(const std::vector<double>& b_list,
                                                  const std::vector<double>& two_q_grid);
std::string counterexample_to_csv(const std::vector<CounterexampleRow>& rows);

struct SearchResult {
  int exit_code = kExitClean;
  std::vector<ResultRow> rows;
  std::vector<std::string> witness_files;
  std::vector<nlohmann::json> witnesses;
};

/// Falsification search of the conjectured inequality (mode "chris0") or the
/// single-angle form (mode "case3") over a family of instances: "random",
/// "eb", "pure", "single_kraus" or "counterexample". Significant violations
/// become witness bundles, written to config.output (a directory) when set.
SearchResult run_search(const ExperimentConfig& config);

/// Re-runs the checker recorded in a witness bundle.
CheckReport reverify_witness(const nlohmann::json& bundle, const MopOptions& opts = {});

}  // namespace moplab
