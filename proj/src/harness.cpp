#include "moplab/harness.hpp"

#include "moplab/counterexample.hpp"
#include "moplab/io.hpp"
#include "moplab/random.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace moplab {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json q_json(double q) {
  if (std::isinf(q)) return "inf";
  return q;
}

std::string holds_cell(const CheckReport& r) {
  if (!r.evaluated) return "skipped";
  return r.holds ? "true" : "false";
}

SchattenOrder to_order(double q) { return std::isinf(q) ? SchattenOrder::infinity() : SchattenOrder(q); }

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kNorm: return "norm";
    case Command::kMop: return "mop";
    case Command::kCheck: return "check";
    case Command::kCounterexample: return "counterexample";
    case Command::kSweep: return "sweep";
    case Command::kSearch: return "search";
    case Command::kDecompose: return "decompose";
    case Command::kComplement: return "complement";
  }
  return "unknown";
}

json ExperimentConfig::to_json() const {
  // Paths, output format and thread count do not change results and are
  // left out so the hash identifies the experiment itself.
  json qs = json::array();
  for (double q : q_list) qs.push_back(q_json(q));
  json j = {{"command", to_string(command)},
            {"checkers", checkers},
            {"q", qs},
            {"b", b_list},
            {"seed", seed},
            {"samples", samples},
            {"d_out", d_out},
            {"dim", dim},
            {"rank", rank},
            {"tol", tolerance()},
            {"mop",
             {{"grid_theta", mop.grid_theta},
              {"grid_phi", mop.grid_phi},
              {"refine_starts", mop.refine_starts},
              {"restarts", mop.restarts},
              {"max_iterations", mop.max_iterations},
              {"tolerance", mop.tolerance},
              {"max_dim", mop.max_dim},
              {"seed", mop.seed}}}};
  if (command == Command::kSearch) {
    j["mode"] = mode;
    j["family"] = family;
  }
  return j;
}

std::string ExperimentConfig::hash() const { return fmt::format("{:016x}", fnv1a(to_json().dump())); }

int threads_from_env() {
  if (const char* env = std::getenv("MOPLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t instance_seed(std::uint64_t base, const std::string& checker, std::uint64_t index) {
  return derive_seed(base, fnv1a(checker), index);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{}", v);
}

std::string rows_to_csv(const std::vector<ResultRow>& rows, const ExperimentConfig& config) {
  std::string out = fmt::format("# moplab {} config={}\n", kVersion, config.hash());
  out += "name,seed,q,lhs,rhs,gap,holds\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", row.name, row.seed, format_double(row.q),
                       format_double(row.report.lhs), format_double(row.report.rhs), format_double(row.report.gap),
                       holds_cell(row.report));
  }
  return out;
}

json rows_to_json(const std::vector<ResultRow>& rows, const ExperimentConfig& config) {
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back({{"name", row.name}, {"seed", row.seed}, {"q", q_json(row.q)}, {"report", to_json(row.report)}});
  }
  return {{"version", kVersion}, {"config_hash", config.hash()}, {"config", config.to_json()}, {"rows", arr}};
}

SweepResult run_sweep(const ExperimentConfig& config) {
  const auto& known = checker_names();
  for (const auto& name : config.checkers) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw InputError("run_sweep: unknown checker '" + name + "'");
    }
  }
  if (config.samples < 0) throw InputError("run_sweep: negative sample count");
  const std::vector<double> qs = config.q_list.empty() ? std::vector<double>{2.0} : config.q_list;
  for (double q : qs) to_order(q);

  const std::size_t per_checker = qs.size() * static_cast<std::size_t>(config.samples);
  SweepResult result;
  result.rows.resize(config.checkers.size() * per_checker);
  const int threads = config.threads > 0 ? config.threads : threads_from_env();
  parallel_for(result.rows.size(), threads, [&](std::size_t cell) {
    const std::size_t c = cell / per_checker;
    const std::size_t qi = (cell % per_checker) / static_cast<std::size_t>(config.samples);
    const std::size_t s = cell % static_cast<std::size_t>(config.samples);
    ResultRow& row = result.rows[cell];
    row.name = config.checkers[c];
    row.seed = instance_seed(config.seed, row.name, s);
    row.q = qs[qi];
    row.report = run_checker_sample(row.name, row.seed, to_order(row.q), config);
  });
  for (const auto& row : result.rows) {
    if (row.report.evaluated && !row.report.holds) result.any_violation = true;
  }
  return result;
}

std::vector<CounterexampleRow> run_counterexample(const std::vector<double>& b_list,
                                                  const std::vector<double>& two_q_grid) {
  std::vector<CounterexampleRow> rows;
  for (double b : b_list) {
    if (!(b > 0.0 && b < 1.0)) throw InputError(fmt::format("run_counterexample: b = {} is outside (0, 1)", b));
    const CounterexampleFamily fam = CounterexampleFamily::make(b);
    std::vector<double> grid = two_q_grid;
    if (grid.empty()) {
      if (!fam.p0) {
        CounterexampleRow row;
        row.b = b;
        try {
          p0_of_b(b);
        } catch (const RootNotFound& e) {
          row.error = e.what();
        }
        row.two_q = std::numeric_limits<double>::quiet_NaN();
        row.lhs = row.rhs = row.gap = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
        continue;
      }
      grid = {2.05, 0.5 * (2.0 + *fam.p0), *fam.p0 + 1.0};
    }
    for (double two_q : grid) {
      CounterexampleRow row;
      row.b = b;
      row.p0 = fam.p0;
      if (!fam.p0) row.error = "root not found";
      row.two_q = two_q;
      const CheckReport r = fam.check_sqrt(to_order(0.5 * two_q));
      row.lhs = r.lhs;
      row.rhs = r.rhs;
      row.gap = r.gap;
      row.holds = r.holds;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string counterexample_to_csv(const std::vector<CounterexampleRow>& rows) {
  std::string out = fmt::format("# moplab {}\n", kVersion);
  out += "b,p0,two_q,lhs,rhs,gap,holds,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out += fmt::format("{},{},{},{},{},{},{},{}\n", format_double(r.b), r.p0 ? format_double(*r.p0) : "",
                       format_double(r.two_q), format_double(r.lhs), format_double(r.rhs), format_double(r.gap),
                       r.error.empty() || r.p0 ? (r.holds ? "true" : "false") : "", err);
  }
  return out;
}

SearchResult run_search(const ExperimentConfig& config) {
  if (config.mode != "chris0" && config.mode != "case3") {
    throw InputError("run_search: mode must be 'chris0' or 'case3', got '" + config.mode + "'");
  }
  static const std::vector<std::string> families = {"random", "eb", "pure", "single_kraus", "counterexample"};
  if (std::find(families.begin(), families.end(), config.family) == families.end()) {
    throw InputError("run_search: unknown family '" + config.family + "'");
  }
  if (config.samples < 0) throw InputError("run_search: negative sample count");
  const std::vector<double> qs = config.q_list.empty() ? std::vector<double>{1.2} : config.q_list;
  for (double q : qs) to_order(q);

  const std::string stream = "search:" + config.family;
  const Index rank = std::clamp<Index>(config.rank, 1, 2 * config.d_out);
  SearchResult result;
  const std::size_t n = qs.size() * static_cast<std::size_t>(config.samples);
  result.rows.resize(n);
  const int threads = config.threads > 0 ? config.threads : threads_from_env();
  parallel_for(n, threads, [&](std::size_t cell) {
    const std::size_t s = cell / qs.size();
    const double qv = qs[cell % qs.size()];
    const SchattenOrder q = to_order(qv);
    const std::uint64_t seed = instance_seed(config.seed, stream, s);

    std::optional<Channel> ch;
    std::optional<BipartiteBlockState> rho;
    if (config.family == "counterexample") {
      Rng rng(seed);
      const auto fam = CounterexampleFamily::make(rng.uniform(0.2, 0.8));
      ch = fam.channel();
      rho = fam.state();
    } else {
      if (config.family == "eb") {
        ch = random_eb_channel(2, config.d_out, 3, derive_seed(seed, 1, 0));
      } else if (config.family == "single_kraus") {
        ch = random_cp_map(2, config.d_out, 1, derive_seed(seed, 1, 0));
      } else {
        ch = random_cp_map(2, config.d_out, rank, derive_seed(seed, 1, 0));
      }
      if (config.family == "pure") {
        const ComplexVector psi = random_pure_state(2 * config.dim, derive_seed(seed, 2, 0));
        rho = BipartiteBlockState::from_matrix(psi * psi.adjoint());
      } else {
        rho = random_bipartite_state(config.dim, derive_seed(seed, 2, 0));
      }
    }
    ResultRow& row = result.rows[cell];
    row.name = config.mode;
    row.seed = seed;
    row.q = qv;
    row.report = config.mode == "chris0" ? check_chris0(*ch, *rho, q, config.mop, config.tolerance())
                                         : check_case3(*ch, *rho, q, config.tolerance());
  });

  for (const auto& row : result.rows) {
    if (!row.report.significant_violation()) continue;
    result.witnesses.push_back({{"type", "witness_bundle"},
                                {"version", kVersion},
                                {"config_hash", config.hash()},
                                {"mode", config.mode},
                                {"family", config.family},
                                {"seed", row.seed},
                                {"q", q_json(row.q)},
                                {"report", to_json(row.report)}});
  }
  if (!config.output.empty() && !result.witnesses.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.output, ec);
    if (ec) throw std::runtime_error("run_search: cannot create " + config.output + ": " + ec.message());
    for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
      const auto path = std::filesystem::path(config.output) /
                        fmt::format("witness_{}_{:04d}.json", config.mode, i);
      write_json_file(path.string(), result.witnesses[i]);
      result.witness_files.push_back(path.string());
    }
  }
  result.exit_code = result.witnesses.empty() ? kExitClean : kExitViolation;
  return result;
}

CheckReport reverify_witness(const json& bundle, const MopOptions& opts) {
  if (!bundle.contains("report")) throw InputError("reverify_witness: bundle has no report");
  return rerun_from_witness(bundle.at("report"), opts);
}

}  // namespace moplab
