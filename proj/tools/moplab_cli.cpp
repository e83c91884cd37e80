// moplab: command-line front end for the MOP toolkit.
//
//   moplab norm --in m.json --q 1,2,inf
//   moplab mop --channel depolarizing:2:0.5 --q 2
//   moplab check case3 --samples 100 --seed 7
//   moplab counterexample --b 0.3,0.5,0.7
//   moplab sweep --checkers chris0,alt --q 1.5,2 --samples 10 --out sweep.csv
//   moplab search --mode case3 --family counterexample --samples 20 --out witnesses/
//   moplab decompose --in toeplitz.json
//   moplab complement --in kraus.json
//
// Exit codes: 0 clean, 1 operational error, 2 violation witnessed.

#include "moplab/channels.hpp"
#include "moplab/counterexample.hpp"
#include "moplab/harness.hpp"
#include "moplab/inequalities.hpp"
#include "moplab/io.hpp"
#include "moplab/mop.hpp"
#include "moplab/random.hpp"
#include "moplab/toeplitz.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace moplab;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    for (const auto& part : split(item, ',')) out.push_back(parse_number(part));
  }
  return out;
}

SchattenOrder order(double q) { return std::isinf(q) ? SchattenOrder::infinity() : SchattenOrder(q); }

// Built-in maps: identity:<d>, depolarizing:<d>:<lambda>, random:<d_in>:<d_out>:<rank>:<seed>,
// eb:<d_in>:<d_out>:<terms>:<seed>, counterexample:<b>.
Channel builtin_channel(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw InputError("empty channel spec");
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw InputError("channel spec '" + spec + "' has too few fields");
    return parse_number(parts[i]);
  };
  auto idx = [&](std::size_t i) { return static_cast<Index>(arg(i)); };
  const std::string& kind = parts[0];
  if (kind == "identity") return identity_channel(idx(1));
  if (kind == "depolarizing") return depolarizing_channel(idx(1), arg(2));
  if (kind == "random") return random_channel(idx(1), idx(2), idx(3), static_cast<std::uint64_t>(arg(4)));
  if (kind == "eb") return random_eb_channel(idx(1), idx(2), idx(3), static_cast<std::uint64_t>(arg(4)));
  if (kind == "counterexample") return CounterexampleFamily::make(arg(1)).channel();
  throw InputError("unknown channel kind '" + kind + "'");
}

Channel load_channel(const std::string& spec, const std::string& path) {
  if (!spec.empty()) return builtin_channel(spec);
  if (path.empty()) throw InputError("need --channel or --in");
  return channel_from_json(read_json_file(path));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moplab: maximal output purity of qubit maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ExperimentConfig cfg;
  std::vector<std::string> q_raw;
  std::vector<std::string> b_raw;
  std::vector<std::string> grid_raw;
  std::string channel_spec;
  std::string checker;
  std::string checkers_raw;
  double tol = kDefaultCheckTolerance;
  bool entropy = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", q_raw, "Schatten orders, comma separated ('inf' allowed)");
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--tol", tol, "Relative check tolerance");
    sub->add_option("--in", cfg.input, "Input JSON file");
    sub->add_option("--out", cfg.output, "Output file (directory for search witnesses)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "structured-text"}));
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Samples per cell");
    sub->add_option("--d-out", cfg.d_out, "Output dimension of sampled maps");
    sub->add_option("--dim", cfg.dim, "Ancilla dimension of sampled states");
    sub->add_option("--rank", cfg.rank, "Kraus rank of sampled maps");
    sub->add_option("--restarts", cfg.mop.restarts, "Optimizer restarts for inputs beyond a qubit");
    sub->add_option("--max-dim", cfg.mop.max_dim, "Input dimension cap for tensor-product optimization");
    sub->add_option("--threads", cfg.threads, "Worker threads (default MOPLAB_THREADS)");
  };

  auto* norm = app.add_subcommand("norm", "Schatten norms of a matrix");
  add_common(norm);

  auto* mop = app.add_subcommand("mop", "Maximal output purity (or minimal output entropy) of a map");
  add_common(mop);
  mop->add_option("--channel", channel_spec, "Built-in map, e.g. depolarizing:2:0.5");
  mop->add_option("--grid", cfg.mop.grid_theta, "Bloch grid resolution in theta (phi uses twice as many)");
  mop->add_option("--restarts", cfg.mop.restarts, "Random restarts for inputs beyond a qubit");
  mop->add_flag("--entropy", entropy, "Minimize output entropy instead");

  auto* check = app.add_subcommand("check", "Run one checker on seeded samples or replay a witness (--in)");
  add_common(check);
  add_sampling(check);
  check->add_option("name", checker, "Checker name")->required();

  auto* counter = app.add_subcommand("counterexample", "Tabulate the diagonal counterexample family");
  add_common(counter);
  counter->add_option("--b", b_raw, "Values of b in (0, 1)");
  counter->add_option("--grid", grid_raw, "Norm orders 2q (default 2.05, (2+p0)/2, p0+1)");

  auto* sweep = app.add_subcommand("sweep", "Cross product of checkers, q values and seeds");
  add_common(sweep);
  add_sampling(sweep);
  sweep->add_option("--checkers", checkers_raw, "Checker names, comma separated")->required();

  auto* search = app.add_subcommand("search", "Falsification search with witness bundles");
  add_common(search);
  add_sampling(search);
  search->add_option("--mode", cfg.mode, "chris0 or case3");
  search->add_option("--family", cfg.family, "random, eb, pure, single_kraus or counterexample");

  auto* decompose = app.add_subcommand("decompose", "Finite positive decomposition of [[B, C], [C^*, B]]");
  add_common(decompose);

  auto* complement = app.add_subcommand("complement", "Complementary map of a Kraus set");
  add_common(complement);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitError;
  }

  try {
    cfg.q_list = parse_list(q_raw);
    cfg.b_list = parse_list(b_raw);
    cfg.tol = tol;
    cfg.mop.grid_phi = 2 * cfg.mop.grid_theta;
    const bool structured = cfg.format == "structured-text";

    if (*norm) {
      cfg.command = Command::kNorm;
      if (cfg.input.empty()) throw InputError("norm: need --in");
      const ComplexMatrix m = matrix_from_json(read_json_file(cfg.input));
      const std::vector<double> qs = cfg.q_list.empty() ? std::vector<double>{2.0} : cfg.q_list;
      json rows = json::array();
      std::string csv = "q,norm\n";
      for (double q : qs) {
        const double v = schatten_norm(m, order(q));
        csv += fmt::format("{},{}\n", format_double(q), format_double(v));
        rows.push_back({{"q", std::isinf(q) ? json("inf") : json(q)}, {"norm", v}});
      }
      emit(structured ? dump(rows) : csv, cfg.output);
      return kExitClean;
    }

    if (*mop) {
      cfg.command = Command::kMop;
      const Channel ch = load_channel(channel_spec, cfg.input);
      if (entropy) {
        const EntropyResult r = nu_s(ch, cfg.mop);
        json j = {{"nu_s", r.value}, {"argmin_state", matrix_to_json(r.argmin_state)},
                  {"heuristic", r.trace.heuristic}};
        emit(structured ? dump(j) : fmt::format("nu_s\n{}\n", format_double(r.value)), cfg.output);
        return kExitClean;
      }
      const std::vector<double> qs = cfg.q_list.empty() ? std::vector<double>{2.0} : cfg.q_list;
      json rows = json::array();
      std::string csv = "q,nu_q\n";
      for (double q : qs) {
        const MopResult r = nu_q(ch, order(q), cfg.mop);
        csv += fmt::format("{},{}\n", format_double(q), format_double(r.value));
        rows.push_back({{"q", std::isinf(q) ? json("inf") : json(q)},
                        {"nu_q", r.value},
                        {"argmax_state", matrix_to_json(r.argmax_state)},
                        {"heuristic", r.trace.heuristic}});
      }
      emit(structured ? dump(rows) : csv, cfg.output);
      return kExitClean;
    }

    if (*check) {
      cfg.command = Command::kCheck;
      if (!cfg.input.empty()) {
        const json doc = read_json_file(cfg.input);
        const CheckReport r = doc.contains("report") ? reverify_witness(doc, cfg.mop) : rerun_from_witness(doc, cfg.mop);
        emit(dump(to_json(r)), cfg.output);
        return r.evaluated && !r.holds ? kExitViolation : kExitClean;
      }
      cfg.checkers = {checker};
      const SweepResult r = run_sweep(cfg);
      emit(structured ? dump(rows_to_json(r.rows, cfg)) : rows_to_csv(r.rows, cfg), cfg.output);
      return r.exit_code();
    }

    if (*counter) {
      cfg.command = Command::kCounterexample;
      const std::vector<double> bs = b_raw.empty() ? std::vector<double>{0.3, 0.5, 0.7} : cfg.b_list;
      const auto rows = run_counterexample(bs, parse_list(grid_raw));
      if (structured) {
        json arr = json::array();
        for (const auto& r : rows) {
          json row = {{"b", r.b}, {"two_q", r.two_q}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap},
                      {"holds", r.holds}};
          row["p0"] = r.p0 ? json(*r.p0) : json(nullptr);
          if (!r.error.empty()) row["error"] = r.error;
          arr.push_back(row);
        }
        emit(dump({{"version", kVersion}, {"rows", arr}}), cfg.output);
      } else {
        emit(counterexample_to_csv(rows), cfg.output);
      }
      // Violations inside the window are the expected outcome here.
      return kExitClean;
    }

    if (*sweep) {
      cfg.command = Command::kSweep;
      cfg.checkers = split(checkers_raw, ',');
      const SweepResult r = run_sweep(cfg);
      emit(structured ? dump(rows_to_json(r.rows, cfg)) : rows_to_csv(r.rows, cfg), cfg.output);
      return r.exit_code();
    }

    if (*search) {
      cfg.command = Command::kSearch;
      const SearchResult r = run_search(cfg);
      std::cout << (structured ? dump(rows_to_json(r.rows, cfg)) : rows_to_csv(r.rows, cfg));
      for (const auto& f : r.witness_files) std::cerr << "witness: " << f << "\n";
      if (cfg.output.empty() && !r.witnesses.empty()) {
        std::cerr << r.witnesses.size() << " witness(es) found; pass --out DIR to save them\n";
      }
      return r.exit_code;
    }

    if (*decompose) {
      cfg.command = Command::kDecompose;
      if (cfg.input.empty()) throw InputError("decompose: need --in with {\"b\": ..., \"c\": ...}");
      const json doc = read_json_file(cfg.input);
      const ComplexMatrix b = matrix_from_json(doc.at("b"));
      const ComplexMatrix c = matrix_from_json(doc.at("c"));
      const ToeplitzDecomposition dec = decompose_block_toeplitz(b, c);
      const CheckReport v = verify_decomposition(dec, b, c);
      emit(dump({{"decomposition", decomposition_to_json(dec)}, {"verification", to_json(v)}}), cfg.output);
      return v.holds ? kExitClean : kExitViolation;
    }

    if (*complement) {
      cfg.command = Command::kComplement;
      if (cfg.input.empty()) throw InputError("complement: need --in with a Kraus set");
      const KrausSet ks = kraus_from_json(read_json_file(cfg.input));
      emit(dump(channel_to_json(complementary_channel(ks))), cfg.output);
      return kExitClean;
    }
  } catch (const UnsupportedDecomposition& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
