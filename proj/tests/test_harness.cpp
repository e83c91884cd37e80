#include "moplab/harness.hpp"

#include "test_util.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace moplab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_temp_dir(const std::string& tag) {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("moplab_" + tag + "_" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

ExperimentConfig sweep_config(std::vector<std::string> checkers, std::vector<double> qs, int samples) {
  ExperimentConfig c;
  c.checkers = std::move(checkers);
  c.q_list = std::move(qs);
  c.samples = samples;
  c.seed = 42;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(Sweep, SingleCell) {
  const SweepResult r = run_sweep(sweep_config({"chris0"}, {2.0}, 1));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].name, "chris0");
  EXPECT_EQ(r.rows[0].q, 2.0);
  EXPECT_EQ(r.rows[0].seed, instance_seed(42, "chris0", 0));
}

TEST(Sweep, CrossProductOrder) {
  const double inf = std::numeric_limits<double>::infinity();
  const SweepResult r = run_sweep(sweep_config({"block_norm_bound", "alt", "positive_tensor"}, {1.0, 1.5, 2.0, inf}, 10));
  ASSERT_EQ(r.rows.size(), 120u);
  EXPECT_EQ(r.rows[0].name, "block_norm_bound");
  EXPECT_EQ(r.rows[39].name, "block_norm_bound");
  EXPECT_EQ(r.rows[40].name, "alt");
  EXPECT_EQ(r.rows[10].q, 1.5);
  EXPECT_FALSE(r.any_violation);
  EXPECT_EQ(r.exit_code(), kExitClean);
  // A-L-T is only stated for finite q >= 1.
  EXPECT_FALSE(r.rows[40 + 30].report.evaluated);
}

TEST(Sweep, ByteIdenticalAcrossRunsAndThreads) {
  ExperimentConfig c = sweep_config({"chris0", "case3_sqrt", "toeplitz_theorem"}, {1.5, 3.0}, 6);
  const std::string a = rows_to_csv(run_sweep(c).rows, c);
  const std::string b = rows_to_csv(run_sweep(c).rows, c);
  c.threads = 3;
  const std::string t = rows_to_csv(run_sweep(c).rows, c);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, t);
}

TEST(Sweep, SeedsIndependentOfOtherCheckers) {
  const SweepResult one = run_sweep(sweep_config({"case3_sqrt"}, {2.0}, 3));
  const SweepResult two = run_sweep(sweep_config({"alt", "case3_sqrt"}, {2.0}, 3));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(one.rows[i].seed, two.rows[3 + i].seed);
    EXPECT_EQ(one.rows[i].report.lhs, two.rows[3 + i].report.lhs);
  }
}

TEST(Sweep, UnknownCheckerThrows) {
  EXPECT_THROW(run_sweep(sweep_config({"chris0", "nope"}, {2.0}, 1)), InputError);
}

TEST(Sweep, ZeroSamplesIsClean) {
  const SweepResult r = run_sweep(sweep_config({"chris0"}, {2.0}, 0));
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.exit_code(), kExitClean);
}

TEST(Sweep, QuasiNormViolationSetsExitCode) {
  // The identity-map bound needs q >= 1; at q = 1/2 it fails on generic states.
  const SweepResult r = run_sweep(sweep_config({"case3_identity"}, {0.5}, 10));
  EXPECT_TRUE(r.any_violation);
  EXPECT_EQ(r.exit_code(), kExitViolation);
}

TEST(Csv, Layout) {
  const ExperimentConfig c = sweep_config({"chris0"}, {std::numeric_limits<double>::infinity()}, 2);
  const std::string csv = rows_to_csv(run_sweep(c).rows, c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, std::string("# moplab ") + kVersion + " config=" + c.hash());
  std::getline(in, line);
  EXPECT_EQ(line, "name,seed,q,lhs,rhs,gap,holds");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("chris0,", 0), 0u);
  EXPECT_NE(line.find(",inf,"), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Config, HashStableAndSensitive) {
  ExperimentConfig a = sweep_config({"chris0"}, {2.0}, 5);
  ExperimentConfig b = a;
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.output = "/tmp/elsewhere";
  b.threads = 4;
  EXPECT_EQ(a.hash(), b.hash());
  b.seed = 43;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Seeds, Distinct) {
  EXPECT_NE(instance_seed(1, "chris0", 0), instance_seed(1, "chris0", 1));
  EXPECT_NE(instance_seed(1, "chris0", 0), instance_seed(1, "case3", 0));
  EXPECT_NE(instance_seed(1, "chris0", 0), instance_seed(2, "chris0", 0));
  EXPECT_EQ(instance_seed(1, "chris0", 7), instance_seed(1, "chris0", 7));
}

TEST(ParallelFor, CoversAllAndRethrows) {
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 5) throw InputError("boom");
                            }),
               InputError);
}

TEST(Counterexample, Table) {
  const auto rows = run_counterexample({0.3, 0.5, 0.7}, {2.6, 2.88, 2.9});
  ASSERT_EQ(rows.size(), 9u);
  // Each b is violated exactly on 2 < 2q < p0(b).
  EXPECT_FALSE(rows[0].holds);
  EXPECT_TRUE(rows[1].holds);
  EXPECT_FALSE(rows[3].holds);
  EXPECT_TRUE(rows[4].holds);
  EXPECT_FALSE(rows[7].holds);
  EXPECT_FALSE(rows[8].holds);
  EXPECT_TRUE(run_counterexample({}, {}).empty());
  EXPECT_THROW(run_counterexample({1.5}, {}), InputError);
}

TEST(Counterexample, DefaultGridAndDegenerateB) {
  const auto rows = run_counterexample({0.999}, {});
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.p0.has_value());
    EXPECT_TRUE(std::isfinite(r.lhs));
    EXPECT_TRUE(std::isfinite(r.gap));
  }
  EXPECT_FALSE(rows[1].holds);
  EXPECT_TRUE(rows[2].holds);
  const auto missing = run_counterexample({1e-8}, {});
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_FALSE(missing[0].p0.has_value());
  EXPECT_FALSE(missing[0].error.empty());
}

TEST(Search, EbFamilyIsClean) {
  ExperimentConfig c;
  c.mode = "chris0";
  c.family = "eb";
  c.samples = 10;
  c.threads = 1;
  const SearchResult r = run_search(c);
  EXPECT_EQ(r.exit_code, kExitClean);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Search, CounterexampleFamilyWritesWitnesses) {
  const fs::path dir = fresh_temp_dir("search");
  ExperimentConfig c;
  c.mode = "case3";
  c.family = "counterexample";
  c.q_list = {1.2};
  c.samples = 4;
  c.threads = 1;
  c.output = dir.string();
  const SearchResult r = run_search(c);
  EXPECT_EQ(r.exit_code, kExitViolation);
  ASSERT_FALSE(r.witness_files.empty());
  EXPECT_EQ(r.witness_files.size(), r.witnesses.size());
  for (const auto& f : r.witness_files) EXPECT_TRUE(fs::exists(f)) << f;

  std::ifstream in(r.witness_files.front());
  const nlohmann::json bundle = nlohmann::json::parse(in);
  EXPECT_EQ(bundle.at("type"), "witness_bundle");
  EXPECT_EQ(bundle.at("config_hash"), c.hash());
  const CheckReport again = reverify_witness(bundle);
  EXPECT_FALSE(again.holds);
  EXPECT_NEAR(again.gap, bundle.at("report").at("gap").get<double>(), 1e-10);
  fs::remove_all(dir);
}

TEST(Search, RejectsUnknownModeOrFamily) {
  ExperimentConfig c;
  c.samples = 1;
  c.mode = "bogus";
  EXPECT_THROW(run_search(c), InputError);
  c.mode = "case3";
  c.family = "bogus";
  EXPECT_THROW(run_search(c), InputError);
}
