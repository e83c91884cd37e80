#include "moplab/harness.hpp"
#include "moplab/random.hpp"
#include "moplab/toeplitz.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

namespace moplab {

namespace {

using Sampler = CheckReport (*)(std::uint64_t, SchattenOrder, const ExperimentConfig&);

std::uint64_t sub(std::uint64_t seed, std::uint64_t k) { return derive_seed(seed, k, 0); }

Index kraus_rank(const ExperimentConfig& c) { return std::clamp<Index>(c.rank, 1, 2 * c.d_out); }

CheckReport skipped(const std::string& name, SchattenOrder q, const std::string& reason) {
  CheckReport r;
  r.name = name;
  r.evaluated = false;
  r.params = {{"q", q.is_infinite() ? nlohmann::json("inf") : nlohmann::json(q.value())}};
  r.notes.push_back("skipped: " + reason);
  return r;
}

CheckReport sample_block_norm_bound(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Index n = 2 * c.dim;
  const Index rank = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(n));
  return check_block_norm_bound(BipartiteBlockState::from_matrix(random_state(n, rank, seed)), q, c.tolerance());
}

CheckReport sample_chris0(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_cp_map(2, c.d_out, kraus_rank(c), sub(seed, 1));
  return check_chris0(ch, random_bipartite_state(c.dim, sub(seed, 2)), q, c.mop, c.tolerance());
}

CheckReport sample_case3(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_cp_map(2, c.d_out, kraus_rank(c), sub(seed, 1));
  return check_case3(ch, random_bipartite_state(c.dim, sub(seed, 2)), q, c.tolerance());
}

CheckReport sample_case3_pure(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_cp_map(2, c.d_out, kraus_rank(c), sub(seed, 1));
  const ComplexVector psi = random_pure_state(2 * c.dim, sub(seed, 2));
  CheckReport r = check_case3(ch, BipartiteBlockState::from_matrix(psi * psi.adjoint()), q, c.tolerance());
  r.name = "case3_pure";
  return r;
}

CheckReport sample_case3_single_kraus(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_cp_map(2, c.d_out, 1, sub(seed, 1));
  CheckReport r = check_case3(ch, random_bipartite_state(c.dim, sub(seed, 2)), q, c.tolerance());
  r.name = "case3_single_kraus";
  return r;
}

CheckReport sample_case3_identity(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  CheckReport r = check_case3(identity_channel(2), random_bipartite_state(c.dim, sub(seed, 2)), q, c.tolerance());
  r.name = "case3_identity";
  return r;
}

CheckReport sample_case3_sqrt(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  Rng rng(seed);
  const Index k = kraus_rank(c);
  const ComplexMatrix g1 = rng.ginibre(k, c.d_out);
  const ComplexMatrix g2 = rng.ginibre(k, c.d_out);
  const ComplexMatrix x1 = rng.ginibre(c.dim, c.dim);
  const ComplexMatrix x2 = rng.ginibre(c.dim, c.dim);
  return check_case3_sqrt(g1, g2, x1, x2, q, c.tolerance());
}

CheckReport sample_psd_phase_sqrt(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  Rng rng(seed);
  const ComplexMatrix w1 = rng.ginibre(c.d_out, kraus_rank(c));
  const ComplexMatrix w2 = rng.ginibre(c.d_out, kraus_rank(c));
  const double t1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double t2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const ComplexMatrix x1 = rng.ginibre(c.dim, c.dim);
  const ComplexMatrix x2 = rng.ginibre(c.dim, c.dim);
  return check_psd_phase_sqrt(hermitian_part(w1 * w1.adjoint()), hermitian_part(w2 * w2.adjoint()), t1, t2, x1,
                              x2, q, c.tolerance());
}

CheckReport sample_alt(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  if (q.is_infinite() || q.value() < 1.0) return skipped("alt", q, "requires finite q >= 1");
  Rng rng(seed);
  const ComplexMatrix f = rng.ginibre(c.d_out, c.dim);
  const ComplexMatrix h = rng.ginibre(c.dim, c.dim);
  return check_alt(f, h, q.value(), c.tolerance());
}

CheckReport sample_positive_tensor(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  Rng rng(seed);
  std::vector<ComplexMatrix> a;
  std::vector<ComplexMatrix> b;
  for (int k = 0; k < 3; ++k) {
    const Index rank = 1 + static_cast<Index>(rng.uniform(0.0, static_cast<double>(c.dim)));
    const ComplexMatrix w = rng.ginibre(c.dim, std::min(rank, c.dim));
    a.push_back(hermitian_part(w * w.adjoint()));
    b.push_back(rng.ginibre(c.d_out, c.d_out));
  }
  return check_positive_tensor(a, b, q, c.tolerance());
}

CheckReport sample_blockwise(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  Rng rng(seed);
  auto psd = [&] {
    const ComplexMatrix w = rng.ginibre(c.d_out, c.d_out);
    return ComplexMatrix(hermitian_part(w * w.adjoint()));
  };
  const ComplexMatrix p11 = psd();
  const ComplexMatrix p22 = psd();
  const ComplexMatrix p12 = psd();
  const Channel ch = Channel::from_blocks({{p11, p12}, {p12, p22}});
  return check_blockwise(ch, rng.ginibre(2 * c.dim, 2 * c.dim), q, c.tolerance());
}

CheckReport sample_separable_bound(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_cp_map(2, c.d_out, kraus_rank(c), sub(seed, 1));
  std::vector<SeparableTerm> terms;
  for (std::uint64_t k = 0; k < 4; ++k) {
    terms.push_back({random_state(2, 1 + static_cast<Index>(k % 2), sub(seed, 10 + k)),
                     random_psd(c.dim, c.dim, sub(seed, 20 + k))});
  }
  return check_separable_bound(ch, terms, q, c.mop, c.tolerance());
}

CheckReport sample_delta_bound(std::uint64_t seed, SchattenOrder, const ExperimentConfig& c) {
  return check_delta_bound(random_cp_map(2, c.d_out, kraus_rank(c), sub(seed, 1)), c.tolerance());
}

CheckReport sample_multiplicativity_eb(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_channel(2, 2, std::clamp<Index>(c.rank, 1, 4), sub(seed, 1));
  const Channel eb = random_eb_channel(2, 2, 3, sub(seed, 2));
  return check_multiplicativity_eb(ch, eb, q, c.mop, c.tolerance());
}

CheckReport sample_toeplitz_theorem(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const Channel ch = random_hermitian_block_map(c.d_out, sub(seed, 1));
  const BlockToeplitzPair pair = random_block_toeplitz(c.dim, c.dim + 1, sub(seed, 2));
  return check_toeplitz_theorem(ch, pair.b, pair.c, q, c.tolerance());
}

CheckReport sample_toeplitz_decomposition(std::uint64_t seed, SchattenOrder q, const ExperimentConfig& c) {
  const BlockToeplitzPair pair = random_normal_block_toeplitz(c.dim, seed);
  CheckReport r = verify_decomposition(decompose_block_toeplitz(pair.b, pair.c), pair.b, pair.c);
  r.params["q"] = q.is_infinite() ? nlohmann::json("inf") : nlohmann::json(q.value());
  return r;
}

const std::vector<std::pair<std::string, Sampler>>& registry() {
  static const std::vector<std::pair<std::string, Sampler>> table = {
      {"block_norm_bound", sample_block_norm_bound},
      {"chris0", sample_chris0},
      {"case3", sample_case3},
      {"case3_pure", sample_case3_pure},
      {"case3_single_kraus", sample_case3_single_kraus},
      {"case3_identity", sample_case3_identity},
      {"case3_sqrt", sample_case3_sqrt},
      {"psd_phase_sqrt", sample_psd_phase_sqrt},
      {"alt", sample_alt},
      {"positive_tensor", sample_positive_tensor},
      {"blockwise", sample_blockwise},
      {"separable_bound", sample_separable_bound},
      {"delta_bound", sample_delta_bound},
      {"multiplicativity_eb", sample_multiplicativity_eb},
      {"toeplitz_theorem", sample_toeplitz_theorem},
      {"toeplitz_decomposition", sample_toeplitz_decomposition},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& checker_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckReport run_checker_sample(const std::string& checker, std::uint64_t seed, SchattenOrder q,
                               const ExperimentConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name == checker) return fn(seed, q, config);
  }
  throw InputError("unknown checker '" + checker + "'");
}

}  // namespace moplab
