#pragma once

// Seeded sampling of states, maps and unitaries. Every generator is a pure
// function of its seed; the engine is explicit state owned by the caller.

#include "moplab/channels.hpp"

#include <cstdint>
#include <random>

namespace moplab {

/// Counter-based seed derivation: the seed for (base, stream, index) does not
/// depend on the order in which tasks are scheduled.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();
  ComplexMatrix ginibre(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
};

ComplexMatrix random_ginibre(Index rows, Index cols, std::uint64_t seed);

/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix random_unitary(Index d, std::uint64_t seed);

/// CP map with `rank` Gaussian Kraus elements (not trace preserving).
Channel random_cp_map(Index d_in, Index d_out, Index rank, std::uint64_t seed);

/// CP trace-preserving map: Gaussian Kraus elements normalized by
/// (sum_k A_k^* A_k)^(-1/2).
Channel random_channel(Index d_in, Index d_out, Index rank, std::uint64_t seed);

/// Measure-and-prepare channel sum_k sigma_k Tr[E_k rho] with a random POVM
/// {E_k} and random output states sigma_k. Its Choi matrix is separable.
Channel random_eb_channel(Index d_in, Index d_out, Index terms, std::uint64_t seed);

/// Unit-trace PSD d x d matrix of the given rank (Wishart / Ginibre-induced).
ComplexMatrix random_state(Index d, Index rank, std::uint64_t seed);

/// Full-rank unit-trace 2d x 2d state split into blocks.
BipartiteBlockState random_bipartite_state(Index d, std::uint64_t seed);

/// Unit vector with Gaussian amplitudes.
ComplexVector random_pure_state(Index d, std::uint64_t seed);

/// Random Hermitian matrix (GUE-like).
ComplexMatrix random_hermitian(Index d, std::uint64_t seed);

/// Random PSD matrix W W^* with W a d x rank Ginibre matrix (unnormalized).
ComplexMatrix random_psd(Index d, Index rank, std::uint64_t seed);

/// Linear qubit-input map whose four blocks are random Hermitian matrices,
/// with Phi_21 = Phi_12. Generally not positive.
Channel random_hermitian_block_map(Index d_out, std::uint64_t seed);

/// Diagonal and off-diagonal blocks of a PSD block-Toeplitz matrix [[B, C], [C^*, B]].
struct BlockToeplitzPair {
  ComplexMatrix b;
  ComplexMatrix c;
};

/// sum_k [[1, e^{i theta_k}], [e^{-i theta_k}, 1]] (x) P_k with random angles and
/// random PSD P_k. B^{-1/2} C B^{-1/2} is generally not normal.
BlockToeplitzPair random_block_toeplitz(Index d, Index terms, std::uint64_t seed);

/// B positive definite and C = B^{1/2} T B^{1/2} with T normal, ||T||_inf <= 1.
BlockToeplitzPair random_normal_block_toeplitz(Index d, std::uint64_t seed);

}  // namespace moplab
