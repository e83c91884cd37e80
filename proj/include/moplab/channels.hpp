#pragma once

// Linear maps stored as Choi block matrices, Kraus sets, bipartite block
// states, and the conjugation / complementary-channel constructions.

#include "moplab/matcore.hpp"

#include <string>
#include <vector>

namespace moplab {

/// A linear map C^{d_in x d_in} -> C^{d_out x d_out} stored through its
/// unnormalized Choi matrix sum_ij e^{ij} (x) Phi(e^{ij}). Block (i,j) of the
/// d_in x d_in grid of d_out x d_out blocks is Phi_ij = Phi(e^{ij}).
///
/// Any linear map is representable. The flags record what the matrix is:
/// Hermitian-preserving (Hermitian Choi), CP (PSD Choi), TP
/// (Tr_out Choi = identity).
class Channel {
 public:
  Channel(Index d_in, Index d_out, ComplexMatrix choi);

  /// Builds a map from its blocks, blocks[i][j] = Phi_ij.
  static Channel from_blocks(const std::vector<std::vector<ComplexMatrix>>& blocks);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  const ComplexMatrix& choi() const { return choi_; }

  /// Phi_ij = Phi(e^{ij}).
  ComplexMatrix block(Index i, Index j) const;

  bool is_hermitian_preserving() const { return hermitian_; }
  bool is_cp() const { return cp_; }
  bool is_tp() const { return tp_; }

 private:
  Index d_in_;
  Index d_out_;
  ComplexMatrix choi_;
  bool hermitian_ = false;
  bool cp_ = false;
  bool tp_ = false;
};

/// Kraus elements A_k (each d_out x d_in) of a CP map sum_k A_k rho A_k^*.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> elements);

  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t k) const { return elements_[k]; }
  std::size_t size() const { return elements_.size(); }
  Index d_in() const { return elements_.front().cols(); }
  Index d_out() const { return elements_.front().rows(); }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// A 2 x d bipartite PSD matrix [[B, C], [C^*, D]] (qubit factor outermost).
class BipartiteBlockState {
 public:
  BipartiteBlockState(ComplexMatrix b, ComplexMatrix c, ComplexMatrix d);

  /// Splits a 2d x 2d PSD matrix into its blocks.
  static BipartiteBlockState from_matrix(const ComplexMatrix& rho);

  Index dim() const { return b_.rows(); }
  const ComplexMatrix& b() const { return b_; }
  const ComplexMatrix& c() const { return c_; }
  const ComplexMatrix& d() const { return d_; }
  ComplexMatrix full() const;

 private:
  ComplexMatrix b_;
  ComplexMatrix c_;
  ComplexMatrix d_;
};

/// Gram factor blocks F_i (each R x block_dim) with M_ij = F_i^* F_j.
/// For a state these are X_1, X_2; for a Choi matrix G_1, G_2.
struct SqrtFactorization {
  std::vector<ComplexMatrix> factors;

  Index rank() const { return factors.empty() ? 0 : factors.front().rows(); }
  /// Reassembles the block matrix [F_i^* F_j].
  ComplexMatrix gram() const;
  /// The conjugated block matrix [F_i F_j^*].
  ComplexMatrix cogram() const;
};

/// Canonical factorization of a PSD matrix with n x n blocks of size block_dim:
/// eigenvalues above 1e-10 * trace, sorted descending, each eigenvector's
/// first nonzero component made real positive.
SqrtFactorization gram_factorization(const ComplexMatrix& psd, Index blocks, Index block_dim);

// --- Standard maps ---------------------------------------------------------

Channel identity_channel(Index d);
/// rho -> (1 - lambda) rho + lambda Tr[rho] I/d.
Channel depolarizing_channel(Index d, double lambda);
/// Phi (x) Omega on the composite input (first factor outermost).
Channel tensor_product(const Channel& a, const Channel& b);

// --- Action ----------------------------------------------------------------

/// Phi(rho) = sum_ij rho_ij Phi_ij.
ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho);

/// (Phi (x) 1)(X) = sum_ij Phi_ij (x) X_ij for X with a d_in x d_in grid of
/// square blocks.
ComplexMatrix apply_tensor_identity(const Channel& ch, const ComplexMatrix& x);
ComplexMatrix apply_tensor_identity(const Channel& ch, const BipartiteBlockState& rho);

/// The square-rooted form sum_i G_i (x) X_i.
ComplexMatrix sqrt_tensor_form(const SqrtFactorization& g, const SqrtFactorization& x);

// --- Representations ---------------------------------------------------------

KrausSet kraus_from_choi(const Channel& ch);
Channel choi_from_kraus(const KrausSet& ks);

/// Factor blocks G_m of the Choi matrix induced by a Kraus set:
/// G_m^* |k> = A_k |m>, i.e. (G_m)_{k,a} = conj((A_k)_{a,m}).
SqrtFactorization kraus_factor_blocks(const KrausSet& ks);

struct ConjugatedMap {
  Channel map;                  // blocks G_i G_j^*
  SqrtFactorization factors;    // the G_i the tilde was taken with
};

/// Conjugation of a CP map with respect to the canonical factorization.
ConjugatedMap conjugate_map(const Channel& ch);

struct ConjugatedState {
  ComplexMatrix matrix;         // blocks X_i X_j^*
  SqrtFactorization factors;
};

/// Conjugation of a PSD matrix with `blocks` x `blocks` block structure.
ConjugatedState conjugate_state(const ComplexMatrix& rho, Index blocks);

/// Complementary map with <k|Phi'(rho)|j> = Tr[A_k rho A_j^*], a map into C^K.
Channel complementary_channel(const KrausSet& ks);

// --- Entanglement breaking -----------------------------------------------------

enum class EbStatus { kEntanglementBreaking, kNotEntanglementBreaking, kUnknown };

std::string to_string(EbStatus s);

struct EbCertificate {
  EbStatus status = EbStatus::kUnknown;
  double min_partial_transpose_eigenvalue = 0.0;
  std::string reason;
};

/// NPT Choi => not EB. PPT and d_in*d_out <= 6 => EB. PPT with exact
/// block-Toeplitz or block-Hankel Choi => EB. Anything else is unknown.
EbCertificate is_entanglement_breaking(const Channel& ch);

}  // namespace moplab
