#include "moplab/channels.hpp"

#include <cmath>
#include <string>

namespace moplab {

namespace {

ComplexMatrix unit_matrix(Index d, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

bool blocks_equal(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  return (a - b).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + scale);
}

}  // namespace

// --- Channel ---------------------------------------------------------------

Channel::Channel(Index d_in, Index d_out, ComplexMatrix choi)
    : d_in_(d_in), d_out_(d_out), choi_(std::move(choi)) {
  if (d_in <= 0 || d_out <= 0) throw InputError("Channel: dimensions must be positive");
  if (choi_.rows() != d_in * d_out || choi_.cols() != d_in * d_out) {
    throw InputError("Channel: Choi matrix must be (d_in*d_out) x (d_in*d_out)");
  }
  if (!all_finite(choi_)) throw InputError("Channel: non-finite Choi entry");
  hermitian_ = is_hermitian(choi_, 1e-10);
  cp_ = hermitian_ && psd_check(choi_).is_psd;
  const ComplexMatrix tr_out = partial_trace_second(choi_, d_in_, d_out_);
  tp_ = (tr_out - ComplexMatrix::Identity(d_in_, d_in_)).cwiseAbs().maxCoeff() <= 1e-10;
}

Channel Channel::from_blocks(const std::vector<std::vector<ComplexMatrix>>& blocks) {
  const auto n = static_cast<Index>(blocks.size());
  if (n == 0 || blocks.front().empty()) throw InputError("Channel::from_blocks: empty block grid");
  const Index d_out = blocks[0][0].rows();
  ComplexMatrix choi(n * d_out, n * d_out);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(blocks[i].size()) != n) {
      throw InputError("Channel::from_blocks: block grid is not square");
    }
    for (Index j = 0; j < n; ++j) {
      const ComplexMatrix& blk = blocks[i][j];
      if (blk.rows() != d_out || blk.cols() != d_out) {
        throw InputError("Channel::from_blocks: inconsistent block shape");
      }
      choi.block(i * d_out, j * d_out, d_out, d_out) = blk;
    }
  }
  return Channel(n, d_out, std::move(choi));
}

ComplexMatrix Channel::block(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= d_in_ || j >= d_in_) throw InputError("Channel::block: index out of range");
  return choi_.block(i * d_out_, j * d_out_, d_out_, d_out_);
}

// --- KrausSet / BipartiteBlockState ------------------------------------------

KrausSet::KrausSet(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InputError("KrausSet: empty element list");
  for (const auto& a : elements_) {
    if (a.rows() != elements_.front().rows() || a.cols() != elements_.front().cols()) {
      throw InputError("KrausSet: inconsistent element shapes");
    }
    if (!all_finite(a)) throw InputError("KrausSet: non-finite entry");
  }
}

BipartiteBlockState::BipartiteBlockState(ComplexMatrix b, ComplexMatrix c, ComplexMatrix d)
    : b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const Index n = b_.rows();
  if (b_.cols() != n || c_.rows() != n || c_.cols() != n || d_.rows() != n || d_.cols() != n) {
    throw InputError("BipartiteBlockState: blocks must be square and of equal size");
  }
  if (!psd_check(full()).is_psd) throw InputError("BipartiteBlockState: matrix is not PSD");
}

BipartiteBlockState BipartiteBlockState::from_matrix(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() % 2 != 0) {
    throw InputError("BipartiteBlockState: expected a 2d x 2d matrix");
  }
  const Index d = rho.rows() / 2;
  return BipartiteBlockState(rho.topLeftCorner(d, d), rho.topRightCorner(d, d),
                             rho.bottomRightCorner(d, d));
}

ComplexMatrix BipartiteBlockState::full() const {
  const Index n = b_.rows();
  ComplexMatrix m(2 * n, 2 * n);
  m << b_, c_, c_.adjoint(), d_;
  return m;
}

// --- Factorizations ---------------------------------------------------------

ComplexMatrix SqrtFactorization::gram() const {
  const auto n = static_cast<Index>(factors.size());
  if (n == 0) return ComplexMatrix(0, 0);
  const Index bd = factors.front().cols();
  ComplexMatrix m(n * bd, n * bd);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m.block(i * bd, j * bd, bd, bd) = factors[i].adjoint() * factors[j];
  }
  return m;
}

ComplexMatrix SqrtFactorization::cogram() const {
  const auto n = static_cast<Index>(factors.size());
  const Index r = rank();
  ComplexMatrix m(n * r, n * r);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m.block(i * r, j * r, r, r) = factors[i] * factors[j].adjoint();
  }
  return m;
}

SqrtFactorization gram_factorization(const ComplexMatrix& psd, Index blocks, Index block_dim) {
  if (psd.rows() != blocks * block_dim || psd.cols() != blocks * block_dim) {
    throw InputError("gram_factorization: dimension mismatch");
  }
  if (!psd_check(psd).is_psd) throw InputError("gram_factorization: matrix is not PSD");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(psd));
  const RealVector& lam = es.eigenvalues();
  const double threshold = 1e-10 * std::max(lam.sum(), 0.0);

  std::vector<Index> kept;
  for (Index k = lam.size() - 1; k >= 0; --k) {
    if (lam(k) > threshold) kept.push_back(k);
  }
  const auto rank = static_cast<Index>(kept.size());
  ComplexMatrix f(rank, psd.rows());
  for (Index r = 0; r < rank; ++r) {
    ComplexVector u = es.eigenvectors().col(kept[r]);
    for (Index i = 0; i < u.size(); ++i) {
      if (std::abs(u(i)) > 1e-12) {
        u *= std::conj(u(i)) / std::abs(u(i));
        break;
      }
    }
    f.row(r) = std::sqrt(lam(kept[r])) * u.adjoint();
  }

  SqrtFactorization out;
  for (Index i = 0; i < blocks; ++i) out.factors.push_back(f.middleCols(i * block_dim, block_dim));
  return out;
}

// --- Standard maps ------------------------------------------------------------

Channel identity_channel(Index d) {
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) choi(i * d + i, j * d + j) = 1.0;
  }
  return Channel(d, d, std::move(choi));
}

Channel depolarizing_channel(Index d, double lambda) {
  std::vector<std::vector<ComplexMatrix>> blocks(d, std::vector<ComplexMatrix>(d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      blocks[i][j] = (1.0 - lambda) * unit_matrix(d, i, j);
      if (i == j) blocks[i][j] += (lambda / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    }
  }
  return Channel::from_blocks(blocks);
}

Channel tensor_product(const Channel& a, const Channel& b) {
  const Index din = a.d_in() * b.d_in();
  std::vector<std::vector<ComplexMatrix>> blocks(din, std::vector<ComplexMatrix>(din));
  for (Index i1 = 0; i1 < a.d_in(); ++i1) {
    for (Index i2 = 0; i2 < b.d_in(); ++i2) {
      for (Index j1 = 0; j1 < a.d_in(); ++j1) {
        for (Index j2 = 0; j2 < b.d_in(); ++j2) {
          blocks[i1 * b.d_in() + i2][j1 * b.d_in() + j2] = kron(a.block(i1, j1), b.block(i2, j2));
        }
      }
    }
  }
  return Channel::from_blocks(blocks);
}

// --- Action -------------------------------------------------------------------

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.d_in() || rho.cols() != ch.d_in()) {
    throw InputError("apply: input must be d_in x d_in");
  }
  const Index n = ch.d_out();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < ch.d_in(); ++i) {
    for (Index j = 0; j < ch.d_in(); ++j) {
      if (rho(i, j) != Complex(0.0)) out += rho(i, j) * ch.choi().block(i * n, j * n, n, n);
    }
  }
  return out;
}

ComplexMatrix apply_tensor_identity(const Channel& ch, const ComplexMatrix& x) {
  const Index din = ch.d_in();
  if (x.rows() != x.cols() || x.rows() % din != 0) {
    throw InputError("apply_tensor_identity: operand must be square with a d_in x d_in block grid");
  }
  const Index d = x.rows() / din;
  const Index n = ch.d_out();
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (Index i = 0; i < din; ++i) {
    for (Index j = 0; j < din; ++j) {
      out += kron(ch.choi().block(i * n, j * n, n, n), x.block(i * d, j * d, d, d));
    }
  }
  return out;
}

ComplexMatrix apply_tensor_identity(const Channel& ch, const BipartiteBlockState& rho) {
  if (ch.d_in() != 2) throw InputError("apply_tensor_identity: map must have d_in = 2");
  return apply_tensor_identity(ch, rho.full());
}

ComplexMatrix sqrt_tensor_form(const SqrtFactorization& g, const SqrtFactorization& x) {
  if (g.factors.size() != x.factors.size() || g.factors.empty()) {
    throw InputError("sqrt_tensor_form: factor counts differ");
  }
  ComplexMatrix out = kron(g.factors[0], x.factors[0]);
  for (std::size_t i = 1; i < g.factors.size(); ++i) out += kron(g.factors[i], x.factors[i]);
  return out;
}

// --- Representations ------------------------------------------------------------

KrausSet kraus_from_choi(const Channel& ch) {
  if (!ch.is_cp()) throw InputError("kraus_from_choi: map is not CP");
  const SqrtFactorization g = gram_factorization(ch.choi(), ch.d_in(), ch.d_out());
  const Index rank = g.rank();
  if (rank == 0) {
    return KrausSet({ComplexMatrix::Zero(ch.d_out(), ch.d_in())});
  }
  std::vector<ComplexMatrix> elements;
  for (Index k = 0; k < rank; ++k) {
    ComplexMatrix a(ch.d_out(), ch.d_in());
    for (Index m = 0; m < ch.d_in(); ++m) a.col(m) = g.factors[m].row(k).adjoint();
    elements.push_back(std::move(a));
  }
  return KrausSet(std::move(elements));
}

Channel choi_from_kraus(const KrausSet& ks) {
  const Index din = ks.d_in();
  const Index dout = ks.d_out();
  std::vector<std::vector<ComplexMatrix>> blocks(din, std::vector<ComplexMatrix>(din));
  for (Index i = 0; i < din; ++i) {
    for (Index j = 0; j < din; ++j) {
      ComplexMatrix blk = ComplexMatrix::Zero(dout, dout);
      for (const auto& a : ks.elements()) blk += a.col(i) * a.col(j).adjoint();
      blocks[i][j] = std::move(blk);
    }
  }
  return Channel::from_blocks(blocks);
}

SqrtFactorization kraus_factor_blocks(const KrausSet& ks) {
  const auto k_count = static_cast<Index>(ks.size());
  SqrtFactorization g;
  for (Index m = 0; m < ks.d_in(); ++m) {
    ComplexMatrix gm(k_count, ks.d_out());
    for (Index k = 0; k < k_count; ++k) gm.row(k) = ks[k].col(m).adjoint();
    g.factors.push_back(std::move(gm));
  }
  return g;
}

ConjugatedMap conjugate_map(const Channel& ch) {
  if (!ch.is_cp()) throw InputError("conjugate_map: map is not CP");
  SqrtFactorization g = gram_factorization(ch.choi(), ch.d_in(), ch.d_out());
  if (g.rank() == 0) throw InputError("conjugate_map: zero map");
  Channel tilde(ch.d_in(), g.rank(), g.cogram());
  return {std::move(tilde), std::move(g)};
}

ConjugatedState conjugate_state(const ComplexMatrix& rho, Index blocks) {
  if (blocks <= 0 || rho.rows() % blocks != 0) throw InputError("conjugate_state: bad block count");
  SqrtFactorization x = gram_factorization(rho, blocks, rho.rows() / blocks);
  ComplexMatrix m = x.cogram();
  return {std::move(m), std::move(x)};
}

Channel complementary_channel(const KrausSet& ks) {
  const Index din = ks.d_in();
  const auto k_count = static_cast<Index>(ks.size());
  // Gram matrix of the columns: entry (k,j) of block (m,l) is <l|A_j^* A_k|m>.
  std::vector<std::vector<ComplexMatrix>> blocks(din, std::vector<ComplexMatrix>(din));
  for (Index m = 0; m < din; ++m) {
    for (Index l = 0; l < din; ++l) {
      ComplexMatrix blk(k_count, k_count);
      for (Index k = 0; k < k_count; ++k) {
        for (Index j = 0; j < k_count; ++j) blk(k, j) = ks[j].col(l).dot(ks[k].col(m));
      }
      blocks[m][l] = std::move(blk);
    }
  }
  return Channel::from_blocks(blocks);
}

// --- Entanglement breaking --------------------------------------------------------

std::string to_string(EbStatus s) {
  switch (s) {
    case EbStatus::kEntanglementBreaking: return "EB";
    case EbStatus::kNotEntanglementBreaking: return "NOT_EB";
    case EbStatus::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

EbCertificate is_entanglement_breaking(const Channel& ch) {
  if (!ch.is_cp()) throw InputError("is_entanglement_breaking: map is not CP");
  const Index din = ch.d_in();
  const ComplexMatrix pt = partial_transpose_first(ch.choi(), din, ch.d_out());
  const PsdCheck ppt = psd_check(pt);

  EbCertificate cert;
  cert.min_partial_transpose_eigenvalue = ppt.min_eigenvalue;
  if (!ppt.is_psd) {
    cert.status = EbStatus::kNotEntanglementBreaking;
    cert.reason = "partial transpose of the Choi matrix is not PSD";
    return cert;
  }
  if (din * ch.d_out() <= 6) {
    cert.status = EbStatus::kEntanglementBreaking;
    cert.reason = "PPT Choi matrix in total dimension <= 6";
    return cert;
  }

  const double scale = max_abs(ch.choi());
  bool toeplitz = true;
  bool hankel = true;
  for (Index i = 0; i < din; ++i) {
    for (Index j = 0; j < din; ++j) {
      if (i > 0 && j > 0 && !blocks_equal(ch.block(i, j), ch.block(i - 1, j - 1), scale)) {
        toeplitz = false;
      }
      if (i > 0 && j + 1 < din && !blocks_equal(ch.block(i, j), ch.block(i - 1, j + 1), scale)) {
        hankel = false;
      }
    }
  }
  if (toeplitz) {
    cert.status = EbStatus::kEntanglementBreaking;
    cert.reason = "PSD block-Toeplitz Choi matrix";
  } else if (hankel) {
    cert.status = EbStatus::kEntanglementBreaking;
    cert.reason = "PSD block-Hankel Choi matrix";
  } else {
    cert.status = EbStatus::kUnknown;
    cert.reason = "PPT, but no separability certificate in this dimension";
  }
  return cert;
}

}  // namespace moplab
