#include "moplab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace moplab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix Rng::ginibre(Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
  }
  return g;
}

ComplexMatrix random_ginibre(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return rng.ginibre(rows, cols);
}

ComplexMatrix random_unitary(Index d, std::uint64_t seed) {
  const ComplexMatrix g = random_ginibre(d, d, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Channel random_cp_map(Index d_in, Index d_out, Index rank, std::uint64_t seed) {
  if (rank <= 0 || rank > d_in * d_out) throw InputError("random_cp_map: invalid rank");
  Rng rng(seed);
  std::vector<ComplexMatrix> elements;
  for (Index k = 0; k < rank; ++k) elements.push_back(rng.ginibre(d_out, d_in));
  return choi_from_kraus(KrausSet(std::move(elements)));
}

Channel random_channel(Index d_in, Index d_out, Index rank, std::uint64_t seed) {
  if (rank <= 0 || rank > d_in * d_out) throw InputError("random_channel: invalid rank");
  Rng rng(seed);
  std::vector<ComplexMatrix> elements;
  ComplexMatrix s = ComplexMatrix::Zero(d_in, d_in);
  for (Index k = 0; k < rank; ++k) {
    elements.push_back(rng.ginibre(d_out, d_in));
    s += elements.back().adjoint() * elements.back();
  }
  const ComplexMatrix s_inv_sqrt = psd_power(s, 0.5).inverse();
  for (auto& a : elements) a = a * s_inv_sqrt;
  return choi_from_kraus(KrausSet(std::move(elements)));
}

Channel random_eb_channel(Index d_in, Index d_out, Index terms, std::uint64_t seed) {
  if (terms <= 0) throw InputError("random_eb_channel: need at least one term");
  Rng rng(seed);
  std::vector<ComplexMatrix> povm;
  std::vector<ComplexMatrix> outputs;
  ComplexMatrix s = ComplexMatrix::Zero(d_in, d_in);
  for (Index k = 0; k < terms; ++k) {
    const ComplexMatrix g = rng.ginibre(d_in, d_in);
    povm.push_back(g * g.adjoint());
    s += povm.back();
    const ComplexMatrix h = rng.ginibre(d_out, d_out);
    ComplexMatrix sigma = h * h.adjoint();
    outputs.push_back(sigma / sigma.trace().real());
  }
  const ComplexMatrix s_inv_sqrt = psd_power(s, 0.5).inverse();
  // Choi = sum_k E_k^T (x) sigma_k, since Phi(e^{ij}) = sum_k (E_k)_{ji} sigma_k.
  ComplexMatrix choi = ComplexMatrix::Zero(d_in * d_out, d_in * d_out);
  for (Index k = 0; k < terms; ++k) {
    const ComplexMatrix e = hermitian_part(s_inv_sqrt * povm[k] * s_inv_sqrt);
    choi += kron(e.transpose(), outputs[k]);
  }
  return Channel(d_in, d_out, hermitian_part(choi));
}

ComplexMatrix random_state(Index d, Index rank, std::uint64_t seed) {
  if (rank <= 0 || rank > d) throw InputError("random_state: invalid rank");
  const ComplexMatrix g = random_ginibre(d, rank, seed);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

BipartiteBlockState random_bipartite_state(Index d, std::uint64_t seed) {
  return BipartiteBlockState::from_matrix(random_state(2 * d, 2 * d, seed));
}

ComplexVector random_pure_state(Index d, std::uint64_t seed) {
  ComplexVector v = random_ginibre(d, 1, seed).col(0);
  return v / v.norm();
}

ComplexMatrix random_hermitian(Index d, std::uint64_t seed) {
  return hermitian_part(random_ginibre(d, d, seed));
}

ComplexMatrix random_psd(Index d, Index rank, std::uint64_t seed) {
  if (rank <= 0) throw InputError("random_psd: invalid rank");
  const ComplexMatrix w = random_ginibre(d, rank, seed);
  return hermitian_part(w * w.adjoint());
}

Channel random_hermitian_block_map(Index d_out, std::uint64_t seed) {
  Rng rng(seed);
  auto herm = [&] { return hermitian_part(rng.ginibre(d_out, d_out)); };
  const ComplexMatrix p11 = herm();
  const ComplexMatrix p22 = herm();
  const ComplexMatrix p12 = herm();
  return Channel::from_blocks({{p11, p12}, {p12, p22}});
}

BlockToeplitzPair random_block_toeplitz(Index d, Index terms, std::uint64_t seed) {
  if (terms <= 0) throw InputError("random_block_toeplitz: need at least one term");
  Rng rng(seed);
  BlockToeplitzPair out{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
  for (Index k = 0; k < terms; ++k) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Index rank = 1 + static_cast<Index>(rng.uniform(0.0, static_cast<double>(d)));
    const ComplexMatrix w = rng.ginibre(d, std::min(rank, d));
    const ComplexMatrix p = hermitian_part(w * w.adjoint());
    out.b += p;
    out.c += std::polar(1.0, theta) * p;
  }
  return out;
}

BlockToeplitzPair random_normal_block_toeplitz(Index d, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix g = rng.ginibre(d, d);
  const ComplexMatrix b = hermitian_part(g * g.adjoint() + 0.1 * ComplexMatrix::Identity(d, d));
  ComplexVector ev(d);
  for (Index k = 0; k < d; ++k) {
    ev(k) = std::polar(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  const ComplexMatrix u = random_unitary(d, derive_seed(seed, 1, 0));
  const ComplexMatrix t = u * ev.asDiagonal() * u.adjoint();
  const ComplexMatrix s = psd_sqrt(b);
  return {b, s * t * s};
}

}  // namespace moplab
