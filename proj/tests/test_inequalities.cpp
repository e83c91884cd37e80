#include "moplab/counterexample.hpp"
#include "moplab/inequalities.hpp"
#include "moplab/random.hpp"

#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace moplab;
using moplab::testing::diag;
using moplab::testing::rel_diff;

namespace {

const SchattenOrder kInf = SchattenOrder::infinity();

void expect_consistent(const CheckReport& r) {
  EXPECT_NEAR(r.gap, r.rhs - r.lhs, 1e-12 * (1.0 + std::abs(r.rhs)));
  EXPECT_EQ(r.holds, r.gap >= -r.tol * (1.0 + std::abs(r.rhs)));
  EXPECT_EQ(r.witness.has_value(), !r.holds);
}

ComplexMatrix psd(Index d, std::uint64_t seed) { return random_psd(d, d, seed); }

Channel hermitian_offdiag_cp_map(std::uint64_t seed) {
  // [[P + ||H|| I, H], [H, Q + ||H|| I]] is PSD for Hermitian H and PSD P, Q.
  const ComplexMatrix h = random_hermitian(2, derive_seed(seed, 1, 0));
  const double n = schatten_norm(h, SchattenOrder::infinity());
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return Channel::from_blocks({{psd(2, derive_seed(seed, 2, 0)) + n * id, h}, {h, psd(2, derive_seed(seed, 3, 0)) + n * id}});
}

}  // namespace

TEST(CheckReport, ToleranceSemantics) {
  const CheckReport ok = make_report("x", 1.0, 1.0 - 1e-10, 1e-9);
  EXPECT_TRUE(ok.holds);
  const CheckReport bad = make_report("x", 1.0, 1.0 - 1e-8, 1e-9);
  EXPECT_FALSE(bad.holds);
  EXPECT_TRUE(bad.significant_violation() == false);  // 1e-8 / (1 + 1) is below the witness threshold
  const CheckReport big = make_report("x", 1.0, 0.9, 1e-9);
  EXPECT_TRUE(big.significant_violation());
}

TEST(CheckReport, JsonRoundTrip) {
  const CheckReport r = check_case3_sqrt(diag({1.0, 0.5}), diag({0.5, -1.0}), diag({1.0, 0.5}), diag({0.5, -1.0}),
                                         1.025);
  const CheckReport back = report_from_json(to_json(r));
  EXPECT_EQ(back.name, r.name);
  EXPECT_EQ(back.gap, r.gap);
  EXPECT_EQ(back.holds, r.holds);
  EXPECT_EQ(back.witness.has_value(), r.witness.has_value());
}

TEST(RhsCase3, IdentityChannel) {
  const PhaseMax pm = rhs_case3(identity_channel(2), 0.7, 0.2, 2.0);
  EXPECT_NEAR(pm.value, 0.9, 1e-12);
}

TEST(RhsCase3, HermitianOffDiagonalUsesExtremePoints) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Channel ch = hermitian_offdiag_cp_map(s);
    ASSERT_TRUE(ch.is_cp());
    ASSERT_TRUE(is_hermitian(ch.block(0, 1)));
    for (double q : {1.0, 1.5, 3.0}) {
      const PhaseMax pm = rhs_case3(ch, 0.6, 0.3, q);
      EXPECT_TRUE(pm.extreme_points_only);
      ComplexMatrix blocks[2][2] = {{ch.block(0, 0), ch.block(0, 1)}, {ch.block(1, 0), ch.block(1, 1)}};
      double grid = 0.0;
      for (int k = 0; k < 3600; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 3600;
        const double sq = std::sqrt(0.18);
        const ComplexMatrix m = 0.6 * blocks[0][0] + 0.3 * blocks[1][1] + std::polar(sq, t) * blocks[0][1] +
                                std::polar(sq, -t) * blocks[1][0];
        grid = std::max(grid, schatten_norm(m, q));
      }
      EXPECT_NEAR(pm.value, grid, 1e-9 * (1.0 + grid));
    }
  }
}

TEST(RhsCase3, GeneralMapMatchesDenseScan) {
  const Channel ch = random_cp_map(2, 3, 3, 5);
  const PhaseMax pm = rhs_case3(ch, 0.4, 0.9, 2.0);
  EXPECT_FALSE(pm.extreme_points_only);
  double grid = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 20000;
    ComplexMatrix rho(2, 2);
    rho << 0.4, std::polar(std::sqrt(0.36), t), std::polar(std::sqrt(0.36), -t), 0.9;
    grid = std::max(grid, schatten_norm(moplab::apply(ch, rho), 2.0));
  }
  EXPECT_GE(pm.value, grid - 1e-12);
  EXPECT_NEAR(pm.value, grid, 1e-7);
}

TEST(RhsCase3, ZeroBetaIsPhaseFree) {
  const Channel ch = random_cp_map(2, 2, 2, 6);
  const PhaseMax pm = rhs_case3(ch, 0.0, 0.8, 2.0);
  EXPECT_NEAR(pm.value, schatten_norm(0.8 * ch.block(1, 1), 2.0), 1e-13);
}

TEST(BlockNormBound, RandomStates) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index d = 1 + static_cast<Index>(s % 4);
    const auto rho = BipartiteBlockState::from_matrix(random_state(2 * d, 1 + static_cast<Index>(s % (2 * d)), s));
    for (const SchattenOrder q : {SchattenOrder(1.0), SchattenOrder(1.5), SchattenOrder(3.0), kInf}) {
      const CheckReport r = check_block_norm_bound(rho, q);
      EXPECT_TRUE(r.holds) << "seed " << s;
      expect_consistent(r);
    }
  }
}

TEST(Chris0, IdentityReducesToBlockNormBound) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const BipartiteBlockState rho = random_bipartite_state(2, s);
    const CheckReport a = check_chris0(identity_channel(2), rho, 2.0);
    const CheckReport b = check_case3(identity_channel(2), rho, 2.0);
    const CheckReport c = check_block_norm_bound(rho, 2.0);
    EXPECT_TRUE(a.holds);
    EXPECT_NEAR(a.lhs, b.lhs, 1e-10);
    EXPECT_NEAR(a.rhs, b.rhs, 1e-10);
    EXPECT_NEAR(a.rhs, c.rhs, 1e-9);
  }
}

TEST(Chris0, EbChannelHolds) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CheckReport r = check_chris0(random_eb_channel(2, 2, 3, s), random_bipartite_state(2, s + 100), 1.5);
    EXPECT_TRUE(r.holds);
  }
}

TEST(Chris0, ProductStateFactorizes) {
  const Channel ch = random_cp_map(2, 2, 2, 8);
  const ComplexMatrix sigma = random_state(2, 2, 9);
  const ComplexMatrix tau = random_state(3, 3, 10);
  const auto rho = BipartiteBlockState::from_matrix(kron(sigma, tau));
  const CheckReport r = check_chris0(ch, rho, 2.0);
  EXPECT_NEAR(r.lhs, schatten_norm(moplab::apply(ch, sigma), 2.0) * schatten_norm(tau, 2.0), 1e-12);
  EXPECT_GE(r.gap, 0.0);
}

TEST(Chris0, WithNuMatchesFullCheck) {
  const Channel ch = random_cp_map(2, 2, 3, 12);
  const BipartiteBlockState rho = random_bipartite_state(2, 13);
  const CheckReport a = check_chris0(ch, rho, 2.0);
  const CheckReport b = check_chris0_with_nu(ch, rho, 2.0, nu_q(ch, 2.0).value);
  EXPECT_EQ(a.rhs, b.rhs);
}

TEST(Case3, CounterexampleFamilyWindow) {
  const auto fam = CounterexampleFamily::make(0.5);
  ASSERT_TRUE(fam.p0.has_value());
  const CheckReport in = check_case3(fam.channel(), fam.state(), 2.05 / 2.0);
  EXPECT_FALSE(in.holds);
  EXPECT_TRUE(in.significant_violation());
  ASSERT_FALSE(in.notes.empty());
  EXPECT_EQ(in.notes.back(), "conjecture-violating witness");
  const CheckReport out = check_case3(fam.channel(), fam.state(), (*fam.p0 + 1.0) / 2.0);
  EXPECT_TRUE(out.holds);
  // The map form and the square-rooted form agree: ||M^* M||_q = ||M||_{2q}^2.
  const CheckReport sq = fam.check_sqrt(2.05 / 2.0);
  EXPECT_NEAR(in.lhs, sq.lhs * sq.lhs, 1e-12);
  EXPECT_NEAR(in.rhs, sq.rhs * sq.rhs, 1e-9);
}

TEST(Case3, PureStatesHold) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Channel ch = random_cp_map(2, 2, 3, derive_seed(s, 1, 0));
    const ComplexVector psi = random_pure_state(4, derive_seed(s, 2, 0));
    const CheckReport r = check_case3(ch, BipartiteBlockState::from_matrix(psi * psi.adjoint()), 1.7);
    EXPECT_TRUE(r.holds) << "seed " << s << " gap " << r.gap;
  }
}

TEST(Case3Sqrt, ProportionalFactorsGiveEquality) {
  const ComplexMatrix g1 = random_ginibre(3, 2, 1);
  const ComplexMatrix g2 = random_ginibre(3, 2, 2);
  const ComplexMatrix x1 = random_ginibre(2, 2, 3);
  // With |alpha| fixed, the right-hand side is attained when arg(alpha) is the maximizing angle.
  const double mod = 0.7;
  const CheckReport probe = check_case3_sqrt(g1, g2, x1, mod * x1, 1.5);
  const double theta = probe.params.at("theta_star").get<double>();
  const CheckReport r = check_case3_sqrt(g1, g2, x1, std::polar(mod, theta) * x1, 1.5);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.rhs, probe.rhs, 1e-12 * r.rhs);
  EXPECT_NEAR(r.gap, 0.0, 1e-9 * (1.0 + r.rhs));
}

TEST(Case3Sqrt, SingleTermIsEquality) {
  const ComplexMatrix g1 = random_ginibre(2, 2, 4);
  const ComplexMatrix x1 = random_ginibre(3, 3, 5);
  const CheckReport r = check_case3_sqrt(g1, ComplexMatrix::Zero(2, 2), x1, ComplexMatrix::Zero(3, 3), 1.3);
  EXPECT_NEAR(r.lhs, schatten_norm(g1, 2.6) * schatten_norm(x1, 2.6), 1e-10 * r.lhs);
  EXPECT_NEAR(r.gap, 0.0, 1e-10 * r.lhs);
}

TEST(Case3Sqrt, CounterexampleViolates) {
  const auto fam = CounterexampleFamily::make(0.5);
  const CheckReport r = fam.check_sqrt(2.05 / 2.0);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.params.at("b").get<double>(), 0.5);
}

TEST(Alt, PsdHClassicRegime) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix f = random_ginibre(3, 3, derive_seed(s, 1, 0));
    const ComplexMatrix h = psd(3, derive_seed(s, 2, 0));
    EXPECT_TRUE(check_alt(f, h, 2.0).holds);
  }
}

TEST(Alt, UnitaryFIsEquality) {
  const ComplexMatrix u = random_unitary(3, 1);
  const ComplexMatrix h = random_ginibre(3, 3, 2);
  for (double q : {1.0, 2.0, 3.0}) {
    const CheckReport r = check_alt(u, h, q);
    EXPECT_LT(rel_diff(r.lhs, r.rhs), 1e-10);
  }
}

TEST(Alt, NonNormalH) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix f = random_ginibre(2 + static_cast<Index>(s % 2), 3, derive_seed(s, 1, 0));
    const ComplexMatrix h = random_ginibre(3, 3, derive_seed(s, 2, 0));
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      const CheckReport r = check_alt(f, h, q);
      EXPECT_TRUE(r.holds) << "seed " << s << " q " << q;
      EXPECT_FALSE(r.params.at("h_normal").get<bool>());
    }
  }
  EXPECT_THROW(check_alt(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 0.9), InputError);
}

TEST(PositiveTensor, SinglePairEquality) {
  const ComplexMatrix a = psd(3, 1);
  const ComplexMatrix b = random_ginibre(2, 2, 2);
  const CheckReport r = check_positive_tensor({a}, {b}, 1.5);
  EXPECT_LT(rel_diff(r.lhs, schatten_norm(a, 1.5) * schatten_norm(b, 1.5)), 1e-10);
  EXPECT_NEAR(r.gap, 0.0, 1e-10 * r.rhs);
}

TEST(PositiveTensor, CommonBIsEquality) {
  const ComplexMatrix b = random_ginibre(2, 2, 3);
  const std::vector<ComplexMatrix> as = {psd(2, 4), psd(2, 5), psd(2, 6)};
  const CheckReport r = check_positive_tensor(as, {b, b, b}, 2.0);
  EXPECT_LT(rel_diff(r.lhs, r.rhs), 1e-10);
}

TEST(PositiveTensor, ChainOrder) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::vector<ComplexMatrix> as, bs;
    for (std::uint64_t k = 0; k < 3; ++k) {
      as.push_back(random_psd(2, 1 + static_cast<Index>((s + k) % 2), derive_seed(s, k, 1)));
      bs.push_back(random_ginibre(2, 2, derive_seed(s, k, 2)));
    }
    const CheckReport r = check_positive_tensor(as, bs, 1.5);
    const double mid = r.params.at("rhs_weighted").get<double>();
    EXPECT_TRUE(r.holds);
    EXPECT_LE(r.lhs, mid + 1e-9 * (1.0 + mid));
    EXPECT_LE(mid, r.rhs + 1e-9 * (1.0 + r.rhs));
  }
  EXPECT_THROW(check_positive_tensor({diag({1.0, -1.0})}, {diag({1.0})}, 2.0), InputError);
}

TEST(Blockwise, DiagonalIdentityBlocks) {
  const Channel ch = Channel::from_blocks({{ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)},
                                           {ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)}});
  const CheckReport r = check_blockwise(ch, random_ginibre(6, 6, 1), 2.0);
  EXPECT_TRUE(r.holds);
}

TEST(Blockwise, SingleNonzeroBlockEquality) {
  const ComplexMatrix p = psd(2, 2);
  const Channel ch = Channel::from_blocks({{p, psd(2, 3)}, {psd(2, 3), psd(2, 4)}});
  ComplexMatrix x = ComplexMatrix::Zero(4, 4);
  x.block(0, 2, 2, 2) = random_ginibre(2, 2, 5);
  const CheckReport r = check_blockwise(ch, x, 2.0);
  EXPECT_LT(rel_diff(r.lhs, r.rhs), 1e-9);
}

TEST(Blockwise, RandomPsdBlockMaps) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix p12 = psd(2, derive_seed(s, 3, 0));
    const Channel ch = Channel::from_blocks({{psd(2, derive_seed(s, 1, 0)), p12}, {p12, psd(2, derive_seed(s, 2, 0))}});
    EXPECT_TRUE(check_blockwise(ch, random_ginibre(4, 4, derive_seed(s, 4, 0)), 2.0).holds);
  }
  const Channel bad = random_hermitian_block_map(2, 1);
  EXPECT_THROW(check_blockwise(bad, random_ginibre(4, 4, 1), 2.0), InputError);
}

TEST(PsdPhaseSqrt, CommutingCase) {
  const CheckReport r = check_psd_phase_sqrt(diag({1.0, 2.0}), diag({3.0, 0.5}), 0.0, 0.0, random_ginibre(2, 2, 1),
                                             random_ginibre(2, 2, 2), 2.0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.name, "psd_phase_sqrt");
}

TEST(PsdPhaseSqrt, QuasiNormAndLargeQ) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ComplexMatrix h1 = psd(2, derive_seed(s, 1, 0));
    const ComplexMatrix h2 = psd(2, derive_seed(s, 2, 0));
    const double t1 = 0.3 * static_cast<double>(s);
    const double t2 = 1.7 * static_cast<double>(s);
    const ComplexMatrix x1 = random_ginibre(3, 3, derive_seed(s, 3, 0));
    const ComplexMatrix x2 = random_ginibre(3, 3, derive_seed(s, 4, 0));
    const CheckReport quasi = check_psd_phase_sqrt(h1, h2, t1, t2, x1, x2, 0.75);
    EXPECT_TRUE(quasi.holds) << "seed " << s;
    EXPECT_NE(std::find(quasi.notes.begin(), quasi.notes.end(), "quasi-norm regime"), quasi.notes.end());
    EXPECT_TRUE(check_psd_phase_sqrt(h1, h2, t1, t2, x1, x2, 3.0).holds);
  }
}

TEST(SeparableBound, SingleProductTerm) {
  const Channel ch = random_cp_map(2, 2, 2, 1);
  const ComplexMatrix sigma = random_state(2, 1, 2);
  const ComplexMatrix b = psd(3, 3);
  const CheckReport r = check_separable_bound(ch, {{sigma, b}}, 2.0);
  EXPECT_NEAR(r.lhs, schatten_norm(moplab::apply(ch, sigma), 2.0) * schatten_norm(b, 2.0), 1e-12 * r.lhs);
  EXPECT_TRUE(r.holds);
}

TEST(SeparableBound, IdentityAndRandom) {
  std::vector<SeparableTerm> terms;
  for (std::uint64_t k = 0; k < 3; ++k) terms.push_back({random_state(2, 2, 10 + k), psd(2, 20 + k)});
  EXPECT_TRUE(check_separable_bound(identity_channel(2), terms, 2.0).holds);
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::vector<SeparableTerm> ts;
    for (std::uint64_t k = 0; k < 5; ++k) ts.push_back({random_state(2, 1, derive_seed(s, k, 1)), psd(2, derive_seed(s, k, 2))});
    EXPECT_TRUE(check_separable_bound(random_cp_map(2, 2, 3, s), ts, 1.5).holds);
  }
  EXPECT_THROW(check_separable_bound_with_nu(identity_channel(2), {{2.0 * random_state(2, 2, 1), psd(2, 1)}}, 2.0, 1.0),
               InputError);
}

TEST(MultiplicativityEb, CompletelyDepolarizing) {
  const Channel ch = random_channel(2, 2, 2, 3);
  const double q = 2.0;
  const CheckReport r = check_multiplicativity_eb(ch, depolarizing_channel(2, 1.0), q);
  ASSERT_TRUE(r.evaluated);
  EXPECT_NEAR(r.lhs, nu_q(ch, q).value * std::pow(2.0, (1.0 - q) / q), 1e-6);
  EXPECT_LE(r.params.at("equality_gap").get<double>(), 1e-5);
}

TEST(MultiplicativityEb, BothEbAndIdentityFactor) {
  const CheckReport both = check_multiplicativity_eb(random_eb_channel(2, 2, 3, 1), random_eb_channel(2, 2, 2, 2), 3.0);
  EXPECT_LE(both.params.at("equality_gap").get<double>(), 1e-5);
  const Channel eb = random_eb_channel(2, 2, 3, 4);
  const CheckReport id = check_multiplicativity_eb(identity_channel(2), eb, 2.0);
  EXPECT_NEAR(id.lhs, nu_q(eb, 2.0).value, 1e-6);
}

TEST(MultiplicativityEb, SkippedWithoutCertificate) {
  const CheckReport r = check_multiplicativity_eb(random_channel(2, 2, 2, 1), identity_channel(2), 2.0);
  EXPECT_FALSE(r.evaluated);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.params.at("eb_status").get<std::string>(), "NOT_EB");
}

TEST(ToeplitzTheorem, Examples) {
  const ComplexMatrix b = psd(3, 1);
  const Channel ch = random_hermitian_block_map(2, 2);
  EXPECT_TRUE(check_toeplitz_theorem(ch, b, b, 2.0).holds);
  EXPECT_TRUE(check_toeplitz_theorem(ch, b, ComplexMatrix::Zero(3, 3), 2.0).holds);
  EXPECT_THROW(check_toeplitz_theorem(ch, b, 2.0 * b, 2.0), InputError);
}

TEST(ToeplitzTheorem, RandomNonCpMaps) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Channel ch = random_hermitian_block_map(2, derive_seed(s, 1, 0));
    EXPECT_FALSE(ch.is_cp());
    const BlockToeplitzPair p = random_block_toeplitz(2, 3, derive_seed(s, 2, 0));
    const CheckReport r = check_toeplitz_theorem(ch, p.b, p.c, 2.0);
    EXPECT_TRUE(r.holds) << "seed " << s << " gap " << r.gap;
  }
}

TEST(DeltaBound, CpMaps) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CheckReport r = check_delta_bound(random_cp_map(2, 3, 1 + static_cast<Index>(s % 6), s));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.lhs, 0.0);
  }
}

TEST(DeltaBound, UnitalQubitChannel) {
  // Mixed unitary channels are unital: X = Phi(I) = I.
  const ComplexMatrix u1 = random_unitary(2, 1);
  const ComplexMatrix u2 = random_unitary(2, 2);
  const Channel ch = choi_from_kraus(KrausSet({std::sqrt(0.3) * u1, std::sqrt(0.7) * u2}));
  const CheckReport r = check_delta_bound(ch);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.params.at("x_is_identity_multiple").get<bool>());
  EXPECT_FALSE(check_delta_bound(random_cp_map(2, 2, 2, 3)).params.at("x_is_identity_multiple").get<bool>());
}

TEST(Checkers, NoKnifeEdgePasses) {
  // A pass at tol must survive tol/10 with margin tol*scale/2.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const BipartiteBlockState rho = random_bipartite_state(2, s);
    const CheckReport r = check_block_norm_bound(rho, 1.5, 1e-10);
    EXPECT_GE(r.gap, -1e-9 * r.scale() / 2.0);
    const Channel ch = random_hermitian_block_map(2, s);
    const BlockToeplitzPair p = random_block_toeplitz(2, 3, s + 50);
    const CheckReport t = check_toeplitz_theorem(ch, p.b, p.c, 3.0, 1e-10);
    EXPECT_GE(t.gap, -1e-9 * t.scale() / 2.0);
  }
}

TEST(RerunFromWitness, ReproducesGap) {
  const auto fam = CounterexampleFamily::make(0.3);
  const CheckReport a = check_case3(fam.channel(), fam.state(), 1.1);
  ASSERT_FALSE(a.holds);
  const CheckReport b = rerun_from_witness(to_json(a));
  EXPECT_FALSE(b.holds);
  EXPECT_NEAR(b.gap, a.gap, 1e-10);
  const CheckReport s = fam.check_sqrt(1.1);
  EXPECT_NEAR(rerun_from_witness(nlohmann::json::parse(to_json(s).dump())).gap, s.gap, 1e-10);
  EXPECT_THROW(rerun_from_witness(to_json(make_report("case3", 0.0, 1.0, 1e-9))), InputError);
}
