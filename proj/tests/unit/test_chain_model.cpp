#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bentchain/chain_model.hpp"
#include "bentchain/errors.hpp"

namespace bentchain {
namespace {

int count_offdiagonal_nonzeros(const Eigen::MatrixXd& m) {
  int count = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) count += (i != j && m(i, j) != 0.0);
  }
  return count;
}

TEST(BuildCouplings, Protocol2ThreeSites) {
  const auto c = build_couplings(ChainSpec::protocol2(3));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(c[1], std::sqrt(2.0));
}

TEST(BuildCouplings, Protocol2NineSitesPeaksInTheMiddle) {
  const auto c = build_couplings(ChainSpec::protocol2(9));
  // Enumerated directly: j(9−j) for j = 1..8 peaks at 20 for j = 4, 5.
  double best = 0.0;
  for (int j = 1; j <= 8; ++j) best = std::max(best, static_cast<double>(j * (9 - j)));
  EXPECT_DOUBLE_EQ(best, 20.0);
  EXPECT_DOUBLE_EQ(c[3], std::sqrt(20.0));
  EXPECT_DOUBLE_EQ(c[4], std::sqrt(20.0));
  EXPECT_NEAR(*std::max_element(c.begin(), c.end()), 4.4721, 1e-4);
}

TEST(BuildCouplings, Protocol1BoundaryRatio) {
  const auto c = build_couplings(ChainSpec::protocol1(6, 0.5));
  EXPECT_EQ(c, (std::vector<double>{0.5, 1.0, 1.0, 1.0, 0.5}));
}

TEST(BuildCouplings, ScalesWithOmega0) {
  const auto c = build_couplings(ChainSpec::protocol2(4, 2.5));
  EXPECT_DOUBLE_EQ(c[1], 2.5 * 2.0);
}

TEST(BuildCouplings, RejectsInvalidSpecs) {
  ChainSpec tiny;
  tiny.n_sites = 1;
  EXPECT_THROW(build_couplings(tiny), ValidationError);
  ChainSpec no_ratio;
  no_ratio.protocol = Protocol::kProtocol1;
  no_ratio.n_sites = 6;
  EXPECT_THROW(build_couplings(no_ratio), ValidationError);
  ChainSpec stray_ratio = ChainSpec::protocol2(5);
  stray_ratio.boundary_ratio = 0.5;
  EXPECT_THROW(stray_ratio.validate(), ValidationError);
  EXPECT_THROW(ChainSpec::protocol2(5, -1.0), ValidationError);
  EXPECT_THROW(protocol_from_int(3), ValidationError);
}

TEST(BuildCouplings, CentrosymmetricForEverySpec) {
  for (int n = 2; n <= 40; ++n) {
    for (const auto& spec : {ChainSpec::protocol2(n), ChainSpec::protocol1(n, 0.37)}) {
      const auto c = build_couplings(spec);
      ASSERT_EQ(c.size(), static_cast<std::size_t>(n - 1));
      for (std::size_t j = 0; j < c.size(); ++j) {
        EXPECT_GT(c[j], 0.0);
        EXPECT_EQ(c[j], c[c.size() - 1 - j]) << "n=" << n << " j=" << j;
      }
    }
  }
}

TEST(OmegaMax, Examples) {
  EXPECT_DOUBLE_EQ(omega_max(ChainSpec::protocol2(9)), std::sqrt(20.0));
  EXPECT_DOUBLE_EQ(omega_max(ChainSpec::protocol1(10, 0.3)), 1.0);
  EXPECT_DOUBLE_EQ(omega_max(ChainSpec::protocol2(2)), 1.0);
  for (int n = 2; n <= 30; ++n) {
    EXPECT_DOUBLE_EQ(omega_max(ChainSpec::protocol2(n)), std::sqrt(static_cast<double>((n / 2) * ((n + 1) / 2))));
  }
}

TEST(BuildHamiltonian, UnbentThreeSiteMatrix) {
  const auto h = build_hamiltonian(ChainSpec::protocol2(3));
  Eigen::Matrix3d expected;
  const double r2 = std::sqrt(2.0);
  expected << 0, r2, 0, r2, 0, r2, 0, r2, 0;
  EXPECT_EQ(h.entries(), Eigen::MatrixXd(expected));
}

TEST(BuildHamiltonian, ZeroBendEqualsNoBend) {
  for (const auto& spec : {ChainSpec::protocol2(11), ChainSpec::protocol1(11, 0.6)}) {
    for (int alpha = 2; alpha <= 10; ++alpha) {
      EXPECT_EQ(build_hamiltonian(spec, BendSpec{alpha, 0.0, 0.0}).entries(),
                build_hamiltonian(spec).entries());
    }
  }
}

TEST(BuildHamiltonian, BendCouplingAndDetuningPlacement) {
  const auto spec = ChainSpec::protocol2(5);
  const auto h = build_hamiltonian(spec, BendSpec{3, 0.5, -0.7});
  // 1-based (2,4) ↔ 0-based (1,3); Ω_max = √6 by enumeration of j(5−j).
  EXPECT_DOUBLE_EQ(h.entries()(1, 3), 0.5 * std::sqrt(6.0));
  EXPECT_NEAR(h.entries()(1, 3), 1.2247, 1e-4);
  EXPECT_DOUBLE_EQ(h.entries()(3, 1), h.entries()(1, 3));
  EXPECT_DOUBLE_EQ(h.entries()(2, 2), -0.7);
  EXPECT_DOUBLE_EQ(bend_coupling(spec, BendSpec{3, 0.5, 0.0}), 0.5 * std::sqrt(6.0));
}

TEST(BuildHamiltonian, RejectsBadBends) {
  const auto spec = ChainSpec::protocol2(6);
  EXPECT_THROW(build_hamiltonian(spec, BendSpec{1, 0.2, 0.0}), ValidationError);
  EXPECT_THROW(build_hamiltonian(spec, BendSpec{6, 0.2, 0.0}), ValidationError);
  EXPECT_THROW(build_hamiltonian(spec, BendSpec{3, -0.1, 0.0}), ValidationError);
  EXPECT_THROW(build_hamiltonian(spec, BendSpec{3, 1.1, 0.0}), ValidationError);
}

TEST(BuildHamiltonian, NonzeroStructure) {
  for (int n = 3; n <= 20; ++n) {
    const auto spec = ChainSpec::protocol2(n);
    EXPECT_EQ(count_offdiagonal_nonzeros(build_hamiltonian(spec).entries()), 2 * (n - 1));
    EXPECT_EQ(count_offdiagonal_nonzeros(build_hamiltonian(spec, BendSpec{2, 0.3, 0.0}).entries()), 2 * n);
  }
}

TEST(BuildHamiltonian, Protocol2SpectrumIsEquallySpaced) {
  for (int n = 2; n <= 30; ++n) {
    const auto h = build_hamiltonian(ChainSpec::protocol2(n));
    for (int k = 0; k < n; ++k) {
      const double expected = 2.0 * k - n + 1;
      EXPECT_NEAR(h.eigenvalues()(k), expected, 1e-9 * std::max(1.0, std::abs(expected))) << "n=" << n;
    }
  }
}

TEST(HamiltonianMatrix, EigenResidualAndOrthonormalityOnRandomBends) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(unit(rng) * 40);
    const auto spec = trial % 2 ? ChainSpec::protocol2(n) : ChainSpec::protocol1(n, 0.1 + 0.9 * unit(rng));
    const int alpha = 2 + static_cast<int>(unit(rng) * (n - 2));
    const BendSpec bend{alpha, unit(rng), -4.0 * unit(rng) * omega_max(spec)};
    const auto h = build_hamiltonian(spec, bend);
    EXPECT_EQ(h.entries(), h.entries().transpose());
    const double tol = 1e-10 * h.inf_norm();
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd r = h.entries() * h.eigenvectors().col(k) - h.eigenvalues()(k) * h.eigenvectors().col(k);
      EXPECT_LE(r.cwiseAbs().maxCoeff(), tol);
    }
    const Eigen::MatrixXd gram = h.eigenvectors().transpose() * h.eigenvectors();
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    for (int k = 0; k + 1 < n; ++k) EXPECT_LE(h.eigenvalues()(k), h.eigenvalues()(k + 1));
  }
}

TEST(HamiltonianMatrix, RejectsAsymmetricInput) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1.5, 0;
  EXPECT_THROW(HamiltonianMatrix{m}, ValidationError);
}

}  // namespace
}  // namespace bentchain
