#include <random>

#include <gtest/gtest.h>

#include "bentchain/eigensolver.hpp"
#include "bentchain/errors.hpp"

namespace bentchain {
namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  }
  return a;
}

TEST(JacobiEigensystem, MatchesEigenOnRandomSymmetricMatrices) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 30;
    const auto a = random_symmetric(n, rng);
    const auto sys = jacobi_eigensystem(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(a);
    const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_LE((sys.values - oracle.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * scale) << "n=" << n;
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd r = a * sys.vectors.col(k) - sys.values(k) * sys.vectors.col(k);
      EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-10 * scale);
    }
    const Eigen::MatrixXd gram = sys.vectors.transpose() * sys.vectors;
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(JacobiEigensystem, SortsAscendingAndHandlesDiagonalInput) {
  Eigen::MatrixXd a = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
  const auto sys = jacobi_eigensystem(a);
  EXPECT_EQ(sys.sweeps, 0);
  EXPECT_DOUBLE_EQ(sys.values(0), -1.0);
  EXPECT_DOUBLE_EQ(sys.values(1), 2.0);
  EXPECT_DOUBLE_EQ(sys.values(2), 3.0);
  EXPECT_DOUBLE_EQ(std::abs(sys.vectors(1, 0)), 1.0);
}

TEST(JacobiEigensystem, RejectsNonSquare) {
  EXPECT_THROW(jacobi_eigensystem(Eigen::MatrixXd::Zero(2, 3)), NumericalError);
}

}  // namespace
}  // namespace bentchain
