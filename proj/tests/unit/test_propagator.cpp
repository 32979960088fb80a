#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "bentchain/errors.hpp"
#include "bentchain/propagator.hpp"
#include "support/oracles.hpp"

namespace bentchain {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Evolve, TwoSiteRabiOscillation) {
  const auto trace = evolve(build_hamiltonian(ChainSpec::protocol2(2)), kPi / 2, 200);
  EXPECT_NEAR(trace.p_end.back(), 1.0, 1e-12);
  for (std::size_t m = 0; m < trace.times.size(); ++m) {
    EXPECT_NEAR(trace.p_end[m], std::pow(std::sin(trace.times[m]), 2), 1e-12);
  }
}

TEST(Evolve, ThreeSiteClosedForm) {
  // (−i sin t)² = −sin² t for the end-site amplitude of the engineered chain.
  const SpectralPropagator prop(build_hamiltonian(ChainSpec::protocol2(3)));
  for (const double t : {0.1, 0.5, kPi / 4, 1.2}) {
    const auto a = prop.end_amplitude(t);
    EXPECT_NEAR(a.real(), -std::pow(std::sin(t), 2), 1e-12);
    EXPECT_NEAR(a.imag(), 0.0, 1e-12);
  }
  EXPECT_NEAR(prop.end_probability(kPi / 4), 0.25, 1e-12);
}

TEST(Evolve, InitialConditionIsFirstSite) {
  const auto h = build_hamiltonian(ChainSpec::protocol1(7, 0.6), BendSpec{4, 0.5, -0.3});
  const auto trace = evolve(h, 3.0, 100);
  EXPECT_EQ(trace.times.front(), 0.0);
  EXPECT_EQ(trace.times.back(), 3.0);
  EXPECT_EQ(trace.times.size(), 101u);
  EXPECT_NEAR(std::abs(trace.amplitudes.front()(0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(trace.amplitudes.front().tail(6).norm(), 0.0, 1e-14);
  EXPECT_NEAR(trace.p_end.front(), 0.0, 1e-28);
}

TEST(Evolve, RejectsBadWindows) {
  const auto h = build_hamiltonian(ChainSpec::protocol2(4));
  EXPECT_THROW(evolve(h, std::numeric_limits<double>::infinity()), ValidationError);
  EXPECT_THROW(evolve(h, std::numeric_limits<double>::quiet_NaN()), ValidationError);
  EXPECT_THROW(evolve(h, -1.0), ValidationError);
  EXPECT_THROW(evolve(h, 1.0, 50), ValidationError);
}

TEST(Evolve, NormIsPreservedOnRandomBentChains) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(unit(rng) * 23);
    const auto spec = trial % 2 ? ChainSpec::protocol2(n) : ChainSpec::protocol1(n, 0.2 + 0.8 * unit(rng));
    const BendSpec bend{2 + static_cast<int>(unit(rng) * (n - 2)), unit(rng), -4.0 * unit(rng) * omega_max(spec)};
    const auto trace = evolve(build_hamiltonian(spec, bend), 10.0, 256);
    for (const auto& a : trace.amplitudes) EXPECT_NEAR(a.squaredNorm(), 1.0, 1e-10);
  }
}

TEST(Evolve, Protocol2MatchesSinPowerClosedForm) {
  for (int n = 2; n <= 12; ++n) {
    const auto p = SpectralPropagator(build_hamiltonian(ChainSpec::protocol2(n))).end_probability_grid(kPi, 400);
    for (int m = 0; m <= 400; ++m) {
      EXPECT_NEAR(p[static_cast<std::size_t>(m)], std::pow(std::sin(kPi * m / 400), 2 * (n - 1)), 1e-8);
    }
  }
}

TEST(Evolve, GridRecurrenceMatchesDirectEvaluation) {
  const auto h = build_hamiltonian(ChainSpec::protocol1(15, 0.66), BendSpec{8, 0.7, -2.0});
  const SpectralPropagator prop(h);
  const auto grid = prop.end_probability_grid(12.0, 4096);
  for (int m = 0; m <= 4096; m += 7) {
    EXPECT_NEAR(grid[static_cast<std::size_t>(m)], prop.end_probability(12.0 * m / 4096), 1e-13);
  }
}

TEST(Evolve, AgreesWithRungeKutta) {
  const std::vector<std::pair<ChainSpec, BendSpec>> cases = {
      {ChainSpec::protocol2(9), {5, 0.4, 0.0}},
      {ChainSpec::protocol1(12, 0.71), {6, 0.8, -3.0}},
      {ChainSpec::protocol2(6), {2, 1.0, -5.0}},
  };
  for (const auto& [spec, bend] : cases) {
    const auto h = build_hamiltonian(spec, bend);
    const std::vector<double> times = {0.3, 1.0, 1.5707963267948966};
    const auto rk = testing::rk4_site_probabilities(h.entries(), times, 1e-3 / omega_max(spec));
    const SpectralPropagator prop(h);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Eigen::VectorXd probs = prop.amplitudes(times[i]).cwiseAbs2();
      EXPECT_LE((probs - rk[i]).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(FirstMaximum, PerfectTransferAtWindowEnd) {
  for (const int n : {2, 5}) {
    const auto h = build_hamiltonian(ChainSpec::protocol2(n));
    const auto fm = first_maximum(evolve(h, kPi / 2), h);
    EXPECT_NEAR(fm.t_star, kPi / 2, 1e-8);
    EXPECT_NEAR(fm.p_star, 1.0, 1e-8);
    EXPECT_TRUE(fm.at_window_end);
  }
}

TEST(FirstMaximum, BendAcceleratesArrival) {
  const auto h = build_hamiltonian(ChainSpec::protocol2(9), BendSpec{5, 0.4, 0.0});
  const auto fm = first_maximum(evolve(h, kPi / 2), h);
  const auto [t_dense, p_dense] = testing::dense_first_maximum(h.entries(), kPi / 2, 100000);
  EXPECT_LT(fm.t_star, kPi / 2);
  EXPECT_LT(t_dense, kPi / 2);
  EXPECT_NEAR(fm.t_star, t_dense, 2 * kPi / 2 / 100000);
  EXPECT_GE(fm.p_star, p_dense - 1e-12);
  EXPECT_NEAR(fm.p_star, p_dense, 1e-8);
  EXPECT_FALSE(fm.at_window_end);
}

TEST(FirstMaximum, TraceAndGridPathsAgree) {
  const auto h = build_hamiltonian(ChainSpec::protocol1(10, 0.73), BendSpec{5, 0.3, -0.5});
  const auto a = first_maximum(evolve(h, 6.8, 1024), h);
  const auto b = first_maximum(h, 6.8, 1024);
  EXPECT_DOUBLE_EQ(a.t_star, b.t_star);
  EXPECT_DOUBLE_EQ(a.p_star, b.p_star);
}

TEST(FirstMaximum, GridIndependent) {
  for (const double kappa : {0.2, 0.5, 0.9}) {
    const auto h = build_hamiltonian(ChainSpec::protocol2(13), BendSpec{7, kappa, 0.0});
    const auto coarse = first_maximum(h, kPi / 2, 2048);
    const auto fine = first_maximum(h, kPi / 2, 4096);
    EXPECT_NEAR(coarse.p_star, fine.p_star, 1e-8);
    EXPECT_NEAR(coarse.t_star, fine.t_star, 1e-6);
  }
}

TEST(FirstMaximum, IgnoresRoundoffRippleBeforeArrival) {
  // p_end ~ t^{2(N−1)} is ~1e-30 on the first grid cells of a long chain.
  const auto h = build_hamiltonian(ChainSpec::protocol1(25, 0.63));
  const auto fm = first_maximum(h, 25.0);
  EXPECT_GT(fm.p_star, 0.9);
  EXPECT_GT(fm.t_star, 10.0);
}

TEST(FirstMaximum, RejectsShortTraces) {
  const auto h = build_hamiltonian(ChainSpec::protocol2(3));
  AmplitudeTrace trace;
  trace.times = {0.0, 1.0};
  trace.p_end = {0.0, 0.5};
  EXPECT_THROW(first_maximum(trace, h), ValidationError);
}

TEST(TraceCsv, HeaderAndRowShape) {
  const auto trace = evolve(build_hamiltonian(ChainSpec::protocol2(2)), 1.0, 100);
  std::ostringstream os;
  write_trace_csv(os, trace);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "t,re_a1,im_a1,re_a2,im_a2,p_end");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 5);
}

}  // namespace
}  // namespace bentchain
