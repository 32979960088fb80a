#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "bentchain/errors.hpp"
#include "bentchain/grid.hpp"
#include "bentchain/sweep.hpp"
#include "bentchain/transfer.hpp"

namespace bentchain {
namespace {

ReferencePoint calibrated(int n) { return calibrate_protocol1(n).reference; }
ChainSpec calibrated_spec(const ReferencePoint& ref) {
  return ChainSpec::protocol1(ref.n_sites, *ref.boundary_ratio, ref.omega0);
}

TEST(TransferMetrics, UnbentLimitIsUnity) {
  const auto p2 = ChainSpec::protocol2(11);
  const auto ref2 = reference(p2);
  const auto ref1 = calibrated(9);
  const auto p1 = calibrated_spec(ref1);
  for (int alpha = 2; alpha <= 8; ++alpha) {
    for (const auto& [spec, ref] : {std::pair{p2, ref2}, std::pair{p1, ref1}}) {
      const auto r = transfer_metrics(spec, BendSpec{alpha, 0.0, 0.0}, ref);
      EXPECT_NEAR(r.q, 1.0, 1e-8);
      EXPECT_NEAR(r.s, 1.0, 1e-8);
    }
  }
}

TEST(TransferMetrics, WeakBendPlateauAndDecay) {
  const auto spec = ChainSpec::protocol2(12);
  const auto ref = reference(spec);
  const auto weak = transfer_metrics(spec, BendSpec{6, 0.2, 0.0}, ref);
  const auto strong = transfer_metrics(spec, BendSpec{6, 0.8, 0.0}, ref);
  EXPECT_GE(weak.q, 0.9);
  EXPECT_LT(strong.q, weak.q);
  EXPECT_LE(weak.s, 1.0);
  EXPECT_GT(weak.s, 0.0);
}

TEST(TransferMetrics, RejectsMismatchedReference) {
  const auto ref = reference(ChainSpec::protocol2(8));
  EXPECT_THROW(transfer_metrics(ChainSpec::protocol2(9), BendSpec{3, 0.1, 0.0}, ref), ValidationError);
}

TEST(SweepKappa, SingleZeroRow) {
  const auto spec = ChainSpec::protocol2(7);
  const std::vector<double> grid{0.0};
  const auto table = sweep_kappa(spec, 4, grid, reference(spec), false);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_NEAR(table.rows[0].result.q, 1.0, 1e-8);
  EXPECT_NEAR(table.rows[0].result.s, 1.0, 1e-8);
  EXPECT_FALSE(table.rows[0].optimized.has_value());
}

TEST(SweepKappa, QualityDecaysWithBendStrength) {
  const auto spec = ChainSpec::protocol2(13);
  const auto grid = parse_grid("0:0.1:1");
  const auto table = sweep_kappa(spec, 7, grid, reference(spec), false);
  ASSERT_EQ(table.rows.size(), 11u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    EXPECT_LE(table.rows[i].result.q, table.rows[i - 1].result.q + 1e-3);
    EXPECT_LE(table.rows[i].result.s, 1.0);
    EXPECT_GT(table.rows[i].axis_value, table.rows[i - 1].axis_value);
  }
}

TEST(SweepKappa, ResultIndependentOfJobCount) {
  const auto spec = ChainSpec::protocol2(10);
  const auto grid = parse_grid("0:0.25:1");
  const auto ref = reference(spec);
  SweepOptions threaded;
  threaded.jobs = 3;
  std::ostringstream a, b;
  write_csv(a, sweep_kappa(spec, 5, grid, ref, true));
  write_csv(b, sweep_kappa(spec, 5, grid, ref, true, threaded));
  EXPECT_EQ(a.str(), b.str());
}

TEST(SweepKappa, RejectsUnsortedOrOutOfRangeGrids) {
  const auto spec = ChainSpec::protocol2(8);
  const auto ref = reference(spec);
  EXPECT_THROW(sweep_kappa(spec, 4, std::vector<double>{0.5, 0.2}, ref, false), ValidationError);
  EXPECT_THROW(sweep_kappa(spec, 4, std::vector<double>{0.5, 1.2}, ref, false), ValidationError);
  EXPECT_THROW(sweep_kappa(spec, 4, std::vector<double>{}, ref, false), ValidationError);
}

TEST(SweepAlpha, DetuningCostPeaksNearTheEnds) {
  const auto spec = ChainSpec::protocol2(16);
  const std::vector<int> alphas{2, 3, 4, 5, 6, 7, 8};
  const auto table = sweep_alpha(spec, 0.4, alphas, reference(spec));
  std::size_t worst = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ASSERT_TRUE(table.rows[i].optimized.has_value());
    if (std::abs(table.rows[i].optimized->delta_star) > std::abs(table.rows[worst].optimized->delta_star)) worst = i;
  }
  EXPECT_LE(table.rows[worst].axis_value, 3.0);
}

TEST(SweepAlpha, ZeroBendIsUnityEverywhere) {
  const auto spec = ChainSpec::protocol2(9);
  const std::vector<int> alphas{2, 3, 4, 5};
  for (const auto& row : sweep_alpha(spec, 0.0, alphas, reference(spec)).rows) {
    EXPECT_NEAR(row.result.q, 1.0, 1e-8);
  }
}

TEST(SweepAlpha, MirrorSymmetry) {
  for (const int n : {10, 16}) {
    const auto spec = ChainSpec::protocol2(n);
    const auto ref = reference(spec);
    for (const double kappa : {0.3, 0.6}) {
      for (int alpha = 2; alpha <= n / 2; ++alpha) {
        const auto left = transfer_metrics(spec, BendSpec{alpha, kappa, 0.0}, ref);
        const auto right = transfer_metrics(spec, BendSpec{n + 1 - alpha, kappa, 0.0}, ref);
        EXPECT_NEAR(left.q, right.q, 1e-8) << "n=" << n << " alpha=" << alpha;
      }
    }
  }
}

TEST(SizeEffect, LongerChainsSufferLess) {
  for (const bool engineered : {true, false}) {
    auto at = [&](int n) {
      const auto ref = engineered ? reference(ChainSpec::protocol2(n)) : calibrated(n);
      const auto spec = engineered ? ChainSpec::protocol2(n) : calibrated_spec(ref);
      return transfer_metrics(spec, BendSpec{(n + 1) / 2, 0.5, 0.0}, ref).q;
    };
    EXPECT_GE(at(20), at(8)) << (engineered ? "protocol 2" : "protocol 1");
  }
}

TEST(SweepCsv, HeaderAndRoundTrip) {
  const auto spec = ChainSpec::protocol2(9);
  const auto grid = parse_grid("0:0.5:1");
  const auto table = sweep_kappa(spec, 5, grid, reference(spec), true);
  std::ostringstream os;
  write_csv(os, table);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "axis,p,t,q,s,delta_opt,q_opt,s_opt");
  std::istringstream is(os.str());
  const auto back = read_sweep_csv(is);
  ASSERT_EQ(back.rows.size(), table.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].axis_value, table.rows[i].axis_value);
    EXPECT_EQ(back.rows[i].result.q, table.rows[i].result.q);
    EXPECT_EQ(back.rows[i].optimized->delta_star, table.rows[i].optimized->delta_star);
  }
  const auto json = to_json(table);
  EXPECT_EQ(json.at("axis"), "kappa");
  EXPECT_EQ(json.at("metadata").at("delta_units"), "omega_max");
  EXPECT_EQ(json.at("rows").size(), 3u);
}

TEST(SweepCsv, EmptyOptimizerColumnsWithoutOptimization) {
  const auto spec = ChainSpec::protocol2(6);
  const std::vector<double> grid{0.3};
  std::ostringstream os;
  write_csv(os, sweep_kappa(spec, 3, grid, reference(spec), false));
  const auto row = os.str().substr(os.str().find('\n') + 1);
  EXPECT_EQ(row.substr(row.size() - 4), ",,,\n");
}

}  // namespace
}  // namespace bentchain
