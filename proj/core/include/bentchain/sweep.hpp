#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bentchain/chain_model.hpp"
#include "bentchain/defect_optimizer.hpp"
#include "bentchain/reference.hpp"
#include "bentchain/transfer.hpp"

namespace bentchain {

enum class SweepAxis { kKappa, kAlpha, kSites };
std::string_view to_string(SweepAxis axis);

struct SweepRow {
  double axis_value = 0.0;
  TransferResult result;
  std::optional<OptimizationResult> optimized;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::kKappa;
  std::vector<SweepRow> rows;  // ascending axis_value
  nlohmann::json metadata = nlohmann::json::object();
};

struct SweepOptions {
  int jobs = 1;
  int n_steps = kDefaultSteps;
  DetuningInterval interval;
};

/// One row per κ; with `optimize` each row also carries the corner-detuning
/// optimum. Rows are independent and run on `options.jobs` workers.
SweepTable sweep_kappa(const ChainSpec& spec, int alpha, std::span<const double> kappas,
                       const ReferencePoint& ref, bool optimize, const SweepOptions& options = {});

/// Per-α metrics and optimal detunings at fixed κ.
SweepTable sweep_alpha(const ChainSpec& spec, double kappa, std::span<const int> alphas,
                       const ReferencePoint& ref, const SweepOptions& options = {});

/// detuning_curve packaged as a κ table (rows carry the Δ = 0 metrics plus
/// the warm-started optimum).
SweepTable detuning_curve_table(const ChainSpec& spec, int alpha, std::span<const double> kappas,
                                const ReferencePoint& ref, const SweepOptions& options = {});

/// Headers: axis,p,t,q,s,delta_opt,q_opt,s_opt. Optimizer columns are empty
/// for rows without an optimum.
void write_csv(std::ostream& os, const SweepTable& table);
SweepTable read_sweep_csv(std::istream& is, SweepAxis axis = SweepAxis::kKappa);
nlohmann::json to_json(const SweepTable& table);

}  // namespace bentchain
