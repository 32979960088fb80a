#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bentchain/chain_model.hpp"
#include "bentchain/reference.hpp"
#include "bentchain/transfer.hpp"

namespace bentchain {

/// Detuning search interval in units of Ω_max.
struct DetuningInterval {
  double lo = -20.0;
  double hi = 0.5;
};

inline constexpr int kCoarseScanPoints = 64;

struct OptimizationResult {
  double delta_star = 0.0;       // units of Ω_max
  double delta_absolute = 0.0;   // units of omega0
  TransferResult optimized;      // metrics at delta_star
  TransferResult baseline;       // metrics at Δ = 0
  int evaluations = 0;
  DetuningInterval bracket;      // final golden-section bracket
  DetuningInterval interval;     // interval that was scanned
  bool on_boundary = false;

  double q_opt() const { return optimized.q; }
  double s_opt() const { return optimized.s; }
};

/// Maximizes the first-maximum probability over the corner detuning.
///
/// A 64-point coarse scan over `interval` picks the best cell (ties toward
/// smaller |Δ|), golden section refines inside its two neighbouring cells to
/// 1e-6·Ω_max, and the Δ = 0 baseline is kept as a candidate so the result
/// never does worse than no defect. `bend.delta_alpha` is ignored.
OptimizationResult optimize_detuning(const ChainSpec& spec, const BendSpec& bend,
                                     const ReferencePoint& ref, DetuningInterval interval = {},
                                     int n_steps = kDefaultSteps);

/// Optimizes each κ in order. After the first point the scan interval keeps
/// its width but is re-centred on the previous Δ*, without moving its upper
/// edge above `interval.hi`.
std::vector<std::pair<double, OptimizationResult>> detuning_curve(
    const ChainSpec& spec, int alpha, std::span<const double> kappas, const ReferencePoint& ref,
    DetuningInterval interval = {}, int n_steps = kDefaultSteps);

}  // namespace bentchain
