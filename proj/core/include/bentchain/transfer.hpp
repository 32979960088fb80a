#pragma once

#include "bentchain/chain_model.hpp"
#include "bentchain/propagator.hpp"
#include "bentchain/reference.hpp"

namespace bentchain {

/// First-maximum metrics of a bent chain: P, T and their ratios
/// Q = P/P⁽⁰⁾, S = T/T⁽⁰⁾. Q is not clamped and may exceed 1 for Protocol 1.
struct TransferResult {
  double p = 0.0;
  double t = 0.0;
  double q = 0.0;
  double s = 0.0;
};

/// Evolves the bent chain over [0, ref.t0] and locates its first maximum.
/// Throws ValidationError if `ref` was computed for another protocol or N.
TransferResult transfer_metrics(const ChainSpec& spec, const BendSpec& bend,
                                const ReferencePoint& ref, int n_steps = kDefaultSteps);

}  // namespace bentchain
