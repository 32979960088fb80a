#include "bentchain/transfer.hpp"

#include "bentchain/errors.hpp"

namespace bentchain {

TransferResult transfer_metrics(const ChainSpec& spec, const BendSpec& bend,
                                const ReferencePoint& ref, int n_steps) {
  if (!ref.matches(spec)) {
    throw ValidationError("reference point does not match the chain's protocol and size");
  }
  if (!(ref.p0 > 0.0) || !(ref.t0 > 0.0)) throw ValidationError("reference point is not populated");
  const auto fm = first_maximum(build_hamiltonian(spec, bend), ref.t0, n_steps);
  return {fm.p_star, fm.t_star, fm.p_star / ref.p0, fm.t_star / ref.t0};
}

}  // namespace bentchain
