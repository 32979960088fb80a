#pragma once

#include <iosfwd>
#include <vector>

#include "bentchain/chain_model.hpp"

namespace bentchain {

/// Waveguide-array parameters for the evanescent coupling law
/// C(d) = η·exp(−ξ·d).
struct DeviceParams {
  double eta_per_cm = 19.5;
  double xi_per_um = 0.152;
  double length_cm = 10.0;
  double wavelength_nm = 633.0;  // metadata only

  void validate() const;
};

struct WaveguideLayout {
  std::vector<double> separations_um;    // d_{j,j+1}, j = 1…N−1
  std::vector<double> couplings_per_cm;  // C_{j,j+1}
  double omega0_per_cm = 0.0;
};

/// Coupling (cm⁻¹) between two guides `separation_um` apart.
double coupling_at(double separation_um, const DeviceParams& dev);

/// Inverse of coupling_at. Throws ValidationError if the coupling is not
/// below η (the separation would not be positive).
double separation_for(double coupling_per_cm, const DeviceParams& dev);

/// Maps propagation distance onto time: Ω₀ = transfer_time / L, where
/// `transfer_time` is the dimensionless arrival time Ω₀·T⁽⁰⁾ of the chain.
WaveguideLayout design_layout(const ChainSpec& spec, const DeviceParams& dev,
                              double transfer_time);

/// Protocol 2 uses Ω₀·T⁽⁰⁾ = π/2; Protocol 1 evaluates its unbent reference.
WaveguideLayout design_layout(const ChainSpec& spec, const DeviceParams& dev);

struct ParasiticReport {
  std::vector<double> ratios;  // per interior site j = 2…N−1
  double max_ratio = 0.0;
};

/// Next-nearest-neighbour over nearest-neighbour coupling on the straight
/// (unbent) layout.
ParasiticReport parasitic_check(const WaveguideLayout& layout, const DeviceParams& dev);

/// Columns: j, d_um, coupling_per_cm.
void write_layout_csv(std::ostream& os, const WaveguideLayout& layout);

}  // namespace bentchain
