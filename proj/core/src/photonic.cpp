#include "bentchain/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "bentchain/errors.hpp"
#include "bentchain/reference.hpp"

namespace bentchain {
namespace {

constexpr double kPerCmToPerUm = 1e-4;

}  // namespace

void DeviceParams::validate() const {
  if (!(eta_per_cm > 0.0) || !std::isfinite(eta_per_cm)) throw ValidationError("eta must be positive");
  if (!(xi_per_um > 0.0) || !std::isfinite(xi_per_um)) throw ValidationError("xi must be positive");
  if (!(length_cm > 0.0) || !std::isfinite(length_cm)) throw ValidationError("length must be positive");
}

double coupling_at(double separation_um, const DeviceParams& dev) {
  dev.validate();
  return dev.eta_per_cm * std::exp(-dev.xi_per_um * separation_um);
}

double separation_for(double coupling_per_cm, const DeviceParams& dev) {
  dev.validate();
  if (!(coupling_per_cm > 0.0)) throw ValidationError("coupling must be positive");
  if (coupling_per_cm >= dev.eta_per_cm) {
    throw ValidationError("separation non-positive: coupling exceeds prefactor");
  }
  const double eta_per_um = dev.eta_per_cm * kPerCmToPerUm;
  const double coupling_per_um = coupling_per_cm * kPerCmToPerUm;
  return -std::log(coupling_per_um / eta_per_um) / dev.xi_per_um;
}

WaveguideLayout design_layout(const ChainSpec& spec, const DeviceParams& dev,
                              double transfer_time) {
  dev.validate();
  if (!(transfer_time > 0.0)) throw ValidationError("transfer time must be positive");
  WaveguideLayout layout;
  layout.omega0_per_cm = transfer_time / dev.length_cm;
  for (const double c : build_couplings(spec)) {
    const double physical = layout.omega0_per_cm * (c / spec.omega0);
    layout.couplings_per_cm.push_back(physical);
    layout.separations_um.push_back(separation_for(physical, dev));
  }
  return layout;
}

WaveguideLayout design_layout(const ChainSpec& spec, const DeviceParams& dev) {
  if (spec.protocol == Protocol::kProtocol2) return design_layout(spec, dev, std::numbers::pi / 2);
  const auto ref = reference(spec);
  return design_layout(spec, dev, ref.t0 * spec.omega0);
}

ParasiticReport parasitic_check(const WaveguideLayout& layout, const DeviceParams& dev) {
  ParasiticReport report;
  const auto& d = layout.separations_um;
  for (std::size_t j = 0; j + 1 < d.size(); ++j) {
    const double next_nearest = coupling_at(d[j] + d[j + 1], dev);
    const double nearest = std::min(coupling_at(d[j], dev), coupling_at(d[j + 1], dev));
    report.ratios.push_back(next_nearest / nearest);
  }
  if (!report.ratios.empty()) {
    report.max_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
  }
  return report;
}

void write_layout_csv(std::ostream& os, const WaveguideLayout& layout) {
  os << "j,d_um,coupling_per_cm\n";
  os << std::setprecision(17);
  for (std::size_t j = 0; j < layout.separations_um.size(); ++j) {
    os << j + 1 << ',' << layout.separations_um[j] << ',' << layout.couplings_per_cm[j] << '\n';
  }
}

}  // namespace bentchain
