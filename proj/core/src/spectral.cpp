#include "bentchain/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace bentchain {
namespace {

SpectrumSeries series_of(const HamiltonianMatrix& h) {
  SpectrumSeries s;
  const auto& ev = h.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  for (std::size_t k = 0; k + 1 < s.eigenvalues.size(); ++k) {
    s.gaps.push_back(s.eigenvalues[k + 1] - s.eigenvalues[k]);
  }
  s.overlaps = overlap_profile(h);
  return s;
}

void score_against(SpectrumSeries& s, const SpectrumSeries& reference) {
  double plain = 0.0;
  double weighted = 0.0;
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < s.gaps.size(); ++k) {
    const double d = s.gaps[k] - reference.gaps[k];
    const double w = 0.5 * (reference.overlaps[k] + reference.overlaps[k + 1]);
    plain += d * d;
    weighted += w * d * d;
    weight_sum += w;
  }
  const auto n = static_cast<double>(s.gaps.size());
  s.gap_distortion = n > 0 ? std::sqrt(plain / n) : 0.0;
  s.gap_distortion_weighted = weight_sum > 0 ? std::sqrt(weighted / weight_sum) : 0.0;
}

}  // namespace

std::vector<double> overlap_profile(const HamiltonianMatrix& h) {
  const auto& v = h.eigenvectors();
  std::vector<double> out(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index k = 0; k < v.cols(); ++k) out[static_cast<std::size_t>(k)] = v(0, k) * v(0, k);
  return out;
}

SpectrumReport spectrum_report(const ChainSpec& spec, const BendSpec& bend, double delta_star) {
  BendSpec plain = bend;
  plain.delta_alpha = 0.0;
  BendSpec optimized = bend;
  optimized.delta_alpha = delta_star * omega_max(spec);

  SpectrumReport report;
  report.unperturbed = series_of(build_hamiltonian(spec));
  report.bent = series_of(build_hamiltonian(spec, plain));
  report.bent_optimized = series_of(build_hamiltonian(spec, optimized));
  score_against(report.unperturbed, report.unperturbed);
  score_against(report.bent, report.unperturbed);
  score_against(report.bent_optimized, report.unperturbed);
  return report;
}

void write_spectrum_csv(std::ostream& os, const SpectrumReport& report) {
  os << "k,gap_unperturbed,gap_bent,gap_optimized,overlap_unperturbed\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < report.unperturbed.gaps.size(); ++k) {
    os << k << ',' << report.unperturbed.gaps[k] << ',' << report.bent.gaps[k] << ','
       << report.bent_optimized.gaps[k] << ',' << report.unperturbed.overlaps[k] << '\n';
  }
}

}  // namespace bentchain
