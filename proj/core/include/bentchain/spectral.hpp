#pragma once

#include <iosfwd>
#include <vector>

#include "bentchain/chain_model.hpp"

namespace bentchain {

struct SpectrumSeries {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> gaps;         // gaps[k] = λ_{k+1} − λ_k
  std::vector<double> overlaps;     // |⟨v_k, e_1⟩|²
  double gap_distortion = 0.0;      // RMS of gap − unperturbed gap
  double gap_distortion_weighted = 0.0;  // same, weighted by the unperturbed overlaps
};

struct SpectrumReport {
  SpectrumSeries unperturbed;
  SpectrumSeries bent;
  SpectrumSeries bent_optimized;
};

/// |⟨v_k, e_1⟩|² in eigenvalue order.
std::vector<double> overlap_profile(const HamiltonianMatrix& h);

/// Compares the unbent, bent (Δ = 0) and bent-with-defect Hamiltonians.
/// `delta_star` is in units of Ω_max, as reported by the optimizer.
/// Gap k is weighted by the mean unperturbed overlap of levels k and k+1.
SpectrumReport spectrum_report(const ChainSpec& spec, const BendSpec& bend, double delta_star);

/// Columns: k, gap_unperturbed, gap_bent, gap_optimized, overlap_unperturbed.
/// One row per gap; k is the 0-based index of the lower eigenvalue.
void write_spectrum_csv(std::ostream& os, const SpectrumReport& report);

}  // namespace bentchain
