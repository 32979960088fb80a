#include "bentchain/defect_optimizer.hpp"

#include <cmath>

#include "bentchain/errors.hpp"
#include "bentchain/golden_section.hpp"

namespace bentchain {
namespace {

constexpr double kDeltaTolerance = 1e-6;  // units of Ω_max
constexpr double kBoundaryMargin = 1e-5;

struct Candidate {
  double delta = 0.0;
  FirstMaximum fm;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.fm.p_star != b.fm.p_star) return a.fm.p_star > b.fm.p_star;
  return std::abs(a.delta) < std::abs(b.delta);
}

}  // namespace

OptimizationResult optimize_detuning(const ChainSpec& spec, const BendSpec& bend,
                                     const ReferencePoint& ref, DetuningInterval interval,
                                     int n_steps) {
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw ValidationError("detuning interval must satisfy lo < hi");
  }
  bend.validate(spec.n_sites);
  if (!ref.matches(spec)) {
    throw ValidationError("reference point does not match the chain's protocol and size");
  }

  const double scale = omega_max(spec);
  int evaluations = 0;
  auto probe = [&](double delta) {
    BendSpec trial = bend;
    trial.delta_alpha = delta * scale;
    ++evaluations;
    return Candidate{delta, first_maximum(build_hamiltonian(spec, trial), ref.t0, n_steps)};
  };

  const double cell = (interval.hi - interval.lo) / (kCoarseScanPoints - 1);
  std::vector<Candidate> coarse;
  coarse.reserve(kCoarseScanPoints);
  for (int i = 0; i < kCoarseScanPoints; ++i) {
    coarse.push_back(probe(i + 1 == kCoarseScanPoints ? interval.hi : interval.lo + i * cell));
  }
  std::size_t best_index = 0;
  for (std::size_t i = 1; i < coarse.size(); ++i) {
    if (better(coarse[i], coarse[best_index])) best_index = i;
  }

  const DetuningInterval bracket{coarse[best_index == 0 ? 0 : best_index - 1].delta,
                                 coarse[std::min(best_index + 1, coarse.size() - 1)].delta};
  const auto refined = golden_section_maximize(
      [&](double delta) { return probe(delta).fm.p_star; }, bracket.lo, bracket.hi,
      kDeltaTolerance);

  Candidate best = coarse[best_index];
  if (const auto at_refined = probe(refined.x); better(at_refined, best)) best = at_refined;
  const Candidate zero = probe(0.0);
  if (!better(best, zero)) best = zero;

  OptimizationResult out;
  out.delta_star = best.delta;
  out.delta_absolute = best.delta * scale;
  out.optimized = {best.fm.p_star, best.fm.t_star, best.fm.p_star / ref.p0, best.fm.t_star / ref.t0};
  out.baseline = {zero.fm.p_star, zero.fm.t_star, zero.fm.p_star / ref.p0, zero.fm.t_star / ref.t0};
  out.evaluations = evaluations;
  out.bracket = bracket;
  out.interval = interval;
  out.on_boundary = std::abs(best.delta - interval.lo) <= kBoundaryMargin ||
                    std::abs(best.delta - interval.hi) <= kBoundaryMargin;
  return out;
}

std::vector<std::pair<double, OptimizationResult>> detuning_curve(
    const ChainSpec& spec, int alpha, std::span<const double> kappas, const ReferencePoint& ref,
    DetuningInterval interval, int n_steps) {
  std::vector<std::pair<double, OptimizationResult>> curve;
  curve.reserve(kappas.size());
  const double width = interval.hi - interval.lo;
  DetuningInterval current = interval;
  for (const double kappa : kappas) {
    auto result = optimize_detuning(spec, BendSpec{alpha, kappa, 0.0}, ref, current, n_steps);
    current = {result.delta_star - width / 2, result.delta_star + width / 2};
    if (current.hi > interval.hi) current = interval;
    curve.emplace_back(kappa, std::move(result));
  }
  return curve;
}

}  // namespace bentchain
