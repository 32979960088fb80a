#pragma once

#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bentchain/errors.hpp"

namespace bentchain {

struct SweepTable;

enum class FitKind { kGaussian, kLinear };
std::string_view to_string(FitKind kind);

/// Gaussian: params = (amplitude A, width σ) for A·exp(−x²/(2σ²)).
/// Linear:   params = (slope, intercept).
struct FitReport {
  FitKind kind = FitKind::kLinear;
  std::array<double, 2> params{};
  double residual_rms = 0.0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  std::size_t points = 0;
  int iterations = 0;

  double amplitude() const { return params[0]; }
  double width() const { return params[1]; }
  double slope() const { return params[0]; }
  double intercept() const { return params[1]; }
};

/// Carries the best iterate of a fit that failed to converge or degenerated.
class FitError : public NumericalError {
 public:
  FitError(const std::string& what, FitReport best) : NumericalError(what), best_(best) {}
  const FitReport& best() const { return best_; }

 private:
  FitReport best_;
};

inline constexpr int kMaxGaussNewtonIterations = 200;

/// Least-squares fit of y ≈ A·exp(−x²/(2σ²)) by damped Gauss–Newton from
/// A = 1, σ = 0.5. Needs at least 5 points. Throws FitError when σ runs off
/// to infinity (flat data) or the iteration budget is exhausted.
FitReport fit_gaussian(std::span<const double> x, std::span<const double> y);
FitReport fit_gaussian(const SweepTable& table);

/// Ordinary least squares over the pairs with x ≤ x_cut; needs ≥ 3 of them.
FitReport fit_linear(std::span<const std::pair<double, double>> points, double x_cut = 0.7);

}  // namespace bentchain
