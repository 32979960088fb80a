#include "bentchain/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bentchain/sweep.hpp"

namespace bentchain {
namespace {

constexpr double kStepTolerance = 1e-12;
// σ beyond this multiple of the data span means the curve is flat.
constexpr double kDegenerateWidthFactor = 1e4;

double gaussian(double x, double amplitude, double width) {
  return amplitude * std::exp(-x * x / (2.0 * width * width));
}

double gaussian_rms(std::span<const double> x, std::span<const double> y, double a, double w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - gaussian(x[i], a, w);
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(x.size()));
}

}  // namespace

std::string_view to_string(FitKind kind) {
  return kind == FitKind::kGaussian ? "gaussian" : "linear";
}

FitReport fit_gaussian(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit_gaussian: x and y differ in length");
  if (x.size() < 5) throw ValidationError("fit_gaussian needs at least 5 points");

  FitReport report;
  report.kind = FitKind::kGaussian;
  report.points = x.size();
  report.domain_lo = *std::min_element(x.begin(), x.end());
  report.domain_hi = *std::max_element(x.begin(), x.end());
  const double span = std::max(std::abs(report.domain_lo), std::abs(report.domain_hi));

  double a = 1.0;
  double w = 0.5;
  double rms = gaussian_rms(x, y, a, w);
  report.params = {a, w};
  report.residual_rms = rms;

  for (int it = 1; it <= kMaxGaussNewtonIterations; ++it) {
    report.iterations = it;
    // Normal equations JᵀJ·δ = Jᵀr for the 2-parameter model.
    double jaa = 0.0, jaw = 0.0, jww = 0.0, ra = 0.0, rw = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = std::exp(-x[i] * x[i] / (2.0 * w * w));
      const double da = e;
      const double dw = a * e * x[i] * x[i] / (w * w * w);
      const double r = y[i] - a * e;
      jaa += da * da;
      jaw += da * dw;
      jww += dw * dw;
      ra += da * r;
      rw += dw * r;
    }
    const double det = jaa * jww - jaw * jaw;
    if (!(std::abs(det) > std::numeric_limits<double>::min())) {
      throw FitError("fit_gaussian: singular normal equations (degenerate data)", report);
    }
    const double step_a = (jww * ra - jaw * rw) / det;
    const double step_w = (jaa * rw - jaw * ra) / det;

    // Halve the step until the residual does not grow and σ stays positive.
    double lambda = 1.0;
    double next_a = a, next_w = w, next_rms = rms;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      next_a = a + lambda * step_a;
      next_w = w + lambda * step_w;
      if (!(next_w > 0.0)) continue;
      next_rms = gaussian_rms(x, y, next_a, next_w);
      if (next_rms <= rms) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.params = {a, w};
      report.residual_rms = rms;
      return report;  // no descent direction left: at a minimum
    }
    const double change = std::max(std::abs(next_a - a), std::abs(next_w - w) / std::max(w, 1.0));
    a = next_a;
    w = next_w;
    rms = next_rms;
    report.params = {a, w};
    report.residual_rms = rms;
    if (w > kDegenerateWidthFactor * std::max(span, 1.0)) {
      throw FitError("fit_gaussian: width diverges (flat data)", report);
    }
    if (change < kStepTolerance) return report;
  }
  throw FitError("fit_gaussian: no convergence after " +
                     std::to_string(kMaxGaussNewtonIterations) + " iterations",
                 report);
}

FitReport fit_gaussian(const SweepTable& table) {
  if (table.axis != SweepAxis::kKappa) throw ValidationError("fit_gaussian needs a kappa sweep");
  std::vector<double> x, y;
  for (const auto& row : table.rows) {
    x.push_back(row.axis_value);
    y.push_back(row.result.q);
  }
  return fit_gaussian(x, y);
}

FitReport fit_linear(std::span<const std::pair<double, double>> points, double x_cut) {
  std::vector<std::pair<double, double>> used;
  for (const auto& pt : points) {
    if (pt.first <= x_cut) used.push_back(pt);
  }
  if (used.size() < 3) throw ValidationError("fit_linear needs at least 3 points with x <= x_cut");

  const auto n = static_cast<double>(used.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : used) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : used) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_linear: all x values coincide");

  FitReport report;
  report.kind = FitKind::kLinear;
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  report.params = {slope, intercept};
  double ss = 0.0;
  for (const auto& [x, y] : used) {
    const double r = y - (slope * x + intercept);
    ss += r * r;
  }
  report.residual_rms = std::sqrt(ss / n);
  report.points = used.size();
  report.domain_lo = std::min_element(used.begin(), used.end())->first;
  report.domain_hi = std::max_element(used.begin(), used.end())->first;
  report.iterations = 1;
  return report;
}

}  // namespace bentchain
