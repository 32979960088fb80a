#include "bentchain/propagator.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "bentchain/errors.hpp"
#include "bentchain/golden_section.hpp"

namespace bentchain {
namespace {

constexpr double kRelativeTimeTolerance = 1e-9;
// The phase recurrence is re-seeded from exact exponentials this often.
constexpr int kPhaseReseedInterval = 64;

void check_window(double t_end, int n_steps) {
  if (!std::isfinite(t_end)) throw ValidationError("t_end must be finite");
  if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
  if (n_steps < 100) throw ValidationError("n_steps must be at least 100");
}

std::vector<double> uniform_grid(double t_end, int n_steps) {
  std::vector<double> t(static_cast<std::size_t>(n_steps) + 1);
  for (int m = 0; m < n_steps; ++m) t[static_cast<std::size_t>(m)] = m * (t_end / n_steps);
  t.back() = t_end;
  return t;
}

FirstMaximum locate(const std::vector<double>& p, const std::vector<double>& times,
                    const SpectralPropagator& propagator) {
  if (p.size() < 3) throw ValidationError("first_maximum needs at least 3 grid points");
  if (times.size() != p.size()) throw ValidationError("trace times and p_end differ in length");
  const auto last = p.size() - 1;
  for (std::size_t i = 1; i < last; ++i) {
    if (p[i] <= kArrivalFloor || p[i + 1] >= p[i] || p[i] < p[i - 1]) continue;
    const double lo = times[i - 1];
    const double hi = times[i + 1];
    const auto refined = golden_section_maximize(
        [&propagator](double t) { return propagator.end_probability(t); }, lo, hi,
        kRelativeTimeTolerance * hi);
    if (refined.value >= p[i]) return {refined.x, refined.value, false};
    return {times[i], p[i], false};
  }
  return {times[last], p[last], true};
}

}  // namespace

SpectralPropagator::SpectralPropagator(const HamiltonianMatrix& h)
    : energies_(h.eigenvalues()) {
  const auto& v = h.eigenvectors();
  const Eigen::Index n = v.rows();
  weighted_vectors_ = v * v.row(0).transpose().asDiagonal();
  end_weights_ = v.row(n - 1).transpose().cwiseProduct(v.row(0).transpose());
}

Eigen::VectorXcd SpectralPropagator::amplitudes(double t) const {
  const Eigen::VectorXcd phases = (std::complex<double>(0.0, -t) * energies_.cast<std::complex<double>>()).array().exp();
  return weighted_vectors_.cast<std::complex<double>>() * phases;
}

std::complex<double> SpectralPropagator::end_amplitude(double t) const {
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    sum += end_weights_(k) * std::polar(1.0, -energies_(k) * t);
  }
  return sum;
}

std::vector<double> SpectralPropagator::end_probability_grid(double t_end, int n_steps) const {
  check_window(t_end, n_steps);
  const Eigen::Index n = energies_.size();
  const double dt = t_end / n_steps;
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> step(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) step[static_cast<std::size_t>(k)] = std::polar(1.0, -energies_(k) * dt);

  std::vector<double> p(static_cast<std::size_t>(n_steps) + 1);
  for (int m = 0; m <= n_steps; ++m) {
    const bool reseed = m % kPhaseReseedInterval == 0 || m == n_steps;
    const double t = m == n_steps ? t_end : m * dt;
    std::complex<double> sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      auto& ph = phase[static_cast<std::size_t>(k)];
      if (reseed) {
        ph = std::polar(1.0, -energies_(k) * t);
      } else {
        ph *= step[static_cast<std::size_t>(k)];
      }
      sum += end_weights_(k) * ph;
    }
    p[static_cast<std::size_t>(m)] = std::norm(sum);
  }
  return p;
}

AmplitudeTrace evolve(const HamiltonianMatrix& h, double t_end, int n_steps) {
  check_window(t_end, n_steps);
  const SpectralPropagator propagator(h);
  AmplitudeTrace trace;
  trace.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  trace.amplitudes.reserve(static_cast<std::size_t>(n_steps) + 1);
  trace.p_end.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (const double t : uniform_grid(t_end, n_steps)) {
    auto a = propagator.amplitudes(t);
    trace.times.push_back(t);
    trace.p_end.push_back(std::norm(a(a.size() - 1)));
    trace.amplitudes.push_back(std::move(a));
  }
  return trace;
}

FirstMaximum first_maximum(const AmplitudeTrace& trace, const HamiltonianMatrix& h) {
  if (trace.p_end.size() < 3) throw ValidationError("first_maximum needs at least 3 grid points");
  return locate(trace.p_end, trace.times, SpectralPropagator(h));
}

FirstMaximum first_maximum(const SpectralPropagator& propagator, double t_end, int n_steps) {
  return locate(propagator.end_probability_grid(t_end, n_steps), uniform_grid(t_end, n_steps),
                propagator);
}

FirstMaximum first_maximum(const HamiltonianMatrix& h, double t_end, int n_steps) {
  return first_maximum(SpectralPropagator(h), t_end, n_steps);
}

void write_trace_csv(std::ostream& os, const AmplitudeTrace& trace) {
  const auto n = trace.amplitudes.empty() ? Eigen::Index{0} : trace.amplitudes.front().size();
  os << "t";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",re_a" << j << ",im_a" << j;
  os << ",p_end\n";
  os << std::setprecision(17);
  for (std::size_t m = 0; m < trace.times.size(); ++m) {
    os << trace.times[m];
    for (Eigen::Index j = 0; j < n; ++j) {
      os << ',' << trace.amplitudes[m](j).real() << ',' << trace.amplitudes[m](j).imag();
    }
    os << ',' << trace.p_end[m] << '\n';
  }
}

}  // namespace bentchain
