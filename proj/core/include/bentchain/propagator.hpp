#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "bentchain/chain_model.hpp"

namespace bentchain {

inline constexpr int kDefaultSteps = 4096;

// p_end values at or below this are treated as not yet arrived; local
// maxima beneath it are floating-point ripple, not arrivals.
inline constexpr double kArrivalFloor = 1e-10;

struct AmplitudeTrace {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> amplitudes;
  std::vector<double> p_end;
};

struct FirstMaximum {
  double t_star = 0.0;
  double p_star = 0.0;
  bool at_window_end = false;
};

/// Exact propagation of |Ψ(0)⟩ = |1⟩ through the eigenbasis of H:
/// A(t) = Σ_k exp(−iλ_k t) v_k ⟨v_k, e_1⟩.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HamiltonianMatrix& h);

  Eigen::VectorXcd amplitudes(double t) const;
  std::complex<double> end_amplitude(double t) const;
  double end_probability(double t) const { return std::norm(end_amplitude(t)); }

  /// p_end on the uniform grid t_m = m·t_end/n_steps, m = 0…n_steps.
  std::vector<double> end_probability_grid(double t_end, int n_steps) const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd weighted_vectors_;  // column k = v_k·⟨v_k, e_1⟩
  Eigen::VectorXd end_weights_;       // v_k[N]·v_k[1]
};

AmplitudeTrace evolve(const HamiltonianMatrix& h, double t_end, int n_steps = kDefaultSteps);

/// First arrival maximum of p_end on the trace window, refined by golden
/// section on the exact |A_N(t)|² to 1e-9 relative time tolerance. Returns
/// the window end if p_end never turns over.
FirstMaximum first_maximum(const AmplitudeTrace& trace, const HamiltonianMatrix& h);

/// Same search without materializing the amplitude vectors.
FirstMaximum first_maximum(const SpectralPropagator& propagator, double t_end,
                           int n_steps = kDefaultSteps);
FirstMaximum first_maximum(const HamiltonianMatrix& h, double t_end, int n_steps = kDefaultSteps);

/// CSV columns: t, Re A_1, Im A_1, …, Re A_N, Im A_N, p_end.
void write_trace_csv(std::ostream& os, const AmplitudeTrace& trace);

}  // namespace bentchain
