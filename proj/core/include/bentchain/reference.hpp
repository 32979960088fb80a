#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bentchain/chain_model.hpp"
#include "bentchain/propagator.hpp"

namespace bentchain {

/// Unbent-chain first maximum: P⁽⁰⁾ and T⁽⁰⁾ (times in units of 1/omega0).
struct ReferencePoint {
  Protocol protocol = Protocol::kProtocol2;
  int n_sites = 0;
  std::optional<double> boundary_ratio;
  double omega0 = 1.0;
  double p0 = 0.0;
  double t0 = 0.0;

  bool matches(const ChainSpec& spec) const;
};

/// Default search window for Protocol 1 references: N/Ω₀.
double default_reference_window(const ChainSpec& spec);

/// Protocol 2 is checked against the analytic perfect transfer at π/(2Ω₀)
/// and throws NumericalError if that fails. Protocol 1 evolves the unbent
/// chain over [0, window] (default_reference_window when absent).
ReferencePoint reference(const ChainSpec& spec, std::optional<double> window = std::nullopt,
                         int n_steps = kDefaultSteps);

struct CalibrationOptions {
  std::optional<std::vector<double>> ratio_grid;  // absent selects 0.01, 0.02, …, 1.00
  std::optional<double> window;    // same time units as t0; default N/Ω₀
  double omega0 = 1.0;
  int jobs = 1;
  int n_steps = kDefaultSteps;
};

struct CalibrationResult {
  ReferencePoint reference;
  bool on_grid_boundary = false;
  double grid_best_ratio = 0.0;
  double grid_best_p0 = 0.0;
  std::size_t evaluations = 0;
};

std::vector<double> default_ratio_grid();

/// Picks Ω/Ω₀ maximizing the first-maximum probability of the unbent
/// Protocol 1 chain: grid scan (ties toward the smaller ratio), then golden
/// section inside the neighbouring grid cells. The better of the grid and
/// refined candidates is kept.
CalibrationResult calibrate_protocol1(int n_sites, const CalibrationOptions& options = {});

/// FNV-1a over the IEEE bytes of the grid values.
std::uint64_t grid_hash(std::span<const double> grid);

/// JSON-array file of calibrated references keyed by (protocol, N, grid
/// hash, window).
class ReferenceCache {
 public:
  struct Entry {
    ReferencePoint reference;
    std::uint64_t grid_hash = 0;
    double window = 0.0;
  };

  static ReferenceCache load(const std::string& path);  // missing file → empty cache
  void save(const std::string& path) const;

  std::optional<ReferencePoint> find(Protocol protocol, int n_sites, std::uint64_t hash,
                                     double window) const;
  void insert(const ReferencePoint& ref, std::uint64_t hash, double window);
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace bentchain
