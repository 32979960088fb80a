#include "bentchain/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "bentchain/config_io.hpp"
#include "bentchain/errors.hpp"
#include "bentchain/golden_section.hpp"
#include "bentchain/parallel.hpp"

namespace bentchain {
namespace {

constexpr double kPerfectTransferTolerance = 1e-8;
constexpr double kRatioTolerance = 1e-6;

}  // namespace

bool ReferencePoint::matches(const ChainSpec& spec) const {
  return protocol == spec.protocol && n_sites == spec.n_sites;
}

double default_reference_window(const ChainSpec& spec) {
  return static_cast<double>(spec.n_sites) / spec.omega0;
}

ReferencePoint reference(const ChainSpec& spec, std::optional<double> window, int n_steps) {
  spec.validate();
  ReferencePoint ref;
  ref.protocol = spec.protocol;
  ref.n_sites = spec.n_sites;
  ref.boundary_ratio = spec.boundary_ratio;
  ref.omega0 = spec.omega0;

  const auto h = build_hamiltonian(spec);
  if (spec.protocol == Protocol::kProtocol2) {
    const double t0 = std::numbers::pi / (2.0 * spec.omega0);
    const double p0 = SpectralPropagator(h).end_probability(t0);
    if (std::abs(1.0 - p0) > kPerfectTransferTolerance) {
      throw NumericalError("protocol 2 reference failed perfect-transfer check: p0=" +
                           std::to_string(p0));
    }
    ref.p0 = p0;
    ref.t0 = t0;
    return ref;
  }

  const auto fm = first_maximum(h, window.value_or(default_reference_window(spec)), n_steps);
  ref.p0 = fm.p_star;
  ref.t0 = fm.t_star;
  if (!(ref.p0 > 0.0)) throw NumericalError("protocol 1 reference has zero transfer probability");
  return ref;
}

std::vector<double> default_ratio_grid() {
  std::vector<double> grid;
  grid.reserve(100);
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

CalibrationResult calibrate_protocol1(int n_sites, const CalibrationOptions& options) {
  if (n_sites < 4) throw ValidationError("protocol 1 calibration needs n_sites >= 4");
  const auto grid = options.ratio_grid.value_or(default_ratio_grid());
  if (grid.empty()) throw ValidationError("ratio grid is empty");
  for (const double r : grid) {
    if (!(r > 0.0) || r > 1.0) throw ValidationError("ratio grid values must lie in (0, 1]");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) throw ValidationError("ratio grid must be ascending");

  const auto base = ChainSpec::protocol1(n_sites, 1.0, options.omega0);
  const double window = options.window.value_or(default_reference_window(base));
  auto evaluate = [&](double ratio) {
    return reference(ChainSpec::protocol1(n_sites, ratio, options.omega0), window, options.n_steps);
  };

  const auto scanned = parallel_map(grid.size(), options.jobs,
                                    [&](std::size_t i) { return evaluate(grid[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < scanned.size(); ++i) {
    if (scanned[i].p0 > scanned[best].p0) best = i;  // strict: ties stay on the smaller ratio
  }

  CalibrationResult out;
  out.reference = scanned[best];
  out.grid_best_ratio = grid[best];
  out.grid_best_p0 = scanned[best].p0;
  out.evaluations = grid.size();
  out.on_grid_boundary = grid.size() > 1 && (best == 0 || best + 1 == grid.size());

  if (grid.size() > 1) {
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const auto refined = golden_section_maximize(
        [&](double r) { return evaluate(r).p0; }, lo, hi, kRatioTolerance);
    out.evaluations += static_cast<std::size_t>(refined.evaluations);
    if (refined.value > out.reference.p0) out.reference = evaluate(refined.x);
  }
  return out;
}

std::uint64_t grid_hash(std::span<const double> grid) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const double value : grid) {
    auto bits = std::bit_cast<std::uint64_t>(value);
    for (int b = 0; b < 8; ++b) {
      hash ^= (bits >> (8 * b)) & 0xffu;
      hash *= 1099511628211ull;
    }
  }
  return hash;
}

ReferenceCache ReferenceCache::load(const std::string& path) {
  ReferenceCache cache;
  std::ifstream in(path);
  if (!in) return cache;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("reference cache " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw ValidationError("reference cache " + path + " must hold a JSON array");
  for (const auto& item : doc) {
    Entry entry;
    entry.reference = item.get<ReferencePoint>();
    entry.grid_hash = std::stoull(item.at("grid_hash").get<std::string>(), nullptr, 16);
    entry.window = item.at("window").get<double>();
    cache.entries_.push_back(std::move(entry));
  }
  return cache;
}

void ReferenceCache::save(const std::string& path) const {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& entry : entries_) {
    nlohmann::json item = entry.reference;
    item["grid_hash"] = hex_string(entry.grid_hash);
    item["window"] = entry.window;
    doc.push_back(std::move(item));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write reference cache " + path);
  out << doc.dump(2) << '\n';
}

std::optional<ReferencePoint> ReferenceCache::find(Protocol protocol, int n_sites,
                                                   std::uint64_t hash, double window) const {
  for (const auto& entry : entries_) {
    if (entry.reference.protocol == protocol && entry.reference.n_sites == n_sites &&
        entry.grid_hash == hash && entry.window == window) {
      return entry.reference;
    }
  }
  return std::nullopt;
}

void ReferenceCache::insert(const ReferencePoint& ref, std::uint64_t hash, double window) {
  for (auto& entry : entries_) {
    if (entry.reference.protocol == ref.protocol && entry.reference.n_sites == ref.n_sites &&
        entry.grid_hash == hash && entry.window == window) {
      entry.reference = ref;
      return;
    }
  }
  entries_.push_back({ref, hash, window});
}

}  // namespace bentchain
