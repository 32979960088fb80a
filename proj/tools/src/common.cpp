#include <fstream>
#include <sstream>

#include "bentchain/errors.hpp"
#include "common.hpp"

namespace bentchain::cli {

CalibrationResult calibrate_cached(int n, const CalibrationOptions& options,
                                   const std::optional<std::string>& cache_path, bool* cache_hit) {
  *cache_hit = false;
  if (!cache_path) return calibrate_protocol1(n, options);
  const auto grid = options.ratio_grid.value_or(default_ratio_grid());
  const double window =
      options.window.value_or(default_reference_window(ChainSpec::protocol1(n, 1.0, options.omega0)));
  const auto hash = grid_hash(grid);
  auto cache = ReferenceCache::load(*cache_path);
  if (const auto ref = cache.find(Protocol::kProtocol1, n, hash, window); ref && ref->omega0 == options.omega0) {
    *cache_hit = true;
    CalibrationResult result;
    result.reference = *ref;
    result.grid_best_ratio = *ref->boundary_ratio;
    result.grid_best_p0 = ref->p0;
    // The cache keeps only the reference; treat an optimum inside the outer
    // grid cell as sitting on the boundary.
    result.on_grid_boundary = grid.size() < 2 || *ref->boundary_ratio <= grid[1] ||
                              *ref->boundary_ratio >= grid[grid.size() - 2];
    return result;
  }
  auto result = calibrate_protocol1(n, options);
  cache.insert(result.reference, hash, window);
  cache.save(*cache_path);
  return result;
}

Chain resolve_chain(const Flags& f, const std::optional<std::vector<double>>& ratio_grid) {
  Chain out;
  const auto protocol = protocol_from_int(f.protocol);
  if (protocol == Protocol::kProtocol2) {
    out.spec = ChainSpec::protocol2(*f.n, f.omega0);
  } else if (f.ratio) {
    out.spec = ChainSpec::protocol1(*f.n, *f.ratio, f.omega0);
  } else {
    CalibrationOptions options;
    options.ratio_grid = ratio_grid;
    options.window = f.window;
    options.omega0 = f.omega0;
    options.jobs = f.jobs;
    out.calibration = calibrate_cached(*f.n, options, f.cache, &out.cache_hit);
    out.spec = ChainSpec::protocol1(*f.n, *out.calibration->reference.boundary_ratio, f.omega0);
  }
  out.spec.epsilon = f.epsilon;
  out.spec.validate();
  if (out.calibration) {
    out.ref = out.calibration->reference;
  } else {
    out.ref = reference(out.spec, protocol == Protocol::kProtocol1 ? f.window : std::nullopt);
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  body(os);
  os.flush();
  if (!os) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string num(double value, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << value;
  return os.str();
}

}  // namespace bentchain::cli
