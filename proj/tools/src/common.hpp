#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bentchain/chain_model.hpp"
#include "bentchain/reference.hpp"

namespace bentchain::cli {

// Every flag the front end understands; commands read the subset they need.
struct Flags {
  std::string command;
  int protocol = 2;
  std::optional<int> n;
  double omega0 = 1.0;
  std::optional<double> ratio;
  double epsilon = 0.0;
  std::optional<int> alpha;
  std::optional<double> kappa;
  std::optional<double> delta;  // units of Ω_max
  std::optional<std::string> grid;
  std::optional<std::string> alphas;
  bool optimize = false;
  double length_cm = 10.0;
  double eta = 19.5;
  double xi = 0.152;
  double wavelength = 633.0;
  std::optional<std::string> interval;
  std::optional<double> window;
  std::string out_dir = "out";
  std::optional<std::string> label;
  std::string format = "csv";
  int jobs = 1;
  std::optional<std::string> cache;
  std::optional<std::string> input;
  std::string kind = "gaussian";
  double kappa_cut = 0.7;
  std::optional<std::string> figure;
};

struct Chain {
  ChainSpec spec;
  ReferencePoint ref;
  std::optional<CalibrationResult> calibration;  // set when the ratio was calibrated here
  bool cache_hit = false;
};

// Resolves the chain block; Protocol 1 without a ratio is calibrated first
// (through the reference cache when one is given).
Chain resolve_chain(const Flags& flags, const std::optional<std::vector<double>>& ratio_grid = std::nullopt);

// Calibration with optional cache lookup/update at `cache_path`.
CalibrationResult calibrate_cached(int n, const CalibrationOptions& options,
                                   const std::optional<std::string>& cache_path, bool* cache_hit);

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::uint64_t fnv1a(std::string_view bytes);

std::string num(double value, int precision = 10);

// Figure tags fig2…fig5: writes the panel CSVs into `dir`, returns the
// manifest fragment (files, axes, fits) and the summary tail.
struct FigureOutput {
  nlohmann::json manifest;
  std::vector<std::string> files;
  std::string summary;
};
FigureOutput reproduce_figure(const std::string& tag, const std::filesystem::path& dir, int jobs);

}  // namespace bentchain::cli
