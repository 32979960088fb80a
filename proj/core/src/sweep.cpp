#include "bentchain/sweep.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bentchain/config_io.hpp"
#include "bentchain/errors.hpp"
#include "bentchain/parallel.hpp"

namespace bentchain {
namespace {

nlohmann::json base_metadata(const ChainSpec& spec, const ReferencePoint& ref,
                             const SweepOptions& options) {
  return {{"chain", spec},
          {"reference", ref},
          {"omega_max", omega_max(spec)},
          {"n_steps", options.n_steps},
          {"delta_units", "omega_max"},
          {"detuning_interval", {options.interval.lo, options.interval.hi}}};
}

void check_ascending(std::span<const double> values, const char* what) {
  if (values.empty()) throw ValidationError(std::string(what) + " grid is empty");
  if (!std::is_sorted(values.begin(), values.end()) ||
      std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw ValidationError(std::string(what) + " grid must be strictly ascending");
  }
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kKappa:
      return "kappa";
    case SweepAxis::kAlpha:
      return "alpha";
    case SweepAxis::kSites:
      return "n_sites";
  }
  return "unknown";
}

SweepTable sweep_kappa(const ChainSpec& spec, int alpha, std::span<const double> kappas,
                       const ReferencePoint& ref, bool optimize, const SweepOptions& options) {
  check_ascending(kappas, "kappa");
  for (const double k : kappas) BendSpec{alpha, k, 0.0}.validate(spec.n_sites);

  SweepTable table;
  table.axis = SweepAxis::kKappa;
  table.metadata = base_metadata(spec, ref, options);
  table.metadata["alpha"] = alpha;
  table.metadata["optimize"] = optimize;
  table.rows = parallel_map(kappas.size(), options.jobs, [&](std::size_t i) {
    const BendSpec bend{alpha, kappas[i], 0.0};
    SweepRow row;
    row.axis_value = kappas[i];
    if (optimize) {
      row.optimized = optimize_detuning(spec, bend, ref, options.interval, options.n_steps);
      row.result = row.optimized->baseline;
    } else {
      row.result = transfer_metrics(spec, bend, ref, options.n_steps);
    }
    return row;
  });
  return table;
}

SweepTable sweep_alpha(const ChainSpec& spec, double kappa, std::span<const int> alphas,
                       const ReferencePoint& ref, const SweepOptions& options) {
  if (alphas.empty()) throw ValidationError("alpha range is empty");
  if (!std::is_sorted(alphas.begin(), alphas.end()) ||
      std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end()) {
    throw ValidationError("alpha range must be strictly ascending");
  }
  for (const int a : alphas) BendSpec{a, kappa, 0.0}.validate(spec.n_sites);

  SweepTable table;
  table.axis = SweepAxis::kAlpha;
  table.metadata = base_metadata(spec, ref, options);
  table.metadata["kappa"] = kappa;
  table.rows = parallel_map(alphas.size(), options.jobs, [&](std::size_t i) {
    SweepRow row;
    row.axis_value = alphas[i];
    row.optimized = optimize_detuning(spec, BendSpec{alphas[i], kappa, 0.0}, ref,
                                      options.interval, options.n_steps);
    row.result = row.optimized->baseline;
    return row;
  });
  return table;
}

SweepTable detuning_curve_table(const ChainSpec& spec, int alpha, std::span<const double> kappas,
                                const ReferencePoint& ref, const SweepOptions& options) {
  check_ascending(kappas, "kappa");
  SweepTable table;
  table.axis = SweepAxis::kKappa;
  table.metadata = base_metadata(spec, ref, options);
  table.metadata["alpha"] = alpha;
  table.metadata["optimize"] = true;
  table.metadata["warm_start"] = true;
  for (auto& [kappa, result] :
       detuning_curve(spec, alpha, kappas, ref, options.interval, options.n_steps)) {
    SweepRow row;
    row.axis_value = kappa;
    row.result = result.baseline;
    row.optimized = std::move(result);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(std::ostream& os, const SweepTable& table) {
  os << "axis,p,t,q,s,delta_opt,q_opt,s_opt\n";
  os << std::setprecision(17);
  for (const auto& row : table.rows) {
    os << row.axis_value << ',' << row.result.p << ',' << row.result.t << ',' << row.result.q
       << ',' << row.result.s;
    if (row.optimized) {
      os << ',' << row.optimized->delta_star << ',' << row.optimized->q_opt() << ','
         << row.optimized->s_opt();
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

SweepTable read_sweep_csv(std::istream& is, SweepAxis axis) {
  SweepTable table;
  table.axis = axis;
  std::string line;
  if (!std::getline(is, line) || line.rfind("axis,p,t,q,s", 0) != 0) {
    throw ValidationError("sweep CSV must start with the header axis,p,t,q,s,...");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    while (cells.size() < 8) cells.emplace_back();
    try {
      SweepRow row;
      row.axis_value = std::stod(cells[0]);
      row.result = {std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])};
      if (!cells[5].empty()) {
        OptimizationResult opt;
        opt.delta_star = std::stod(cells[5]);
        opt.optimized.q = std::stod(cells[6]);
        opt.optimized.s = std::stod(cells[7]);
        opt.baseline = row.result;
        row.optimized = opt;
      }
      table.rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw ValidationError("malformed sweep CSV row: " + line);
    }
  }
  return table;
}

nlohmann::json to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json item = {{"axis", row.axis_value}, {"result", row.result}};
    if (row.optimized) item["optimized"] = *row.optimized;
    rows.push_back(std::move(item));
  }
  return {{"axis", to_string(table.axis)}, {"metadata", table.metadata}, {"rows", rows}};
}

}  // namespace bentchain
