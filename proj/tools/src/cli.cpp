#include "bentchain_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bentchain/config_io.hpp"
#include "bentchain/defect_optimizer.hpp"
#include "bentchain/errors.hpp"
#include "bentchain/fit.hpp"
#include "bentchain/grid.hpp"
#include "bentchain/photonic.hpp"
#include "bentchain/spectral.hpp"
#include "bentchain/sweep.hpp"
#include "bentchain/transfer.hpp"
#include "common.hpp"

namespace bentchain::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kDefaultKappaGrid = "0:0.1:1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
const T& need(const std::optional<T>& value, const char* flag, const std::string& command) {
  if (!value) throw UsageError(command + " requires " + flag);
  return *value;
}

DetuningInterval parse_interval(const std::optional<std::string>& text) {
  if (!text) return {};
  const auto colon = text->find(':');
  if (colon == std::string::npos) throw ValidationError("interval must be lo:hi, got '" + *text + "'");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = text->substr(0, colon), hi = text->substr(colon + 1);
    DetuningInterval out{std::stod(lo, &used_lo), std::stod(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument("trailing");
    if (!(out.lo < out.hi)) throw ValidationError("interval needs lo < hi, got '" + *text + "'");
    return out;
  } catch (const std::logic_error&) {
    throw ValidationError("interval must be lo:hi, got '" + *text + "'");
  }
}

std::string interval_text(const DetuningInterval& interval) {
  return num(interval.lo, 17) + ":" + num(interval.hi, 17);
}

// Canonical, re-loadable description of the run. Keys are the long flag names,
// so a manifest's "config" block can be passed back through --config.
json resolved_config(const Flags& f) {
  json c = {{"command", f.command}};
  const auto& cmd = f.command;
  if (cmd == "reproduce") {
    c["figure"] = *f.figure;
    return c;
  }
  c["format"] = f.format;
  if (cmd == "fit") {
    c["input"] = *f.input;
    c["kind"] = f.kind;
    if (f.kind == "linear") c["kappa-cut"] = f.kappa_cut;
    return c;
  }
  c["protocol"] = f.protocol;
  c["n"] = *f.n;
  c["omega0"] = f.omega0;
  if (f.ratio && f.protocol == 1) c["ratio"] = *f.ratio;
  if (cmd != "calibrate") c["epsilon"] = f.epsilon;
  if (f.window) c["window"] = *f.window;
  if (f.alpha && cmd != "reference" && cmd != "calibrate" && cmd != "design" && cmd != "sweep-alpha") {
    c["alpha"] = *f.alpha;
  }
  if (f.kappa && (cmd == "metrics" || cmd == "optimize" || cmd == "spectrum" || cmd == "sweep-alpha")) {
    c["kappa"] = *f.kappa;
  }
  if (cmd == "metrics") c["delta"] = f.delta.value_or(0.0);
  if (cmd == "spectrum" && f.delta) c["delta"] = *f.delta;
  if (cmd == "calibrate" && f.grid) c["grid"] = *f.grid;
  if (cmd == "sweep-kappa" || cmd == "curve") c["grid"] = f.grid.value_or(kDefaultKappaGrid);
  if (cmd == "sweep-kappa") c["optimize"] = f.optimize;
  if (cmd == "sweep-alpha") c["alphas"] = f.alphas.value_or("2:1:" + std::to_string(*f.n - 1));
  const bool optimizes = (cmd == "sweep-kappa" && f.optimize) || cmd == "sweep-alpha" ||
                         cmd == "optimize" || cmd == "curve" || (cmd == "spectrum" && !f.delta);
  if (optimizes) c["interval"] = interval_text(parse_interval(f.interval));
  if (cmd == "design") {
    c["L"] = f.length_cm;
    c["eta"] = f.eta;
    c["xi"] = f.xi;
    c["wavelength"] = f.wavelength;
  }
  return c;
}

void check_required(const Flags& f) {
  const auto& cmd = f.command;
  if (cmd == "reproduce") {
    need(f.figure, "--figure", cmd);
    return;
  }
  if (cmd == "fit") {
    need(f.input, "--input", cmd);
    return;
  }
  need(f.n, "--n", cmd);
  if (cmd == "metrics" || cmd == "optimize" || cmd == "spectrum" || cmd == "sweep-kappa" || cmd == "curve") {
    need(f.alpha, "--alpha", cmd);
  }
  if (cmd == "metrics" || cmd == "optimize" || cmd == "spectrum" || cmd == "sweep-alpha") {
    need(f.kappa, "--kappa", cmd);
  }
  if (cmd == "calibrate" && f.protocol != 1) throw ValidationError("calibrate applies to protocol 1 only");
  if (f.jobs < 1) throw ValidationError("--jobs must be at least 1");
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    return;
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, num(j.get<double>(), 17));
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

// Scalar results as a one-row CSV with dotted column names.
void write_flat_csv(std::ostream& os, const json& j) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(j, "", cells);
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].first;
  os << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].second;
  os << '\n';
}

struct Run {
  const Flags& flags;
  fs::path dir;
  std::vector<std::string> files;
  json extra = json::object();

  void emit(const std::string& stem, const json& j,
            const std::function<void(std::ostream&)>& csv = nullptr) {
    const bool as_json = flags.format == "json";
    const std::string name = stem + (as_json ? ".json" : ".csv");
    if (as_json) {
      write_json(dir / name, j);
    } else {
      write_file(dir / name, csv ? csv : [&](std::ostream& os) { write_flat_csv(os, j); });
    }
    files.push_back(name);
  }

  void note_chain(const Chain& chain) {
    extra["reference"] = chain.ref;
    if (chain.calibration) {
      extra["calibration"] = {{"boundary_ratio", *chain.ref.boundary_ratio},
                              {"on_grid_boundary", chain.calibration->on_grid_boundary},
                              {"cache_hit", chain.cache_hit}};
    }
  }
};

SweepOptions sweep_options(const Flags& f) {
  SweepOptions options;
  options.jobs = f.jobs;
  options.interval = parse_interval(f.interval);
  return options;
}

BendSpec bend_from(const Flags& f, const ChainSpec& spec) {
  return BendSpec{*f.alpha, *f.kappa, f.delta.value_or(0.0) * omega_max(spec)};
}

std::string cmd_reference(Run& run) {
  const auto chain = resolve_chain(run.flags);
  run.note_chain(chain);
  run.emit("reference", chain.ref);
  return "t0=" + num(chain.ref.t0) + " p0=" + num(chain.ref.p0) +
         (chain.ref.boundary_ratio ? " ratio=" + num(*chain.ref.boundary_ratio) : "");
}

std::string cmd_calibrate(Run& run) {
  const auto& f = run.flags;
  CalibrationOptions options;
  if (f.grid) options.ratio_grid = parse_grid(*f.grid);
  options.window = f.window;
  options.omega0 = f.omega0;
  options.jobs = f.jobs;
  bool hit = false;
  const auto result = calibrate_cached(*f.n, options, f.cache, &hit);
  run.extra["cache_hit"] = hit;
  run.emit("calibration", json{{"reference", result.reference},
                               {"on_grid_boundary", result.on_grid_boundary},
                               {"grid_best_ratio", result.grid_best_ratio},
                               {"grid_best_p0", result.grid_best_p0},
                               {"evaluations", result.evaluations}});
  return "ratio=" + num(*result.reference.boundary_ratio) + " p0=" + num(result.reference.p0) +
         " t0=" + num(result.reference.t0) + (result.on_grid_boundary ? " on_grid_boundary" : "");
}

std::string cmd_metrics(Run& run) {
  const auto chain = resolve_chain(run.flags);
  run.note_chain(chain);
  const auto result = transfer_metrics(chain.spec, bend_from(run.flags, chain.spec), chain.ref);
  run.emit("metrics", result);
  return "q=" + num(result.q) + " s=" + num(result.s) + " p=" + num(result.p) + " t=" + num(result.t);
}

std::string cmd_sweep_kappa(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  const auto kappas = parse_grid(f.grid.value_or(kDefaultKappaGrid));
  const auto table = sweep_kappa(chain.spec, *f.alpha, kappas, chain.ref, f.optimize, sweep_options(f));
  run.emit("sweep", to_json(table), [&](std::ostream& os) { write_csv(os, table); });
  const auto& last = table.rows.back();
  std::string s = "rows=" + std::to_string(table.rows.size()) + " q(kappa=" + num(last.axis_value, 4) +
                  ")=" + num(last.result.q, 6);
  if (last.optimized) s += " q_opt=" + num(last.optimized->q_opt(), 6) + " delta_opt=" + num(last.optimized->delta_star, 6);
  return s;
}

std::string cmd_sweep_alpha(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  const auto alphas = parse_int_grid(f.alphas.value_or("2:1:" + std::to_string(*f.n - 1)));
  const auto table = sweep_alpha(chain.spec, *f.kappa, alphas, chain.ref, sweep_options(f));
  run.emit("sweep", to_json(table), [&](std::ostream& os) { write_csv(os, table); });
  double q_min = table.rows.front().result.q, q_opt_min = table.rows.front().optimized->q_opt();
  for (const auto& row : table.rows) {
    q_min = std::min(q_min, row.result.q);
    q_opt_min = std::min(q_opt_min, row.optimized->q_opt());
  }
  return "rows=" + std::to_string(table.rows.size()) + " min_q=" + num(q_min, 6) + " min_q_opt=" + num(q_opt_min, 6);
}

std::string cmd_optimize(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  const auto result = optimize_detuning(chain.spec, bend_from(f, chain.spec), chain.ref, parse_interval(f.interval));
  run.emit("optimize", result);
  return "delta_opt=" + num(result.delta_star) + " q=" + num(result.baseline.q, 6) + " q_opt=" +
         num(result.q_opt(), 6) + " s_opt=" + num(result.s_opt(), 6) + (result.on_boundary ? " on_boundary" : "");
}

std::string cmd_curve(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  const auto kappas = parse_grid(f.grid.value_or(kDefaultKappaGrid));
  const auto table = detuning_curve_table(chain.spec, *f.alpha, kappas, chain.ref, sweep_options(f));
  run.emit("curve", to_json(table), [&](std::ostream& os) { write_csv(os, table); });
  const auto& last = table.rows.back();
  return "rows=" + std::to_string(table.rows.size()) + " delta_opt(kappa=" + num(last.axis_value, 4) +
         ")=" + num(last.optimized->delta_star, 6);
}

std::string cmd_spectrum(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  const BendSpec bend{*f.alpha, *f.kappa, 0.0};
  double delta = 0.0;
  if (f.delta) {
    delta = *f.delta;
  } else {
    const auto opt = optimize_detuning(chain.spec, bend, chain.ref, parse_interval(f.interval));
    delta = opt.delta_star;
    run.extra["optimization"] = opt;
  }
  const auto report = spectrum_report(chain.spec, bend, delta);
  run.extra["delta"] = delta;
  run.emit("spectrum", json{{"delta", delta}, {"report", report}},
           [&](std::ostream& os) { write_spectrum_csv(os, report); });
  return "delta=" + num(delta, 6) + " distortion_bent=" + num(report.bent.gap_distortion, 6) +
         " distortion_optimized=" + num(report.bent_optimized.gap_distortion, 6);
}

std::string cmd_design(Run& run) {
  const auto& f = run.flags;
  const auto chain = resolve_chain(f);
  run.note_chain(chain);
  DeviceParams dev{f.eta, f.xi, f.length_cm, f.wavelength};
  dev.validate();
  const auto layout = chain.spec.protocol == Protocol::kProtocol2
                          ? design_layout(chain.spec, dev)
                          : design_layout(chain.spec, dev, chain.ref.t0 * chain.ref.omega0);
  const auto parasitic = parasitic_check(layout, dev);
  run.extra["device"] = dev;
  run.extra["parasitic"] = {{"ratios", parasitic.ratios}, {"max_ratio", parasitic.max_ratio}};
  run.emit("layout", json{{"layout", layout}, {"device", dev}, {"parasitic_max_ratio", parasitic.max_ratio}},
           [&](std::ostream& os) { write_layout_csv(os, layout); });
  const auto [lo, hi] = std::minmax_element(layout.separations_um.begin(), layout.separations_um.end());
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << "d_min_um=" << *lo << " d_max_um=" << *hi
    << std::setprecision(5) << " omega0_per_cm=" << layout.omega0_per_cm
    << std::setprecision(4) << " parasitic_max=" << parasitic.max_ratio;
  return s.str();
}

std::string cmd_fit(Run& run) {
  const auto& f = run.flags;
  std::ifstream in(*f.input);
  if (!in) throw IoError("cannot read " + *f.input);
  const auto table = read_sweep_csv(in);
  FitReport report;
  if (f.kind == "gaussian") {
    report = fit_gaussian(table);
  } else {
    std::vector<std::pair<double, double>> points;
    for (const auto& row : table.rows) {
      if (row.optimized && row.axis_value > 0.0) points.emplace_back(row.axis_value, row.optimized->delta_star);
    }
    report = fit_linear(points, f.kappa_cut);
  }
  run.emit("fit", report);
  return f.kind == "gaussian" ? "amplitude=" + num(report.amplitude(), 6) + " sigma=" + num(report.width(), 6)
                              : "slope=" + num(report.slope(), 6) + " intercept=" + num(report.intercept(), 6);
}

std::string execute(Run& run) {
  const auto& cmd = run.flags.command;
  if (cmd == "reference") return cmd_reference(run);
  if (cmd == "calibrate") return cmd_calibrate(run);
  if (cmd == "metrics") return cmd_metrics(run);
  if (cmd == "sweep-kappa") return cmd_sweep_kappa(run);
  if (cmd == "sweep-alpha") return cmd_sweep_alpha(run);
  if (cmd == "optimize") return cmd_optimize(run);
  if (cmd == "curve") return cmd_curve(run);
  if (cmd == "spectrum") return cmd_spectrum(run);
  if (cmd == "design") return cmd_design(run);
  if (cmd == "fit") return cmd_fit(run);
  const auto fig = reproduce_figure(*run.flags.figure, run.dir, run.flags.jobs);
  run.files = fig.files;
  run.extra = fig.manifest;
  return fig.summary;
}

// Turns a --config JSON object into flags placed ahead of the real ones, so the
// command line wins. A manifest is accepted too (its "config" block is used).
std::vector<std::string> config_args(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config " + path + " is not valid JSON: " + e.what());
  }
  if (j.contains("config") && j["config"].is_object()) j = j["config"];
  if (!j.is_object()) throw ValidationError("config " + path + " must be a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string()) throw ValidationError("config command must be a string");
      command = value.get<std::string>();
      continue;
    }
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      args.push_back("--" + key + "=" + (value.get<bool>() ? "true" : "false"));
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back("--" + key);
      args.push_back(value.dump());
    } else {
      throw ValidationError("config key '" + key + "' must be a scalar");
    }
  }
  return args;
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"reference", "unbent first maximum P0, T0"},
    {"calibrate", "protocol 1 boundary ratio maximizing P0"},
    {"metrics", "Q and S for one bent chain"},
    {"sweep-kappa", "metrics over a bend-strength grid"},
    {"sweep-alpha", "metrics and optimal detuning over corner positions"},
    {"optimize", "optimal corner detuning"},
    {"curve", "optimal detuning against bend strength"},
    {"spectrum", "eigenvalue gaps and initial-state overlaps"},
    {"design", "waveguide separations for a coupling profile"},
    {"fit", "Gaussian or linear fit of a sweep CSV"},
    {"reproduce", "regenerate a figure's data set"},
};

void add_flags(CLI::App& app, Flags& f) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--protocol", f.protocol, "coupling protocol")->check(CLI::IsMember({1, 2}));
  app.add_option("--n", f.n, "number of sites");
  app.add_option("--omega0", f.omega0, "coupling scale");
  app.add_option("--ratio", f.ratio, "protocol 1 boundary ratio; calibrated when absent");
  app.add_option("--epsilon", f.epsilon, "uniform on-site energy");
  app.add_option("--alpha", f.alpha, "corner site (1-based)");
  app.add_option("--kappa", f.kappa, "bend strength g/Omega_max");
  app.add_option("--delta", f.delta, "corner detuning in units of Omega_max");
  app.add_option("--grid", f.grid,
                 "values as start:step:end (ends inclusive within half a step) or a comma list; "
                 "kappa grid for sweeps, ratio grid for calibrate");
  app.add_option("--alphas", f.alphas, "corner positions, same syntax as --grid");
  app.add_flag("--optimize", f.optimize, "also optimize the corner detuning");
  app.add_option("--L", f.length_cm, "device length (cm)");
  app.add_option("--eta", f.eta, "coupling prefactor (1/cm)");
  app.add_option("--xi", f.xi, "coupling decay rate (1/um)");
  app.add_option("--wavelength", f.wavelength, "wavelength (nm), recorded only");
  app.add_option("--interval", f.interval, "detuning search interval lo:hi in units of Omega_max");
  app.add_option("--window", f.window, "protocol 1 reference search window, in the time units of t0 (default N/omega0)");
  app.add_option("--out-dir", f.out_dir, "output root")->capture_default_str();
  app.add_option("--label", f.label, "run directory name; defaults to a hash of the resolved config");
  app.add_option("--format", f.format, "result format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--jobs", f.jobs, "worker threads for sweeps and calibration");
  app.add_option("--config", "JSON file of flag values (a run manifest also works)");
  app.add_option("--cache", f.cache, "reference cache file for calibrated protocol 1 chains");
  app.add_option("--input", f.input, "sweep CSV to fit");
  app.add_option("--kind", f.kind, "fit model")->check(CLI::IsMember({"gaussian", "linear"}));
  app.add_option("--kappa-cut", f.kappa_cut, "largest kappa used by the linear fit");
  app.add_option("--figure", f.figure, "figure tag")->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
}

int parse(const std::vector<std::string>& args, Flags& flags, std::ostream& out, std::ostream& err) {
  // Config flags go first so anything on the command line overrides them.
  std::vector<std::string> user(args);
  std::string config_command;
  std::vector<std::string> from_config;
  for (std::size_t i = 0; i < user.size(); ++i) {
    std::string path;
    if (user[i] == "--config" && i + 1 < user.size()) {
      path = user[i + 1];
    } else if (user[i].rfind("--config=", 0) == 0) {
      path = user[i].substr(9);
    } else {
      continue;
    }
    from_config = config_args(path, config_command);
    break;
  }
  std::vector<std::string> merged;
  auto is_command = [](const std::string& word) {
    return std::any_of(kCommands.begin(), kCommands.end(), [&](const auto& c) { return c.first == word; });
  };
  if (!user.empty() && is_command(user.front())) {
    merged.push_back(user.front());
    user.erase(user.begin());
  } else if (!config_command.empty()) {
    merged.push_back(config_command);
  } else if (!user.empty() && user.front().rfind("-", 0) != 0) {
    err << "error: unknown command '" << user.front() << "'\n";
    return kUsage;
  }
  merged.insert(merged.end(), from_config.begin(), from_config.end());
  merged.insert(merged.end(), user.begin(), user.end());

  CLI::App app{"Bent tight-binding chain transfer: metrics, defect optimization, spectra and waveguide design."};
  app.name("bentchain");
  add_flags(app, flags);
  app.require_subcommand(1);
  for (const auto& [name, description] : kCommands) {
    app.add_subcommand(name, description)->fallthrough();
  }
  std::vector<const char*> argv{"bentchain"};
  for (const auto& a : merged) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? -1 : kUsage;
  }
  flags.command = app.get_subcommands().front()->get_name();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  try {
    if (const int code = parse(args, flags, out, err); code != kOk) return code < 0 ? kOk : code;
    check_required(flags);
    const json config = resolved_config(flags);
    const std::string label = flags.label.value_or(
        flags.command == "reproduce" ? *flags.figure : hex_string(fnv1a(config.dump())));
    Run run{flags, fs::path(flags.out_dir) / flags.command / label};
    std::error_code ec;
    fs::create_directories(run.dir, ec);
    if (ec) throw IoError("cannot create " + run.dir.string() + ": " + ec.message());

    std::string detail;
    try {
      detail = execute(run);
    } catch (...) {
      if (fs::is_empty(run.dir, ec)) {
        fs::remove(run.dir, ec);
        fs::remove(run.dir.parent_path(), ec);  // only succeeds when empty
      }
      throw;
    }
    const std::string summary = flags.command + " " + detail + " -> " + run.dir.string();
    json manifest = {{"tool", "bentchain"},  {"version", kVersion}, {"command", flags.command},
                     {"config", config},     {"outputs", run.files}, {"summary", summary},
                     {"execution", {{"jobs", flags.jobs}}}};
    for (const auto& [key, value] : run.extra.items()) manifest[key] = value;
    write_json(run.dir / "manifest.json", manifest);
    out << summary << '\n';
    return kOk;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "error: i/o: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace bentchain::cli
