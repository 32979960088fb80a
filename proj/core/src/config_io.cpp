#include "bentchain/config_io.hpp"

#include <cstdio>
#include <fstream>

#include "bentchain/errors.hpp"

namespace bentchain {

std::string hex_string(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void to_json(nlohmann::json& j, const ChainSpec& spec) {
  j = {{"protocol", static_cast<int>(spec.protocol)},
       {"n_sites", spec.n_sites},
       {"omega0", spec.omega0},
       {"epsilon", spec.epsilon}};
  j["boundary_ratio"] = spec.boundary_ratio ? nlohmann::json(*spec.boundary_ratio) : nlohmann::json();
}

void from_json(const nlohmann::json& j, ChainSpec& spec) {
  spec.protocol = protocol_from_int(j.at("protocol").get<int>());
  spec.n_sites = j.at("n_sites").get<int>();
  spec.omega0 = j.value("omega0", 1.0);
  spec.epsilon = j.value("epsilon", 0.0);
  spec.boundary_ratio.reset();
  if (j.contains("boundary_ratio") && !j.at("boundary_ratio").is_null()) {
    spec.boundary_ratio = j.at("boundary_ratio").get<double>();
  }
}

void to_json(nlohmann::json& j, const BendSpec& bend) {
  j = {{"alpha", bend.alpha}, {"kappa", bend.kappa}, {"delta_alpha", bend.delta_alpha}};
}

void from_json(const nlohmann::json& j, BendSpec& bend) {
  bend.alpha = j.at("alpha").get<int>();
  bend.kappa = j.value("kappa", 0.0);
  bend.delta_alpha = j.value("delta_alpha", 0.0);
}

nlohmann::json chain_config_to_json(const ChainConfig& config) {
  nlohmann::json j = config.chain;
  if (config.bend) j.update(nlohmann::json(*config.bend));
  return j;
}

ChainConfig chain_config_from_json(const nlohmann::json& j) {
  ChainConfig config;
  try {
    config.chain = j.get<ChainSpec>();
    if (j.contains("alpha") && !j.at("alpha").is_null()) config.bend = j.get<BendSpec>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid chain config: ") + e.what());
  }
  config.chain.validate();
  if (config.bend) config.bend->validate(config.chain.n_sites);
  return config;
}

ChainConfig load_chain_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config " + path + " is not valid JSON: " + e.what());
  }
  return chain_config_from_json(j);
}

void save_chain_config(const std::string& path, const ChainConfig& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path);
  out << chain_config_to_json(config).dump(2) << '\n';
}

void to_json(nlohmann::json& j, const DeviceParams& dev) {
  j = {{"eta_per_cm", dev.eta_per_cm},
       {"xi_per_um", dev.xi_per_um},
       {"length_cm", dev.length_cm},
       {"wavelength_nm", dev.wavelength_nm}};
}

void from_json(const nlohmann::json& j, DeviceParams& dev) {
  const DeviceParams defaults;
  dev.eta_per_cm = j.value("eta_per_cm", defaults.eta_per_cm);
  dev.xi_per_um = j.value("xi_per_um", defaults.xi_per_um);
  dev.length_cm = j.value("length_cm", defaults.length_cm);
  dev.wavelength_nm = j.value("wavelength_nm", defaults.wavelength_nm);
}

void to_json(nlohmann::json& j, const ReferencePoint& ref) {
  j = {{"protocol", static_cast<int>(ref.protocol)},
       {"n_sites", ref.n_sites},
       {"omega0", ref.omega0},
       {"p0", ref.p0},
       {"t0", ref.t0}};
  j["boundary_ratio"] = ref.boundary_ratio ? nlohmann::json(*ref.boundary_ratio) : nlohmann::json();
}

void from_json(const nlohmann::json& j, ReferencePoint& ref) {
  ref.protocol = protocol_from_int(j.at("protocol").get<int>());
  ref.n_sites = j.at("n_sites").get<int>();
  ref.omega0 = j.value("omega0", 1.0);
  ref.p0 = j.at("p0").get<double>();
  ref.t0 = j.at("t0").get<double>();
  ref.boundary_ratio.reset();
  if (j.contains("boundary_ratio") && !j.at("boundary_ratio").is_null()) {
    ref.boundary_ratio = j.at("boundary_ratio").get<double>();
  }
}

void to_json(nlohmann::json& j, const TransferResult& r) {
  j = {{"p", r.p}, {"t", r.t}, {"q", r.q}, {"s", r.s}};
}

void to_json(nlohmann::json& j, const OptimizationResult& r) {
  j = {{"delta_star", r.delta_star},
       {"delta_absolute", r.delta_absolute},
       {"delta_units", "omega_max"},
       {"q_opt", r.q_opt()},
       {"s_opt", r.s_opt()},
       {"optimized", r.optimized},
       {"baseline", r.baseline},
       {"evaluations", r.evaluations},
       {"bracket", {r.bracket.lo, r.bracket.hi}},
       {"interval", {r.interval.lo, r.interval.hi}},
       {"on_boundary", r.on_boundary}};
}

void to_json(nlohmann::json& j, const FitReport& r) {
  j = {{"kind", to_string(r.kind)},
       {"residual_rms", r.residual_rms},
       {"domain", {r.domain_lo, r.domain_hi}},
       {"points", r.points},
       {"iterations", r.iterations}};
  if (r.kind == FitKind::kGaussian) {
    j["model"] = "A*exp(-x^2/(2*sigma^2))";
    j["amplitude"] = r.amplitude();
    j["width"] = r.width();
  } else {
    j["model"] = "slope*x+intercept";
    j["slope"] = r.slope();
    j["intercept"] = r.intercept();
  }
}

void to_json(nlohmann::json& j, const WaveguideLayout& layout) {
  j = {{"separations_um", layout.separations_um},
       {"couplings_per_cm", layout.couplings_per_cm},
       {"omega0_per_cm", layout.omega0_per_cm}};
}

void to_json(nlohmann::json& j, const SpectrumSeries& s) {
  j = {{"eigenvalues", s.eigenvalues},
       {"gaps", s.gaps},
       {"overlaps", s.overlaps},
       {"gap_distortion", s.gap_distortion},
       {"gap_distortion_weighted", s.gap_distortion_weighted}};
}

void to_json(nlohmann::json& j, const SpectrumReport& r) {
  j = {{"unperturbed", r.unperturbed}, {"bent", r.bent}, {"bent_optimized", r.bent_optimized}};
}

}  // namespace bentchain
