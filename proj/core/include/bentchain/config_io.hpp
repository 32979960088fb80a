#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bentchain/chain_model.hpp"
#include "bentchain/defect_optimizer.hpp"
#include "bentchain/fit.hpp"
#include "bentchain/photonic.hpp"
#include "bentchain/reference.hpp"
#include "bentchain/spectral.hpp"
#include "bentchain/transfer.hpp"

namespace bentchain {

/// Flat chain+bend config object with keys protocol, n_sites, omega0,
/// boundary_ratio, epsilon, alpha, kappa, delta_alpha. The bend is present
/// iff `alpha` is.
struct ChainConfig {
  ChainSpec chain;
  std::optional<BendSpec> bend;
};

nlohmann::json chain_config_to_json(const ChainConfig& config);
ChainConfig chain_config_from_json(const nlohmann::json& j);
ChainConfig load_chain_config(const std::string& path);
void save_chain_config(const std::string& path, const ChainConfig& config);

std::string hex_string(std::uint64_t value);

void to_json(nlohmann::json& j, const ChainSpec& spec);
void from_json(const nlohmann::json& j, ChainSpec& spec);
void to_json(nlohmann::json& j, const BendSpec& bend);
void from_json(const nlohmann::json& j, BendSpec& bend);
void to_json(nlohmann::json& j, const DeviceParams& dev);
void from_json(const nlohmann::json& j, DeviceParams& dev);
void to_json(nlohmann::json& j, const ReferencePoint& ref);
void from_json(const nlohmann::json& j, ReferencePoint& ref);
void to_json(nlohmann::json& j, const TransferResult& r);
void to_json(nlohmann::json& j, const OptimizationResult& r);
void to_json(nlohmann::json& j, const FitReport& r);
void to_json(nlohmann::json& j, const WaveguideLayout& layout);
void to_json(nlohmann::json& j, const SpectrumSeries& s);
void to_json(nlohmann::json& j, const SpectrumReport& r);

}  // namespace bentchain
