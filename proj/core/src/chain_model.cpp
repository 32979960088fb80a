#include "bentchain/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bentchain/eigensolver.hpp"
#include "bentchain/errors.hpp"

namespace bentchain {

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kProtocol1:
      return "protocol1";
    case Protocol::kProtocol2:
      return "protocol2";
  }
  return "unknown";
}

Protocol protocol_from_int(int tag) {
  if (tag == 1) return Protocol::kProtocol1;
  if (tag == 2) return Protocol::kProtocol2;
  throw ValidationError("protocol must be 1 or 2, got " + std::to_string(tag));
}

ChainSpec ChainSpec::protocol1(int n_sites, double boundary_ratio, double omega0) {
  ChainSpec spec;
  spec.protocol = Protocol::kProtocol1;
  spec.n_sites = n_sites;
  spec.omega0 = omega0;
  spec.boundary_ratio = boundary_ratio;
  spec.validate();
  return spec;
}

ChainSpec ChainSpec::protocol2(int n_sites, double omega0) {
  ChainSpec spec;
  spec.protocol = Protocol::kProtocol2;
  spec.n_sites = n_sites;
  spec.omega0 = omega0;
  spec.validate();
  return spec;
}

void ChainSpec::validate() const {
  // Two sites are allowed for unbent reference runs; bends need N ≥ 3 via α.
  if (n_sites < 2) {
    throw ValidationError("n_sites must be at least 2, got " + std::to_string(n_sites));
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw ValidationError("omega0 must be positive and finite");
  }
  if (!std::isfinite(epsilon)) throw ValidationError("epsilon must be finite");
  if (protocol == Protocol::kProtocol1) {
    if (!boundary_ratio) throw ValidationError("protocol 1 requires boundary_ratio");
    if (!(*boundary_ratio > 0.0) || !std::isfinite(*boundary_ratio)) {
      throw ValidationError("boundary_ratio must be positive and finite");
    }
  } else if (boundary_ratio) {
    throw ValidationError("boundary_ratio is only meaningful for protocol 1");
  }
}

void BendSpec::validate(int n_sites) const {
  if (alpha < 2 || alpha > n_sites - 1) {
    throw ValidationError("corner index alpha=" + std::to_string(alpha) + " outside [2, " +
                          std::to_string(n_sites - 1) + "]");
  }
  if (!(kappa >= 0.0) || kappa > 1.0) {
    throw ValidationError("kappa must lie in [0, 1]");
  }
  if (!std::isfinite(delta_alpha)) throw ValidationError("delta_alpha must be finite");
}

std::vector<double> build_couplings(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  std::vector<double> out(static_cast<std::size_t>(n - 1));
  if (spec.protocol == Protocol::kProtocol1) {
    std::fill(out.begin(), out.end(), spec.omega0);
    out.front() = *spec.boundary_ratio * spec.omega0;
    out.back() = *spec.boundary_ratio * spec.omega0;
  } else {
    for (int j = 1; j < n; ++j) {
      out[static_cast<std::size_t>(j - 1)] = spec.omega0 * std::sqrt(static_cast<double>((n - j) * j));
    }
  }
  return out;
}

double omega_max(const ChainSpec& spec) {
  const auto couplings = build_couplings(spec);
  return *std::max_element(couplings.begin(), couplings.end());
}

double bend_coupling(const ChainSpec& spec, const BendSpec& bend) {
  return bend.kappa * omega_max(spec);
}

HamiltonianMatrix::HamiltonianMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("Hamiltonian must be a non-empty square matrix");
  }
  if (entries_ != entries_.transpose()) {
    throw ValidationError("Hamiltonian entries must be exactly symmetric");
  }
  auto eig = jacobi_eigensystem(entries_);
  eigenvalues_ = std::move(eig.values);
  eigenvectors_ = std::move(eig.vectors);
}

double HamiltonianMatrix::inf_norm() const {
  return entries_.cwiseAbs().rowwise().sum().maxCoeff();
}

HamiltonianMatrix build_hamiltonian(const ChainSpec& spec, const std::optional<BendSpec>& bend) {
  const auto couplings = build_couplings(spec);
  const Eigen::Index n = spec.n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.diagonal().setConstant(spec.epsilon);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    h(j, j + 1) = couplings[static_cast<std::size_t>(j)];
    h(j + 1, j) = couplings[static_cast<std::size_t>(j)];
  }
  if (bend) {
    bend->validate(spec.n_sites);
    const double g = bend->kappa * *std::max_element(couplings.begin(), couplings.end());
    // 1-based α maps to 0-based α−1; its outer neighbours are α−2 and α.
    const Eigen::Index corner = bend->alpha - 1;
    h(corner - 1, corner + 1) += g;
    h(corner + 1, corner - 1) += g;
    h(corner, corner) += bend->delta_alpha;
  }
  return HamiltonianMatrix(std::move(h));
}

}  // namespace bentchain
