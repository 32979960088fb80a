#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bentchain {

enum class Protocol {
  kProtocol1 = 1,  // uniform bulk Ω₀ with boundary couplings Ω = ratio·Ω₀
  kProtocol2 = 2,  // Ω_{j,j+1} = Ω₀·√((N−j)·j)
};

std::string_view to_string(Protocol protocol);
Protocol protocol_from_int(int tag);

/// Unbent chain definition. Couplings and energies carry the units of
/// `omega0`; times are then in units of 1/omega0.
struct ChainSpec {
  Protocol protocol = Protocol::kProtocol2;
  int n_sites = 3;
  double omega0 = 1.0;
  std::optional<double> boundary_ratio;  // Protocol 1 only
  double epsilon = 0.0;

  static ChainSpec protocol1(int n_sites, double boundary_ratio, double omega0 = 1.0);
  static ChainSpec protocol2(int n_sites, double omega0 = 1.0);

  void validate() const;
};

/// Bend at corner site `alpha` (1-based). The corner's outer neighbours pick
/// up a direct coupling g = kappa·Ω_max; `delta_alpha` shifts the corner
/// energy and carries the units of omega0.
struct BendSpec {
  int alpha = 2;
  double kappa = 0.0;
  double delta_alpha = 0.0;

  void validate(int n_sites) const;
};

std::vector<double> build_couplings(const ChainSpec& spec);
double omega_max(const ChainSpec& spec);
double bend_coupling(const ChainSpec& spec, const BendSpec& bend);

/// Real symmetric one-excitation Hamiltonian together with its eigensystem.
class HamiltonianMatrix {
 public:
  explicit HamiltonianMatrix(Eigen::MatrixXd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double inf_norm() const;

 private:
  Eigen::MatrixXd entries_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

HamiltonianMatrix build_hamiltonian(const ChainSpec& spec,
                                    const std::optional<BendSpec>& bend = std::nullopt);

}  // namespace bentchain
