#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

namespace modalstats {

/// Reduced-order model: per-mode SDOF parameters, the load participation
/// matrix, and per-node modal stress shapes.
struct ModalModel {
  struct Node {
    int id = 0;
    std::array<double, 3> coords{0.0, 0.0, 0.0};
    Eigen::MatrixXd stress_shape;  // Nsigma x Nr
  };

  std::string name;
  Eigen::VectorXd omega0;         // rad/s, ascending, > 0
  Eigen::VectorXd zeta;           // damping ratio per mode, in (0,1)
  Eigen::VectorXd modal_mass;     // > 0
  Eigen::MatrixXd participation;  // Nr x Nx
  std::vector<Node> nodes;

  int num_modes() const { return static_cast<int>(omega0.size()); }
  int num_inputs() const { return static_cast<int>(participation.cols()); }
  int num_stress_components() const {
    return nodes.empty() ? 0 : static_cast<int>(nodes.front().stress_shape.rows());
  }

  /// Throws invalid_input_error on violated invariants.
  void validate() const;

  /// Node lookup by id; throws invalid_input_error for unknown ids.
  const Node& node_by_id(int id) const;
};

/// Compliance of one mode: 1 / (m (omega0^2 + 2 i zeta omega0 omega - omega^2)).
/// Throws numerical_error on an exactly singular denominator (zeta = 0 at
/// resonance).
std::complex<double> sdof_compliance(double modal_mass, double omega0, double zeta, double omega);

/// Per-mode SDOF FRFs over a frequency grid; row per frequency, column per
/// mode (the diagonal of the modal FRF matrix).
Eigen::MatrixXcd sdof_frf(const ModalModel& model, const Eigen::VectorXd& freqs_hz);

/// H^(xq)(f) = diag(H(f)) * participation, one Nr x Nx matrix per frequency.
std::vector<Eigen::MatrixXcd> frf_x_to_q(const ModalModel& model, const Eigen::VectorXd& freqs_hz);

/// H^(x sigma)(f) = stress_shape * diag(H(f)) * participation per frequency.
std::vector<Eigen::MatrixXcd> frf_x_to_stress(const ModalModel& model, int node_id,
                                              const Eigen::VectorXd& freqs_hz);

struct EigenSolution {
  Eigen::VectorXd omega0;  // rad/s, ascending (zero for rigid-body modes)
  Eigen::MatrixXd shapes;  // N x N, mass-normalized columns
};

/// Generalized symmetric eigensolution K phi = omega^2 M phi with
/// mass-normalized shapes. K must be symmetric positive semi-definite and M
/// symmetric positive definite.
EigenSolution eigen_solve(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M);

/// Desk-scale demo structure: point masses in a line joined by springs,
/// optionally clamped to ground at either end.
struct LumpedChainModel {
  std::vector<double> masses;       // kg, one per DOF
  std::vector<double> stiffnesses;  // N/m, one per spring (see num_springs)
  bool clamped_left = true;
  bool clamped_right = true;

  int num_masses() const { return static_cast<int>(masses.size()); }
  int num_springs() const {
    return num_masses() - 1 + (clamped_left ? 1 : 0) + (clamped_right ? 1 : 0);
  }
  void validate() const;
};

Eigen::MatrixXd chain_stiffness(const LumpedChainModel& chain);
Eigen::MatrixXd chain_mass(const LumpedChainModel& chain);

/// Spring-force recovery: row j of the result is the per-mode force shape of
/// spring j, k_j * (phi_right - phi_left) with ground displacements zero.
/// shapes is N x Nr (one displacement shape per column).
Eigen::MatrixXd chain_stress_shapes(const LumpedChainModel& chain, const Eigen::MatrixXd& shapes);

/// Solves the chain and assembles a ModalModel with the first num_modes
/// elastic modes, uniform damping, unit force inputs at input_dofs, and one
/// node per spring (Nsigma = 1, ids starting at 1).
ModalModel chain_to_modal_model(const LumpedChainModel& chain, int num_modes, double zeta,
                                const std::vector<int>& input_dofs);

}  // namespace modalstats
