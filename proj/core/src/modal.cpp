#include "modalstats/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modalstats/errors.hpp"

namespace modalstats {

void ModalModel::validate() const {
  const int nr = num_modes();
  if (nr < 1) throw invalid_input_error("modal_model: need at least one mode");
  if (zeta.size() != nr || modal_mass.size() != nr || participation.rows() != nr)
    throw invalid_input_error("modal_model: per-mode array sizes disagree");
  for (int r = 0; r < nr; ++r) {
    if (!(omega0(r) > 0.0) || !std::isfinite(omega0(r)))
      throw invalid_input_error("modal_model: omega0 must be positive and finite");
    if (r > 0 && omega0(r) < omega0(r - 1))
      throw invalid_input_error("modal_model: omega0 must be ascending");
    if (!(zeta(r) > 0.0 && zeta(r) < 1.0))
      throw invalid_input_error("modal_model: zeta must be in (0,1)");
    if (!(modal_mass(r) > 0.0) || !std::isfinite(modal_mass(r)))
      throw invalid_input_error("modal_model: modal mass must be positive and finite");
  }
  if (!participation.allFinite())
    throw invalid_input_error("modal_model: non-finite participation entry");
  const int ns = num_stress_components();
  for (const auto& n : nodes) {
    if (static_cast<int>(n.stress_shape.rows()) != ns || n.stress_shape.cols() != nr)
      throw invalid_input_error("modal_model: node stress shape dimensions disagree");
    if (!n.stress_shape.allFinite())
      throw invalid_input_error("modal_model: non-finite stress shape entry");
  }
}

const ModalModel::Node& ModalModel::node_by_id(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw invalid_input_error("modal_model: unknown node id " + std::to_string(id));
}

std::complex<double> sdof_compliance(double modal_mass, double omega0, double zeta, double omega) {
  const std::complex<double> denom =
      modal_mass * std::complex<double>(omega0 * omega0 - omega * omega,
                                        2.0 * zeta * omega0 * omega);
  if (denom == std::complex<double>(0.0, 0.0))
    throw numerical_error("sdof_compliance: undamped resonance singularity");
  return 1.0 / denom;
}

Eigen::MatrixXcd sdof_frf(const ModalModel& model, const Eigen::VectorXd& freqs_hz) {
  const int nr = model.num_modes();
  const Eigen::Index nf = freqs_hz.size();
  for (Eigen::Index k = 0; k < nf; ++k) {
    if (freqs_hz(k) < 0.0) throw invalid_input_error("sdof_frf: negative frequency");
    if (k > 0 && freqs_hz(k) <= freqs_hz(k - 1))
      throw invalid_input_error("sdof_frf: frequency grid must be ascending");
  }
  Eigen::MatrixXcd H(nf, nr);
  for (Eigen::Index k = 0; k < nf; ++k) {
    const double omega = 2.0 * std::numbers::pi * freqs_hz(k);
    for (int r = 0; r < nr; ++r)
      H(k, r) = sdof_compliance(model.modal_mass(r), model.omega0(r), model.zeta(r), omega);
  }
  return H;
}

std::vector<Eigen::MatrixXcd> frf_x_to_q(const ModalModel& model,
                                         const Eigen::VectorXd& freqs_hz) {
  const Eigen::MatrixXcd H = sdof_frf(model, freqs_hz);
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(freqs_hz.size()));
  for (Eigen::Index k = 0; k < freqs_hz.size(); ++k)
    out.push_back(H.row(k).asDiagonal() * model.participation);
  return out;
}

std::vector<Eigen::MatrixXcd> frf_x_to_stress(const ModalModel& model, int node_id,
                                              const Eigen::VectorXd& freqs_hz) {
  const auto& node = model.node_by_id(node_id);
  auto hq = frf_x_to_q(model, freqs_hz);
  for (auto& m : hq) m = node.stress_shape * m;
  return hq;
}

EigenSolution eigen_solve(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M) {
  const Eigen::Index n = K.rows();
  if (K.cols() != n || M.rows() != n || M.cols() != n)
    throw invalid_input_error("eigen_solve: K and M must be square of equal size");
  const double k_scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  const double m_scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10 * k_scale)
    throw invalid_input_error("eigen_solve: stiffness matrix not symmetric");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * m_scale)
    throw invalid_input_error("eigen_solve: mass matrix not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw invalid_input_error("eigen_solve: mass matrix not positive definite");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, M);
  if (solver.info() != Eigen::Success)
    throw numerical_error("eigen_solve: eigensolver failed to converge");

  Eigen::VectorXd lambda = solver.eigenvalues();
  const double tol = 1e-8 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda.minCoeff() < -tol)
    throw invalid_input_error("eigen_solve: stiffness matrix not positive semi-definite");

  EigenSolution sol;
  sol.omega0.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) sol.omega0(i) = std::sqrt(std::max(0.0, lambda(i)));
  sol.shapes = solver.eigenvectors();  // mass-normalized, ascending eigenvalues
  return sol;
}

void LumpedChainModel::validate() const {
  if (masses.empty()) throw invalid_input_error("chain: need at least one mass");
  if (static_cast<int>(stiffnesses.size()) != num_springs())
    throw invalid_input_error("chain: stiffness count must match spring count");
  for (double m : masses)
    if (!(m > 0.0)) throw invalid_input_error("chain: masses must be positive");
  for (double k : stiffnesses)
    if (!(k > 0.0)) throw invalid_input_error("chain: stiffnesses must be positive");
}

Eigen::MatrixXd chain_stiffness(const LumpedChainModel& chain) {
  chain.validate();
  const int n = chain.num_masses();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  int spring = 0;
  if (chain.clamped_left) K(0, 0) += chain.stiffnesses[static_cast<std::size_t>(spring++)];
  for (int i = 0; i + 1 < n; ++i, ++spring) {
    const double k = chain.stiffnesses[static_cast<std::size_t>(spring)];
    K(i, i) += k;
    K(i + 1, i + 1) += k;
    K(i, i + 1) -= k;
    K(i + 1, i) -= k;
  }
  if (chain.clamped_right)
    K(n - 1, n - 1) += chain.stiffnesses[static_cast<std::size_t>(spring)];
  return K;
}

Eigen::MatrixXd chain_mass(const LumpedChainModel& chain) {
  chain.validate();
  const int n = chain.num_masses();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = chain.masses[static_cast<std::size_t>(i)];
  return M;
}

Eigen::MatrixXd chain_stress_shapes(const LumpedChainModel& chain, const Eigen::MatrixXd& shapes) {
  chain.validate();
  const int n = chain.num_masses();
  if (shapes.rows() != n)
    throw invalid_input_error("chain_stress_shapes: shape rows must match mass count");
  const int nr = static_cast<int>(shapes.cols());
  Eigen::MatrixXd forces(chain.num_springs(), nr);
  int spring = 0;
  if (chain.clamped_left) {
    forces.row(spring) = chain.stiffnesses[static_cast<std::size_t>(spring)] * shapes.row(0);
    ++spring;
  }
  for (int i = 0; i + 1 < n; ++i, ++spring)
    forces.row(spring) = chain.stiffnesses[static_cast<std::size_t>(spring)] *
                         (shapes.row(i + 1) - shapes.row(i));
  if (chain.clamped_right)
    forces.row(spring) = -chain.stiffnesses[static_cast<std::size_t>(spring)] * shapes.row(n - 1);
  return forces;
}

ModalModel chain_to_modal_model(const LumpedChainModel& chain, int num_modes, double zeta,
                                const std::vector<int>& input_dofs) {
  chain.validate();
  if (!(zeta > 0.0 && zeta < 1.0))
    throw invalid_input_error("chain_to_modal_model: zeta must be in (0,1)");
  if (input_dofs.empty())
    throw invalid_input_error("chain_to_modal_model: need at least one input DOF");
  const int n = chain.num_masses();
  for (int dof : input_dofs)
    if (dof < 0 || dof >= n)
      throw invalid_input_error("chain_to_modal_model: input DOF out of range");

  const EigenSolution sol = eigen_solve(chain_stiffness(chain), chain_mass(chain));
  // skip rigid-body modes
  int first = 0;
  const double rigid_tol = 1e-6 * sol.omega0.maxCoeff();
  while (first < n && sol.omega0(first) <= rigid_tol) ++first;
  if (num_modes < 1 || num_modes > n - first)
    throw invalid_input_error("chain_to_modal_model: requested mode count exceeds elastic modes");

  ModalModel model;
  model.name = "chain";
  model.omega0 = sol.omega0.segment(first, num_modes);
  model.zeta = Eigen::VectorXd::Constant(num_modes, zeta);
  model.modal_mass = Eigen::VectorXd::Ones(num_modes);
  const Eigen::MatrixXd shapes = sol.shapes.middleCols(first, num_modes);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, static_cast<int>(input_dofs.size()));
  for (std::size_t j = 0; j < input_dofs.size(); ++j)
    A(input_dofs[j], static_cast<Eigen::Index>(j)) = 1.0;
  model.participation = shapes.transpose() * A;

  const Eigen::MatrixXd forces = chain_stress_shapes(chain, shapes);
  model.nodes.resize(static_cast<std::size_t>(forces.rows()));
  for (int j = 0; j < forces.rows(); ++j) {
    auto& node = model.nodes[static_cast<std::size_t>(j)];
    node.id = j + 1;
    node.coords = {static_cast<double>(j), 0.0, 0.0};
    node.stress_shape = forces.row(j);
  }
  model.validate();
  return model;
}

}  // namespace modalstats
