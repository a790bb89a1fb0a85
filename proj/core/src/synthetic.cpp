#include "modalstats/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "modalstats/errors.hpp"
#include "modalstats/loadgen.hpp"

namespace modalstats {

ModalModel make_synthetic_model(int num_nodes, int num_modes, int num_stress_components,
                                int num_inputs, std::uint64_t seed, double f_lo, double f_hi) {
  if (num_nodes < 1 || num_modes < 1 || num_stress_components < 1 || num_inputs < 1)
    throw invalid_input_error("synthetic_model: all dimensions must be >= 1");
  if (!(f_lo > 0.0 && f_hi > f_lo))
    throw invalid_input_error("synthetic_model: need 0 < f_lo < f_hi");

  GaussianDraw draw(seed);
  Xoshiro256pp rng(seed ^ 0x5eedULL);

  ModalModel model;
  model.name = "synthetic";
  model.omega0.resize(num_modes);
  model.zeta.resize(num_modes);
  model.modal_mass = Eigen::VectorXd::Ones(num_modes);

  // log-spaced frequencies with jitter, kept ascending
  const double lr = std::log(f_hi / f_lo);
  for (int r = 0; r < num_modes; ++r) {
    const double base = num_modes == 1 ? 0.5 : static_cast<double>(r) / (num_modes - 1);
    const double jitter = 0.4 * (rng.uniform01() - 0.5) / std::max(1, num_modes - 1);
    const double f = f_lo * std::exp(lr * std::clamp(base + jitter, 0.0, 1.0));
    model.omega0(r) = 2.0 * std::numbers::pi * f;
    model.zeta(r) = 0.05 + 0.04 * rng.uniform01();
  }
  std::sort(model.omega0.data(), model.omega0.data() + num_modes);

  model.participation.resize(num_modes, num_inputs);
  for (int r = 0; r < num_modes; ++r)
    for (int u = 0; u < num_inputs; ++u) model.participation(r, u) = draw.next();

  model.nodes.resize(static_cast<std::size_t>(num_nodes));
  for (int i = 0; i < num_nodes; ++i) {
    auto& node = model.nodes[static_cast<std::size_t>(i)];
    node.id = i + 1;
    node.coords = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    node.stress_shape.resize(num_stress_components, num_modes);
    for (int s = 0; s < num_stress_components; ++s)
      for (int r = 0; r < num_modes; ++r) node.stress_shape(s, r) = draw.next();
  }
  model.validate();
  return model;
}

}  // namespace modalstats
