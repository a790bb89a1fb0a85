#pragma once

#include <cstdint>

#include "modalstats/modal.hpp"

namespace modalstats {

/// Deterministic random model for benchmarks and large-scale checks:
/// modal frequencies spread over [f_lo, f_hi] Hz, moderate damping, random
/// participation and nodal stress shapes. Node ids start at 1.
ModalModel make_synthetic_model(int num_nodes, int num_modes, int num_stress_components,
                                int num_inputs, std::uint64_t seed, double f_lo = 30.0,
                                double f_hi = 400.0);

}  // namespace modalstats
