#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modalstats/modal.hpp"
#include "modalstats/rotation.hpp"
#include "modalstats/spectra.hpp"
#include "modalstats/tensor4.hpp"
#include "modalstats/time_series.hpp"

namespace modalstats {

/// Zero-padding for the frequency-domain solution. pow2_2x pads to the next
/// power of two of at least twice the record length, which pushes circular
/// wrap-around into the discarded tail; none keeps the exact circular
/// (periodic steady-state) solution.
enum class PaddingPolicy { pow2_2x, none };

/// Modal coordinate histories q(t), one channel per mode.
struct ModalSolution {
  TimeSeriesSet q;
  std::string model_name;
  std::vector<std::string> warnings;
};

/// Steady-state modal response q(t) = F^-1{ H(f) * Phi^(x) * X(f) } per mode.
/// A sampling rate with Nyquist below 1.5x the highest modal frequency is
/// reported as a warning, not an error.
ModalSolution modal_solution(const ModalModel& model, const TimeSeriesSet& loads,
                             PaddingPolicy padding = PaddingPolicy::pow2_2x);

/// Covariance congruence: stress_shape * cov_q * stress_shape^T.
Eigen::MatrixXd scale_cov_to_node(const Eigen::MatrixXd& cov_q,
                                  const Eigen::MatrixXd& stress_shape);

/// Rank-4 moment contraction with the stress shape on all four indices.
MomentTensor4 scale_m4_to_node(const MomentTensor4& m4_q, const Eigen::MatrixXd& stress_shape);

/// PSD of the modal coordinates from a load PSD matrix:
/// G2q(f) = Hxq(f) G2x(f) Hxq(f)^H per bin.
SpectrumMatrix modal_psd(const ModalModel& model, const SpectrumMatrix& g2x);

/// Overload estimating the load PSD with Welch first.
SpectrumMatrix modal_psd(const ModalModel& model, const TimeSeriesSet& loads,
                         const WelchParams& welch = {});

/// Stress PSD from the modal PSD (no frequency-dependent work beyond a
/// constant congruence): G2s(f) = shape * G2q(f) * shape^T.
SpectrumMatrix stress_psd_from_modal(const ModalModel& model, int node_id,
                                     const SpectrumMatrix& g2q);

/// Reference path: G2s(f) = Hxs(f) G2x(f) Hxs(f)^H with the per-node FRF.
SpectrumMatrix stress_psd_direct(const ModalModel& model, int node_id,
                                 const SpectrumMatrix& g2x);

/// Per-node stress series computed both ways for cross-validation: through
/// the per-node FRF (filtering the loads) and by scaling the modal solution.
struct DirectResponse {
  TimeSeriesSet via_frf;    // Nsigma channels
  TimeSeriesSet via_modes;  // Nsigma channels
};

DirectResponse direct_response_oracle(const ModalModel& model, const TimeSeriesSet& loads,
                                      int node_id, PaddingPolicy padding = PaddingPolicy::pow2_2x);

/// Per-node statistical characterization in global coordinates plus the
/// critical-plane sweep summary (plane-stress nodes only).
struct NodalFieldResult {
  int node_id = 0;
  Eigen::MatrixXd cov;      // Nsigma x Nsigma
  MomentTensor4 m4;
  MomentTensor4 m4_stat;
  MomentTensor4 c4;
  Eigen::VectorXd beta;     // per-component mu4 / mu2^2
  std::vector<std::uint8_t> beta_defined;
  std::optional<CriticalPlaneSummary> critical_plane;
};

struct FieldOptions {
  RotationSweep sweep{2.0};
  bool with_rotation = true;  // applied when Nsigma == 3
  int threads = 0;            // 0 = hardware concurrency
  PaddingPolicy padding = PaddingPolicy::pow2_2x;
};

/// Wall-clock breakdown of a field run; the frozen modal statistics are
/// included so callers can rerun per-node work without the pipeline.
struct FieldRunStats {
  double seconds_modal_solution = 0.0;
  double seconds_modal_stats = 0.0;
  double seconds_nodes = 0.0;
  int nodes = 0;
  int threads = 1;
  Eigen::MatrixXd cov_q;
  MomentTensor4 m4_q;
};

/// The per-node kernel: everything below is derived from the frozen modal
/// statistics and the node's stress shape only, never from the time series.
NodalFieldResult node_statistics(const ModalModel::Node& node, const Eigen::MatrixXd& cov_q,
                                 const MomentTensor4& m4_q, const FieldOptions& options);

/// Full pipeline: one modal solution, one modal statistics pass, then an
/// independent map over nodes streamed to the sink in node order.
FieldRunStats field_analysis(const ModalModel& model, const TimeSeriesSet& loads,
                             const FieldOptions& options,
                             const std::function<void(NodalFieldResult&&)>& sink);

/// Convenience overload collecting all results.
std::vector<NodalFieldResult> field_analysis(const ModalModel& model, const TimeSeriesSet& loads,
                                             const FieldOptions& options,
                                             FieldRunStats* stats = nullptr);

/// Critical-plane sweep of an already computed nodal result.
CriticalPlaneSummary critical_plane(const NodalFieldResult& node, const RotationSweep& sweep);

}  // namespace modalstats
