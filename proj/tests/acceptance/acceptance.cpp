// Acceptance suite: end-to-end checks of the library's headline guarantees,
// one printed pass/fail line each. Returns the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "modalstats/loadgen.hpp"
#include "modalstats/modal.hpp"
#include "modalstats/response.hpp"
#include "modalstats/rotation.hpp"
#include "modalstats/sigstats.hpp"
#include "modalstats/spectra.hpp"
#include "modalstats/synthetic.hpp"
#include "modalstats/tensor4.hpp"

using namespace modalstats;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// The documented sine-on-random loading: fs = 2000 Hz, sigma = 10, A = 22,
// 150-300 Hz at 1 oct/min.
TimeSeriesSet reference_load(double duration, int channels, std::uint64_t seed,
                             double amplitude = 22.0) {
  NoiseSpec noise;
  noise.sigma = 10.0;
  noise.fs = 2000.0;
  noise.duration = duration;
  noise.seed = seed;
  SweepSpec sweep;
  sweep.amplitude = amplitude;
  sweep.f_start = 150.0;
  sweep.f_end = 300.0;
  sweep.rate_oct_per_min = 1.0;
  sweep.fs = 2000.0;
  sweep.duration = duration;
  return sine_on_random_set(noise, sweep, channels, amplitude > 0.0);
}

// Ten-mass uniform clamped chain with eight retained modes and two inputs.
ModalModel reference_chain(double zeta = 0.05) {
  LumpedChainModel chain;
  chain.masses.assign(10, 1.0);
  chain.stiffnesses.assign(11, 1.0e6);
  return chain_to_modal_model(chain, 8, zeta, {0, 5});
}

void criterion_input_kurtosis() {
  const auto t0 = clock_type::now();
  const TimeSeriesSet load = reference_load(120.0, 1, 1);
  const double beta = kurtosis(load.channel_series(0));
  const double elapsed = seconds_since(t0);
  report(1, "input kurtosis of the sine-on-random load", beta >= 2.22 && beta <= 2.28 &&
             elapsed < 5.0,
         fmt("beta=%.4f, %.2fs", beta, elapsed));
}

void criterion_limit_kurtoses() {
  SweepSpec sine;
  sine.amplitude = 1.0;
  sine.f_start = 200.0;
  sine.f_end = 200.0;
  sine.fs = 2000.0;
  sine.duration = 10.0;  // 2000 full cycles
  const double beta_sine = kurtosis(sine_sweep(sine));

  NoiseSpec noise;
  noise.sigma = 1.0;
  noise.fs = 2000.0;
  noise.duration = 524.288;  // 2^20 samples
  noise.seed = 2;
  const double beta_noise = kurtosis(gaussian_noise(noise));

  report(2, "limit kurtoses of sine and Gaussian noise",
         std::abs(beta_sine - 1.5) <= 0.005 && std::abs(beta_noise - 3.0) <= 0.1,
         fmt("sine beta=%.5f, noise beta=%.4f", beta_sine, beta_noise));
}

void criterion_path_equivalence() {
  const auto t0 = clock_type::now();
  const ModalModel model = reference_chain();
  const TimeSeriesSet loads = reference_load(120.0, 2, 3);

  FieldOptions options;
  options.with_rotation = false;
  const auto field = field_analysis(model, loads, options);

  double max_dev = 0.0;
  for (const auto& node : field) {
    const DirectResponse resp = direct_response_oracle(model, loads, node.node_id);
    const double beta_direct = kurtosis(resp.via_modes.channel_series(0));
    max_dev = std::max(max_dev, std::abs(node.beta(0) - beta_direct) / std::abs(beta_direct));
  }
  const double elapsed = seconds_since(t0);
  report(3, "mode-shape-scaled kurtosis equals the direct path on every spring",
         max_dev < 1e-8 && elapsed < 10.0,
         fmt("max rel deviation=%.2e over %zu springs, %.2fs", max_dev, field.size(), elapsed));
}

void criterion_gaussian_closure() {
  const ModalModel model = make_synthetic_model(60, 8, 3, 2, 11);
  const TimeSeriesSet loads = reference_load(500.0, 2, 4, /*amplitude=*/0.0);

  FieldOptions options;
  options.with_rotation = false;
  const auto field = field_analysis(model, loads, options);

  double worst_ratio = 0.0;
  for (const auto& node : field) {
    double max_stat = 0.0;
    for (double v : node.m4_stat.raw()) max_stat = std::max(max_stat, std::abs(v));
    for (std::size_t p = 0; p < node.c4.size(); ++p) {
      const double stat = std::abs(node.m4_stat.raw()[p]);
      if (stat <= 0.01 * max_stat) continue;
      worst_ratio = std::max(worst_ratio, std::abs(node.c4.raw()[p]) / stat);
    }
  }
  report(4, "Gaussian loads leave no fourth-order cumulant", worst_ratio < 0.05,
         fmt("max |c4|/mu4_stat=%.4f over 60 nodes", worst_ratio));
}

void criterion_psd_consistency() {
  const ModalModel model = reference_chain();
  const TimeSeriesSet loads = reference_load(120.0, 2, 5);
  const int node_id = 6;

  // Welch path: load PSD -> modal PSD -> stress PSD -> covariance
  const SpectrumMatrix g2x = psd_matrix(loads, {8192, 0.5, Window::hann});
  const SpectrumMatrix g2q = modal_psd(model, g2x);
  const SpectrumMatrix g2s = stress_psd_from_modal(model, node_id, g2q);
  const double var_welch = integrate_to_covariance(g2s)(0, 0);

  const ModalSolution sol = modal_solution(model, loads);
  const Eigen::MatrixXd cov_q = covariance_matrix(sol.q);
  const double var_direct = scale_cov_to_node(cov_q, model.node_by_id(node_id).stress_shape)(0, 0);
  const double welch_dev = std::abs(var_welch - var_direct) / var_direct;

  // exact Parseval on the stress series with one rectangular segment
  const DirectResponse resp = direct_response_oracle(model, loads, node_id);
  WelchParams rect;
  rect.segment_length = resp.via_modes.num_samples();
  rect.overlap_fraction = 0.0;
  rect.window = Window::rectangular;
  const double var_rect = integrate_to_covariance(psd_matrix(resp.via_modes, rect))(0, 0);
  const double var_series = covariance_matrix(resp.via_modes)(0, 0);
  const double parseval_dev = std::abs(var_rect - var_series) / var_series;

  // Braccesi shortcut equals the direct-FRF PSD bin by bin
  const SpectrumMatrix g2s_direct = stress_psd_direct(model, node_id, g2x);
  double max_bin_dev = 0.0;
  for (std::size_t k = 0; k < g2s.bins.size(); ++k) {
    const double scale = std::max(g2s_direct.bins[k].cwiseAbs().maxCoeff(), 1e-300);
    max_bin_dev = std::max(
        max_bin_dev, (g2s.bins[k] - g2s_direct.bins[k]).cwiseAbs().maxCoeff() / scale);
  }

  report(5, "spectral and time-domain second-order statistics agree",
         welch_dev < 0.03 && parseval_dev < 1e-6 && max_bin_dev < 1e-10,
         fmt("welch dev=%.4f, parseval dev=%.2e, modal-vs-direct psd dev=%.2e", welch_dev,
             parseval_dev, max_bin_dev));
}

void criterion_voigt_norm() {
  Xoshiro256pp rng(6);
  double worst = 0.0;
  int count = 0;
  for (int U : {2, 3, 6, 8}) {
    for (int trial = 0; trial < 25; ++trial) {
      MomentTensor4 t(U);
      for (int i = 0; i < U; ++i)
        for (int j = i; j < U; ++j)
          for (int k = j; k < U; ++k)
            for (int l = k; l < U; ++l) t(i, j, k, l) = 2.0 * rng.uniform01() - 1.0;
      t.symmetrize_from_canonical();
      const VoigtTensor4 norm = voigt_normalize(voigt_project(t));
      worst = std::max(worst,
                       std::abs(norm.M.norm() - t.frobenius_norm()) / t.frobenius_norm());
      ++count;
    }
  }
  report(6, "normalized Voigt projection preserves the tensor norm", worst < 1e-12,
         fmt("max rel deviation=%.2e over %d tensors", worst, count));
}

void criterion_rotation_invariants() {
  const ModalModel model = make_synthetic_model(8, 8, 3, 2, 7);
  const TimeSeriesSet loads = reference_load(60.0, 2, 8);
  FieldOptions options;
  options.with_rotation = false;
  const auto field = field_analysis(model, loads, options);

  double worst_trace = 0.0, worst_quartic = 0.0;
  double worst_angle_shift = 0.0;
  const RotationSweep coarse{2.0};
  const RotationSweep fine{1.0};
  for (const auto& node : field) {
    const double trace0 = normal_trace_variance(node.cov);
    const double mandel0 = tensor_trace_variance(node.cov);
    const double quartic0 = contracted_m4_invariant(node.m4);
    for (double alpha : coarse.angles_deg()) {
      const Eigen::MatrixXd rc = rotate_cov(node.cov, alpha);
      worst_trace = std::max(worst_trace,
                             std::abs(normal_trace_variance(rc) - trace0) / std::abs(trace0));
      worst_trace = std::max(worst_trace,
                             std::abs(tensor_trace_variance(rc) - mandel0) / std::abs(mandel0));
      worst_quartic = std::max(worst_quartic,
                               std::abs(contracted_m4_invariant(rotate_m4(node.m4, alpha)) -
                                        quartic0) /
                                   std::abs(quartic0));
    }
    const CriticalPlaneSummary a = critical_plane(node.cov, node.m4, coarse);
    const CriticalPlaneSummary b = critical_plane(node.cov, node.m4, fine);
    auto circ = [](double x, double y) {
      const double d = std::abs(x - y);
      return std::min(d, 180.0 - d);
    };
    worst_angle_shift = std::max({worst_angle_shift,
                                  circ(a.mu2.normal_angle_deg, b.mu2.normal_angle_deg),
                                  circ(a.mu4.normal_angle_deg, b.mu4.normal_angle_deg),
                                  circ(a.mu4.shear_angle_deg, b.mu4.shear_angle_deg)});
  }
  report(7, "rotation sweep preserves the tensor invariants",
         worst_trace < 1e-10 && worst_quartic < 1e-10 && worst_angle_shift <= 2.0,
         fmt("trace dev=%.2e, contracted-m4 dev=%.2e, argmax shift=%.1f deg", worst_trace,
             worst_quartic, worst_angle_shift));
}

void criterion_performance() {
  const ModalModel model = make_synthetic_model(8000, 8, 3, 2, 9);
  const TimeSeriesSet loads = reference_load(60.0, 2, 10);

  FieldOptions options;  // rotation sweep on, 2 degrees -> 90 angles
  const auto t0 = clock_type::now();
  const FieldRunStats stats_short =
      field_analysis(model, loads, options, [](NodalFieldResult&&) {});
  const double total = seconds_since(t0);

  const TimeSeriesSet loads_long = reference_load(480.0, 2, 10);
  FieldRunStats stats_long;
  field_analysis(model, loads_long, options, &stats_long);
  const double ratio = stats_long.seconds_nodes / stats_short.seconds_nodes;

  report(8, "field analysis scales to the full model",
         total <= 10.0 && ratio < 1.5,
         fmt("8000 nodes with 90-angle sweep in %.2fs, per-node time ratio (8x samples)=%.2f",
             total, ratio));
}

void criterion_eigensolver() {
  const int n = 10;
  LumpedChainModel chain;
  chain.masses.assign(n, 1.0);
  chain.stiffnesses.assign(n + 1, 1.0e6);
  const Eigen::MatrixXd K = chain_stiffness(chain);
  const Eigen::MatrixXd M = chain_mass(chain);
  const EigenSolution sol = eigen_solve(K, M);

  double worst_freq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double expected = 2.0 * std::sqrt(1.0e6) * std::sin((j + 1) * M_PI / (2.0 * (n + 1)));
    worst_freq = std::max(worst_freq, std::abs(sol.omega0(j) - expected) / expected);
  }
  const double ortho = (sol.shapes.transpose() * M * sol.shapes -
                        Eigen::MatrixXd::Identity(n, n))
                           .cwiseAbs()
                           .maxCoeff();
  report(9, "chain eigensolution matches the closed-form spectrum",
         worst_freq < 1e-8 && ortho < 1e-8,
         fmt("max freq dev=%.2e, max orthogonality dev=%.2e", worst_freq, ortho));
}

}  // namespace

int main() {
  criterion_input_kurtosis();
  criterion_limit_kurtoses();
  criterion_path_equivalence();
  criterion_gaussian_closure();
  criterion_psd_consistency();
  criterion_voigt_norm();
  criterion_rotation_invariants();
  criterion_performance();
  criterion_eigensolver();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "SUCCESS" : "FAILURE", failures);
  return failures;
}
