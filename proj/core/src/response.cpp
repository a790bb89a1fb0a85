#include "modalstats/response.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "modalstats/errors.hpp"
#include "modalstats/fft.hpp"
#include "modalstats/parallel.hpp"
#include "modalstats/sigstats.hpp"

namespace modalstats {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::size_t padded_length(Eigen::Index n, PaddingPolicy padding) {
  if (padding == PaddingPolicy::none) return static_cast<std::size_t>(n);
  return next_pow2(2 * static_cast<std::size_t>(n));
}

/// Applies a per-mode SDOF filter in the frequency domain. The Nyquist bin
/// multiplier is reduced to its real part, which is what a real sampled
/// impulse response implies.
std::vector<double> filter_sdof(const std::vector<double>& x, double fs, double modal_mass,
                                double omega0, double zeta) {
  const std::size_t m = x.size();
  auto half = rfft(x);
  const double df = fs / static_cast<double>(m);
  for (std::size_t k = 0; k < half.size(); ++k) {
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) * df;
    std::complex<double> h = sdof_compliance(modal_mass, omega0, zeta, omega);
    if (m % 2 == 0 && k == half.size() - 1) h = h.real();
    half[k] *= h;
  }
  return irfft(half, m);
}

void hermitianize(Eigen::MatrixXcd& m) {
  const Eigen::Index u = m.rows();
  for (Eigen::Index i = 0; i < u; ++i) {
    m(i, i) = std::complex<double>(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < u; ++j) m(j, i) = std::conj(m(i, j));
  }
}

}  // namespace

ModalSolution modal_solution(const ModalModel& model, const TimeSeriesSet& loads,
                             PaddingPolicy padding) {
  model.validate();
  if (loads.num_channels() != model.num_inputs())
    throw invalid_input_error("modal_solution: load channel count must match model inputs");

  ModalSolution out;
  out.model_name = model.name;
  const double f_max = model.omega0.maxCoeff() / (2.0 * std::numbers::pi);
  if (loads.fs() / 2.0 < 1.5 * f_max)
    out.warnings.push_back("sampling rate low: Nyquist below 1.5x the highest modal frequency");

  const Eigen::Index n = loads.num_samples();
  const int nr = model.num_modes();
  const std::size_t m = padded_length(n, padding);

  // project loads onto the modes once, then run one SDOF filter per mode
  const Eigen::MatrixXd projected = loads.data() * model.participation.transpose();  // N x Nr

  Eigen::MatrixXd q(n, nr);
  std::vector<double> padded(m, 0.0);
  for (int r = 0; r < nr; ++r) {
    std::fill(padded.begin(), padded.end(), 0.0);
    Eigen::Map<Eigen::VectorXd>(padded.data(), n) = projected.col(r);
    const std::vector<double> y =
        filter_sdof(padded, loads.fs(), model.modal_mass(r), model.omega0(r), model.zeta(r));
    q.col(r) = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  }
  out.q = TimeSeriesSet(std::move(q), loads.dt());
  return out;
}

Eigen::MatrixXd scale_cov_to_node(const Eigen::MatrixXd& cov_q,
                                  const Eigen::MatrixXd& stress_shape) {
  if (stress_shape.cols() != cov_q.rows() || cov_q.rows() != cov_q.cols())
    throw invalid_input_error("scale_cov_to_node: dimension mismatch");
  return stress_shape * cov_q * stress_shape.transpose();
}

MomentTensor4 scale_m4_to_node(const MomentTensor4& m4_q, const Eigen::MatrixXd& stress_shape) {
  return contract_all_indices(m4_q, stress_shape);
}

SpectrumMatrix modal_psd(const ModalModel& model, const SpectrumMatrix& g2x) {
  model.validate();
  if (g2x.num_channels() != model.num_inputs())
    throw invalid_input_error("modal_psd: load PSD channel count must match model inputs");
  const auto hq = frf_x_to_q(model, g2x.freqs);
  SpectrumMatrix out;
  out.freqs = g2x.freqs;
  out.bins.resize(g2x.bins.size());
  for (std::size_t k = 0; k < g2x.bins.size(); ++k) {
    out.bins[k] = hq[k] * g2x.bins[k] * hq[k].adjoint();
    hermitianize(out.bins[k]);
  }
  return out;
}

SpectrumMatrix modal_psd(const ModalModel& model, const TimeSeriesSet& loads,
                         const WelchParams& welch) {
  return modal_psd(model, psd_matrix(loads, welch));
}

SpectrumMatrix stress_psd_from_modal(const ModalModel& model, int node_id,
                                     const SpectrumMatrix& g2q) {
  if (g2q.num_channels() != model.num_modes())
    throw invalid_input_error("stress_psd_from_modal: grid channel count must match mode count");
  const Eigen::MatrixXd& shape = model.node_by_id(node_id).stress_shape;
  SpectrumMatrix out;
  out.freqs = g2q.freqs;
  out.bins.resize(g2q.bins.size());
  for (std::size_t k = 0; k < g2q.bins.size(); ++k) {
    out.bins[k] = shape * g2q.bins[k] * shape.transpose();
    hermitianize(out.bins[k]);
  }
  return out;
}

SpectrumMatrix stress_psd_direct(const ModalModel& model, int node_id,
                                 const SpectrumMatrix& g2x) {
  if (g2x.num_channels() != model.num_inputs())
    throw invalid_input_error("stress_psd_direct: load PSD channel count must match model inputs");
  const auto hxs = frf_x_to_stress(model, node_id, g2x.freqs);
  SpectrumMatrix out;
  out.freqs = g2x.freqs;
  out.bins.resize(g2x.bins.size());
  for (std::size_t k = 0; k < g2x.bins.size(); ++k) {
    out.bins[k] = hxs[k] * g2x.bins[k] * hxs[k].adjoint();
    hermitianize(out.bins[k]);
  }
  return out;
}

DirectResponse direct_response_oracle(const ModalModel& model, const TimeSeriesSet& loads,
                                      int node_id, PaddingPolicy padding) {
  const auto& node = model.node_by_id(node_id);
  const int ns = static_cast<int>(node.stress_shape.rows());
  const Eigen::Index n = loads.num_samples();
  const std::size_t m = padded_length(n, padding);
  const double fs = loads.fs();

  // path via FRF: filter the raw loads through H^(x sigma) per component
  std::vector<std::vector<std::complex<double>>> load_spectra(
      static_cast<std::size_t>(loads.num_channels()));
  std::vector<double> padded(m, 0.0);
  for (int u = 0; u < loads.num_channels(); ++u) {
    std::fill(padded.begin(), padded.end(), 0.0);
    Eigen::Map<Eigen::VectorXd>(padded.data(), n) = loads.data().col(u);
    load_spectra[static_cast<std::size_t>(u)] = rfft(padded);
  }
  const std::size_t nb = load_spectra.front().size();
  const double df = fs / static_cast<double>(m);

  Eigen::MatrixXd via_frf(n, ns);
  std::vector<std::complex<double>> acc(nb);
  for (int s = 0; s < ns; ++s) {
    std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t k = 0; k < nb; ++k) {
      const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) * df;
      for (int u = 0; u < loads.num_channels(); ++u) {
        std::complex<double> h = 0.0;
        for (int r = 0; r < model.num_modes(); ++r)
          h += node.stress_shape(s, r) *
               sdof_compliance(model.modal_mass(r), model.omega0(r), model.zeta(r), omega) *
               model.participation(r, u);
        if (m % 2 == 0 && k == nb - 1) h = h.real();
        acc[k] += h * load_spectra[static_cast<std::size_t>(u)][k];
      }
    }
    const std::vector<double> y = irfft(acc, m);
    via_frf.col(s) = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  }

  // path via modes: scale the modal solution by the local stress shape
  const ModalSolution sol = modal_solution(model, loads, padding);
  Eigen::MatrixXd via_modes = sol.q.data() * node.stress_shape.transpose();

  DirectResponse out{TimeSeriesSet(std::move(via_frf), loads.dt()),
                     TimeSeriesSet(std::move(via_modes), loads.dt())};
  return out;
}

NodalFieldResult node_statistics(const ModalModel::Node& node, const Eigen::MatrixXd& cov_q,
                                 const MomentTensor4& m4_q, const FieldOptions& options) {
  NodalFieldResult r;
  r.node_id = node.id;
  r.cov = scale_cov_to_node(cov_q, node.stress_shape);
  r.m4 = scale_m4_to_node(m4_q, node.stress_shape);
  r.m4_stat = isserlis_stationary(r.cov);
  r.c4 = r.m4 - r.m4_stat;

  const int ns = static_cast<int>(node.stress_shape.rows());
  r.beta.resize(ns);
  r.beta_defined.assign(static_cast<std::size_t>(ns), 1);
  for (int c = 0; c < ns; ++c) {
    const double v2 = r.cov(c, c);
    if (v2 > 0.0) {
      r.beta(c) = r.m4(c, c, c, c) / (v2 * v2);
    } else {
      r.beta(c) = 0.0;
      r.beta_defined[static_cast<std::size_t>(c)] = 0;
    }
  }

  if (options.with_rotation && ns == 3)
    r.critical_plane = modalstats::critical_plane(r.cov, r.m4, options.sweep);
  return r;
}

FieldRunStats field_analysis(const ModalModel& model, const TimeSeriesSet& loads,
                             const FieldOptions& options,
                             const std::function<void(NodalFieldResult&&)>& sink) {
  if (model.nodes.empty()) throw invalid_input_error("field_analysis: model has no nodes");
  options.sweep.validate();

  FieldRunStats stats;
  stats.threads = options.threads > 0 ? options.threads : default_threads();

  auto t0 = clock_type::now();
  const ModalSolution sol = modal_solution(model, loads, options.padding);
  stats.seconds_modal_solution = seconds_since(t0);

  t0 = clock_type::now();
  stats.cov_q = covariance_matrix(sol.q);
  stats.m4_q = moment4_tensor(sol.q);
  stats.seconds_modal_stats = seconds_since(t0);

  t0 = clock_type::now();
  const std::size_t count = model.nodes.size();
  std::vector<NodalFieldResult> results(count);
  parallel_for_chunks(count, stats.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      results[i] = node_statistics(model.nodes[i], stats.cov_q, stats.m4_q, options);
  });
  stats.seconds_nodes = seconds_since(t0);
  stats.nodes = static_cast<int>(count);

  for (auto& r : results) sink(std::move(r));
  return stats;
}

std::vector<NodalFieldResult> field_analysis(const ModalModel& model, const TimeSeriesSet& loads,
                                             const FieldOptions& options, FieldRunStats* stats) {
  std::vector<NodalFieldResult> out;
  out.reserve(model.nodes.size());
  FieldRunStats s = field_analysis(model, loads, options,
                                   [&](NodalFieldResult&& r) { out.push_back(std::move(r)); });
  if (stats) *stats = s;
  return out;
}

CriticalPlaneSummary critical_plane(const NodalFieldResult& node, const RotationSweep& sweep) {
  return critical_plane(node.cov, node.m4, sweep);
}

}  // namespace modalstats
