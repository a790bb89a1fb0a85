#include "modalstats/spectra.hpp"

#include <cmath>
#include <numbers>

#include "modalstats/errors.hpp"
#include "modalstats/fft.hpp"

namespace modalstats {

namespace {

std::vector<double> make_window(Window window, Eigen::Index length) {
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  if (window == Window::hann) {
    // periodic Hann
    for (Eigen::Index i = 0; i < length; ++i)
      w[static_cast<std::size_t>(i)] =
          0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(length)));
  }
  return w;
}

}  // namespace

SpectrumMatrix psd_matrix(const TimeSeriesSet& set, const WelchParams& params) {
  const Eigen::Index N = set.num_samples();
  const Eigen::Index L = params.segment_length;
  const int U = set.num_channels();
  if (L < 2) throw invalid_input_error("psd_matrix: segment length must be >= 2");
  if (L > N) throw invalid_input_error("psd_matrix: segment longer than series");
  if (params.overlap_fraction < 0.0 || params.overlap_fraction >= 1.0)
    throw invalid_input_error("psd_matrix: overlap fraction must be in [0,1)");

  Eigen::Index hop = static_cast<Eigen::Index>(
      std::llround(static_cast<double>(L) * (1.0 - params.overlap_fraction)));
  if (hop < 1) hop = 1;
  const Eigen::Index num_segments = (N - L) / hop + 1;

  const std::vector<double> w = make_window(params.window, L);
  double wss = 0.0;
  for (double v : w) wss += v * v;

  const double fs = set.fs();
  const Eigen::Index nb = L / 2 + 1;
  const bool has_nyquist = (L % 2 == 0);

  SpectrumMatrix out;
  out.freqs.resize(nb);
  for (Eigen::Index k = 0; k < nb; ++k)
    out.freqs(k) = static_cast<double>(k) * fs / static_cast<double>(L);
  out.bins.assign(static_cast<std::size_t>(nb), Eigen::MatrixXcd::Zero(U, U));

  Eigen::MatrixXcd spec(nb, U);
  std::vector<double> seg(static_cast<std::size_t>(L));
  for (Eigen::Index s = 0; s < num_segments; ++s) {
    const Eigen::Index t0 = s * hop;
    for (int u = 0; u < U; ++u) {
      Eigen::Map<Eigen::VectorXd> m(seg.data(), L);
      m = set.data().col(u).segment(t0, L);
      const double seg_mean = m.mean();
      for (Eigen::Index i = 0; i < L; ++i)
        seg[static_cast<std::size_t>(i)] =
            (seg[static_cast<std::size_t>(i)] - seg_mean) * w[static_cast<std::size_t>(i)];
      auto half = rfft(seg);
      for (Eigen::Index k = 0; k < nb; ++k) spec(k, u) = half[static_cast<std::size_t>(k)];
    }
    for (Eigen::Index k = 0; k < nb; ++k)
      out.bins[static_cast<std::size_t>(k)] +=
          spec.row(k).transpose() * spec.row(k).conjugate();
  }

  const double base_scale = 1.0 / (static_cast<double>(num_segments) * fs * wss);
  for (Eigen::Index k = 0; k < nb; ++k) {
    double scale = base_scale;
    const bool is_dc = (k == 0);
    const bool is_nyq = has_nyquist && (k == nb - 1);
    if (!is_dc && !is_nyq) scale *= 2.0;
    auto& m = out.bins[static_cast<std::size_t>(k)];
    m *= scale;
    // enforce exact Hermitian symmetry and real diagonal
    for (int u = 0; u < U; ++u) {
      m(u, u) = std::complex<double>(m(u, u).real(), 0.0);
      for (int v = u + 1; v < U; ++v) m(v, u) = std::conj(m(u, v));
    }
  }
  return out;
}

Eigen::MatrixXd integrate_to_covariance(const SpectrumMatrix& spectrum) {
  const Eigen::Index nb = spectrum.num_bins();
  if (nb == 0 || spectrum.bins.empty())
    throw invalid_input_error("integrate_to_covariance: empty frequency grid");
  const int U = spectrum.num_channels();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(U, U);
  for (Eigen::Index k = 0; k + 1 < nb; ++k) {
    const double df = spectrum.freqs(k + 1) - spectrum.freqs(k);
    cov += 0.5 * df *
           (spectrum.bins[static_cast<std::size_t>(k)].real() +
            spectrum.bins[static_cast<std::size_t>(k + 1)].real());
  }
  return cov;
}

}  // namespace modalstats
