#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "modalstats/time_series.hpp"

namespace modalstats {

enum class Window { hann, rectangular };

struct WelchParams {
  Eigen::Index segment_length = 1024;
  double overlap_fraction = 0.5;
  Window window = Window::hann;
};

/// One-sided cross-spectral density matrix on a uniform frequency grid.
///
/// Entry (u1, u2) at each bin is the one-sided density of E[X_u1 X_u2^*];
/// the (u2, u1) entry is its complex conjugate and diagonals are real and
/// non-negative. Units are (signal units)^2 / Hz.
struct SpectrumMatrix {
  Eigen::VectorXd freqs;                 // Hz, uniform, ascending, starts at 0
  std::vector<Eigen::MatrixXcd> bins;    // per-frequency U x U Hermitian matrix

  int num_channels() const { return bins.empty() ? 0 : static_cast<int>(bins.front().rows()); }
  Eigen::Index num_bins() const { return freqs.size(); }
};

/// Welch-averaged one-sided cross-spectral estimate. Segments are mean-
/// removed, windowed and Fourier transformed; all bins except DC (and
/// Nyquist for even segment lengths) are doubled.
SpectrumMatrix psd_matrix(const TimeSeriesSet& set, const WelchParams& params = {});

/// Trapezoidal integration of the real part over the frequency grid.
/// The result is exactly symmetric because the input is Hermitian.
Eigen::MatrixXd integrate_to_covariance(const SpectrumMatrix& spectrum);

}  // namespace modalstats
