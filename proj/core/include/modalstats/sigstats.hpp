#pragma once

#include <Eigen/Dense>
#include <span>

#include "modalstats/tensor4.hpp"
#include "modalstats/time_series.hpp"

namespace modalstats {

/// Pairwise (cascade) summation; error grows with log(n) instead of n.
double pairwise_sum(std::span<const double> x);

double mean(const TimeSeries& ts);

/// Biased (1/N) central moment of order n in {2,3,4}; the mean is always
/// subtracted first.
double central_moment(const TimeSeries& ts, int n);

/// gamma = mu3 / mu2^(3/2). Throws degenerate_series_error when mu2 == 0.
double skewness(const TimeSeries& ts);

/// beta = mu4 / mu2^2. Throws degenerate_series_error when mu2 == 0.
double kurtosis(const TimeSeries& ts);

struct Cumulants {
  double c1 = 0.0;  // mean
  double c2 = 0.0;  // mu2
  double c3 = 0.0;  // mu3
  double c4 = 0.0;  // mu4 - 3*mu2^2
};

Cumulants cumulants_1to4(const TimeSeries& ts);

/// Biased (1/N) sample covariance matrix, channels centered individually.
Eigen::MatrixXd covariance_matrix(const TimeSeriesSet& set);

/// Dense rank-4 central-moment tensor, exact permutation symmetry by
/// construction. The time axis is processed in blocks and reduced, which
/// keeps round-off bounded for long records.
MomentTensor4 moment4_tensor(const TimeSeriesSet& set);

/// Per-channel means (pairwise summation).
Eigen::VectorXd channel_means(const TimeSeriesSet& set);

}  // namespace modalstats
