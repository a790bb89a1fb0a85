#include "modalstats/sigstats.hpp"

#include <cmath>
#include <vector>

#include "modalstats/errors.hpp"

namespace modalstats {

namespace {
constexpr Eigen::Index kBlock = 8192;
}

double pairwise_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

double mean(const TimeSeries& ts) {
  ts.validate();
  return pairwise_sum(ts.samples) / static_cast<double>(ts.samples.size());
}

double central_moment(const TimeSeries& ts, int n) {
  if (n < 2 || n > 4)
    throw invalid_input_error("central_moment: order must be 2, 3 or 4");
  ts.validate();
  const double mu = pairwise_sum(ts.samples) / static_cast<double>(ts.samples.size());
  std::vector<double> powers(ts.samples.size());
  for (std::size_t i = 0; i < ts.samples.size(); ++i) {
    const double d = ts.samples[i] - mu;
    double p = d * d;
    if (n >= 3) p *= d;
    if (n == 4) p *= d;
    powers[i] = p;
  }
  return pairwise_sum(powers) / static_cast<double>(powers.size());
}

double skewness(const TimeSeries& ts) {
  const double mu2 = central_moment(ts, 2);
  if (mu2 == 0.0) throw degenerate_series_error("skewness: zero-variance series");
  return central_moment(ts, 3) / std::pow(mu2, 1.5);
}

double kurtosis(const TimeSeries& ts) {
  const double mu2 = central_moment(ts, 2);
  if (mu2 == 0.0) throw degenerate_series_error("kurtosis: zero-variance series");
  return central_moment(ts, 4) / (mu2 * mu2);
}

Cumulants cumulants_1to4(const TimeSeries& ts) {
  Cumulants c;
  c.c1 = mean(ts);
  c.c2 = central_moment(ts, 2);
  c.c3 = central_moment(ts, 3);
  const double mu4 = central_moment(ts, 4);
  c.c4 = mu4 - 3.0 * c.c2 * c.c2;
  return c;
}

Eigen::VectorXd channel_means(const TimeSeriesSet& set) {
  const int U = set.num_channels();
  Eigen::VectorXd mu(U);
  for (int u = 0; u < U; ++u) {
    const double* base = set.data().col(u).data();
    mu(u) = pairwise_sum(std::span<const double>(base, static_cast<std::size_t>(set.num_samples()))) /
            static_cast<double>(set.num_samples());
  }
  return mu;
}

Eigen::MatrixXd covariance_matrix(const TimeSeriesSet& set) {
  const int U = set.num_channels();
  const Eigen::Index N = set.num_samples();
  const Eigen::VectorXd mu = channel_means(set);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(U, U);
  for (Eigen::Index t0 = 0; t0 < N; t0 += kBlock) {
    const Eigen::Index len = std::min(kBlock, N - t0);
    Eigen::MatrixXd yc = set.data().middleRows(t0, len);
    yc.rowwise() -= mu.transpose();
    acc.selfadjointView<Eigen::Lower>().rankUpdate(yc.transpose());
  }
  acc /= static_cast<double>(N);
  acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
  return acc;
}

MomentTensor4 moment4_tensor(const TimeSeriesSet& set) {
  const int U = set.num_channels();
  const Eigen::Index N = set.num_samples();
  const Eigen::VectorXd mu = channel_means(set);
  const auto pairs = voigt_index_map(U);
  const int P = static_cast<int>(pairs.size());

  // mu4(i,j,k,l) = E[(y_i y_j)(y_k y_l)]: a Gram matrix over centered
  // pair-product channels, accumulated block by block.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(P, P);
  Eigen::MatrixXd z(kBlock, P);
  for (Eigen::Index t0 = 0; t0 < N; t0 += kBlock) {
    const Eigen::Index len = std::min(kBlock, N - t0);
    Eigen::MatrixXd yc = set.data().middleRows(t0, len);
    yc.rowwise() -= mu.transpose();
    for (int p = 0; p < P; ++p) {
      auto [a, b] = pairs[static_cast<std::size_t>(p)];
      z.col(p).head(len) = yc.col(a).cwiseProduct(yc.col(b));
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(z.topRows(len).transpose());
  }
  gram /= static_cast<double>(N);
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

  Eigen::MatrixXi slot(U, U);
  for (int s = 0; s < P; ++s) {
    auto [a, b] = pairs[static_cast<std::size_t>(s)];
    slot(a, b) = s;
    slot(b, a) = s;
  }
  MomentTensor4 T(U);
  for (int i = 0; i < U; ++i)
    for (int j = i; j < U; ++j)
      for (int k = j; k < U; ++k)
        for (int l = k; l < U; ++l) T(i, j, k, l) = gram(slot(i, j), slot(k, l));
  T.symmetrize_from_canonical();
  return T;
}

}  // namespace modalstats
