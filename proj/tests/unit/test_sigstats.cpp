#include <doctest.h>

#include <cmath>
#include <vector>

#include "modalstats/errors.hpp"
#include "modalstats/sigstats.hpp"
#include "oracles.hpp"

using namespace modalstats;

namespace {

TimeSeries make_sine(double amplitude, int cycles, int n, double dt = 1e-3, double phase = 0.0) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] =
        amplitude * std::sin(2.0 * M_PI * cycles * i / static_cast<double>(n) + phase);
  return TimeSeries(std::move(x), dt);
}

TimeSeries make_gaussian(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
  oracles::Lcg rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = sigma * rng.normal();
  return TimeSeries(std::move(x), 1e-3);
}

TimeSeriesSet make_random_set(int channels, int n, std::uint64_t seed) {
  Eigen::MatrixXd data(n, channels);
  oracles::Lcg rng(seed);
  for (int u = 0; u < channels; ++u)
    for (int i = 0; i < n; ++i) data(i, u) = rng.normal() + 0.3 * u + 0.1 * rng.uniform();
  // mix channels so cross-moments are nontrivial
  Eigen::MatrixXd mix(channels, channels);
  for (int i = 0; i < channels; ++i)
    for (int j = 0; j < channels; ++j) mix(i, j) = rng.uniform() - 0.3;
  mix += 2.0 * Eigen::MatrixXd::Identity(channels, channels);
  return TimeSeriesSet(data * mix.transpose(), 1e-3);
}

std::vector<std::vector<double>> to_channels(const TimeSeriesSet& set) {
  std::vector<std::vector<double>> out;
  for (int u = 0; u < set.num_channels(); ++u) {
    Eigen::VectorXd c = set.channel(u);
    out.emplace_back(c.data(), c.data() + c.size());
  }
  return out;
}

}  // namespace

TEST_SUITE("sigstats") {

TEST_CASE("central moment of a constant series is zero") {
  TimeSeries ts({5.0, 5.0, 5.0, 5.0}, 0.01);
  for (int n = 2; n <= 4; ++n) CHECK(central_moment(ts, n) == doctest::Approx(0.0));
}

TEST_CASE("analytic sine moments") {
  const TimeSeries s2 = make_sine(2.0, 7, 1000);
  CHECK(central_moment(s2, 2) == doctest::Approx(2.0).epsilon(1e-12));
  const TimeSeries s1 = make_sine(1.0, 5, 1000);
  CHECK(central_moment(s1, 4) == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("central moment rejects bad input") {
  CHECK_THROWS_AS(central_moment(make_sine(1.0, 3, 100), 5), invalid_input_error);
  TimeSeries bad;
  bad.samples = {1.0, std::nan("")};
  bad.dt = 0.01;
  CHECK_THROWS_AS(central_moment(bad, 2), invalid_input_error);
  TimeSeries one;
  one.samples = {1.0};
  one.dt = 0.01;
  CHECK_THROWS_AS(central_moment(one, 2), invalid_input_error);
}

TEST_CASE("kurtosis of a pure sine is 1.5") {
  CHECK(kurtosis(make_sine(3.0, 11, 4096)) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("kurtosis of long white Gaussian noise is 3") {
  const TimeSeries g = make_gaussian(std::size_t(1) << 20, 42);
  CHECK(kurtosis(g) == doctest::Approx(3.0).epsilon(0.1 / 3.0));
}

TEST_CASE("skewness of a symmetric series vanishes") {
  CHECK(std::abs(skewness(make_sine(1.0, 9, 2048))) < 1e-10);
}

TEST_CASE("zero-variance series is a degenerate input for normalized stats") {
  TimeSeries ts({2.0, 2.0, 2.0}, 0.01);
  CHECK_THROWS_AS(kurtosis(ts), degenerate_series_error);
  CHECK_THROWS_AS(skewness(ts), degenerate_series_error);
}

TEST_CASE("cumulants: Gaussian c4 is near zero") {
  const TimeSeries g = make_gaussian(std::size_t(1) << 20, 7);
  const Cumulants c = cumulants_1to4(g);
  CHECK(std::abs(c.c4) < 0.05 * 3.0 * c.c2 * c.c2);
}

TEST_CASE("cumulants: pure sine c4 = -0.375") {
  const Cumulants c = cumulants_1to4(make_sine(1.0, 5, 1000));
  CHECK(c.c4 == doctest::Approx(-0.375).epsilon(1e-10));
}

TEST_CASE("cumulants: sine-on-random mixture matches the analytic value and the summation oracle") {
  const double A = 22.0, sigma = 10.0;
  const int n = 1 << 19;
  TimeSeries mix = make_sine(A, 401, n);
  oracles::Lcg rng(99);
  for (auto& v : mix.samples) v += sigma * rng.normal();

  const Cumulants c = cumulants_1to4(mix);
  // direct-summation oracle for the same realization
  const double mu2_o = oracles::naive_central_moment(mix.samples, 2);
  const double mu4_o = oracles::naive_central_moment(mix.samples, 4);
  CHECK(c.c4 == doctest::Approx(mu4_o - 3.0 * mu2_o * mu2_o).epsilon(1e-12));

  // independence mixture: mu4 = (3/8)A^4 + 3 A^2 s^2 + 3 s^4, mu2 = A^2/2 + s^2
  const double mu2_a = A * A / 2.0 + sigma * sigma;
  const double mu4_a = 0.375 * A * A * A * A + 3.0 * A * A * sigma * sigma +
                       3.0 * sigma * sigma * sigma * sigma;
  const double c4_a = mu4_a - 3.0 * mu2_a * mu2_a;
  CHECK(c.c4 / (c.c2 * c.c2) == doctest::Approx(c4_a / (mu2_a * mu2_a)).epsilon(0.05));
  CHECK(c4_a / (mu2_a * mu2_a) == doctest::Approx(-0.751).epsilon(0.01));
}

TEST_CASE("covariance of two identical channels") {
  const TimeSeries g = make_gaussian(4096, 3);
  const TimeSeriesSet set({g, g});
  const Eigen::MatrixXd cov = covariance_matrix(set);
  CHECK(cov(0, 1) == doctest::Approx(cov(0, 0)).epsilon(1e-14));
  CHECK(cov(1, 0) == doctest::Approx(cov(0, 0)).epsilon(1e-14));
}

TEST_CASE("covariance of independent channels is near zero") {
  const std::size_t n = std::size_t(1) << 20;
  const TimeSeriesSet set({make_gaussian(n, 11), make_gaussian(n, 12)});
  const Eigen::MatrixXd cov = covariance_matrix(set);
  const double rho = cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1));
  CHECK(std::abs(rho) < 0.01);
}

TEST_CASE("covariance matches the nested-loop oracle") {
  const TimeSeriesSet set = make_random_set(3, 2000, 17);
  const Eigen::MatrixXd cov = covariance_matrix(set);
  const auto ch = to_channels(set);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(cov(a, b) == doctest::Approx(oracles::naive_covariance(
                             ch[static_cast<std::size_t>(a)], ch[static_cast<std::size_t>(b)]))
                             .epsilon(1e-12));
}

TEST_CASE("covariance equals the pairwise marginal") {
  const TimeSeriesSet set = make_random_set(3, 1500, 21);
  const Eigen::MatrixXd cov = covariance_matrix(set);
  const TimeSeriesSet pair({set.channel_series(0), set.channel_series(2)});
  const Eigen::MatrixXd cov2 = covariance_matrix(pair);
  CHECK(cov(0, 2) == doctest::Approx(cov2(0, 1)).epsilon(1e-13));
  CHECK(cov(0, 0) == doctest::Approx(cov2(0, 0)).epsilon(1e-13));
}

TEST_CASE("moment4 tensor: univariate reduction") {
  const TimeSeries g = make_gaussian(3000, 5);
  const TimeSeriesSet set({g});
  const MomentTensor4 t = moment4_tensor(set);
  CHECK(t(0, 0, 0, 0) == doctest::Approx(central_moment(g, 4)).epsilon(1e-12));
}

TEST_CASE("moment4 tensor: exact permutation symmetry") {
  const TimeSeriesSet set = make_random_set(3, 800, 23);
  const MomentTensor4 t = moment4_tensor(set);
  CHECK(t.max_asymmetry() == 0.0);
  CHECK(t(0, 1, 0, 1) == t(1, 0, 1, 0));
  CHECK(t(0, 1, 0, 1) == t(0, 0, 1, 1));
}

TEST_CASE("moment4 tensor matches the quadruple-product loop oracle") {
  const TimeSeriesSet set = make_random_set(3, 1000, 31);
  const MomentTensor4 t = moment4_tensor(set);
  const auto ch = to_channels(set);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k)
        for (int l = k; l < 3; ++l)
          CHECK(t(i, j, k, l) ==
                doctest::Approx(oracles::naive_moment4_entry(ch, i, j, k, l)).epsilon(1e-12));
}

TEST_CASE("scale equivariance and shift invariance") {
  const TimeSeries base = make_gaussian(5000, 41);
  const double s = 3.7;
  TimeSeries scaled = base;
  for (auto& v : scaled.samples) v *= s;
  TimeSeries shifted = base;
  for (auto& v : shifted.samples) v += 123.456;

  for (int n = 2; n <= 4; ++n)
    CHECK(central_moment(scaled, n) ==
          doctest::Approx(std::pow(s, n) * central_moment(base, n)).epsilon(1e-12));
  CHECK(kurtosis(scaled) == doctest::Approx(kurtosis(base)).epsilon(1e-12));
  for (int n = 2; n <= 4; ++n)
    CHECK(central_moment(shifted, n) == doctest::Approx(central_moment(base, n)).epsilon(1e-10));
}

TEST_CASE("mismatched channel lengths are rejected") {
  CHECK_THROWS_AS(TimeSeriesSet({make_gaussian(100, 1), make_gaussian(101, 2)}),
                  invalid_input_error);
}

}  // TEST_SUITE
