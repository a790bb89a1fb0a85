#include <doctest.h>

#include <cmath>

#include "modalstats/errors.hpp"
#include "modalstats/loadgen.hpp"
#include "modalstats/sigstats.hpp"
#include "oracles.hpp"

using namespace modalstats;

TEST_SUITE("loadgen") {

TEST_CASE("gaussian noise hits the requested rms and kurtosis") {
  NoiseSpec spec;
  spec.sigma = 10.0;
  spec.fs = 2000.0;
  spec.duration = 524.288;  // 2^20 samples
  spec.seed = 1234;
  const TimeSeries x = gaussian_noise(spec);
  REQUIRE(x.size() == std::size_t(1) << 20);
  const double std_dev = std::sqrt(central_moment(x, 2));
  CHECK(std_dev >= 9.95);
  CHECK(std_dev <= 10.05);
  CHECK(kurtosis(x) == doctest::Approx(3.0).epsilon(0.1 / 3.0));
  CHECK(std::abs(mean(x)) < 1e-12);
}

TEST_CASE("same seed reproduces bit-identical noise") {
  NoiseSpec spec;
  spec.sigma = 2.0;
  spec.duration = 4.0;
  spec.seed = 77;
  const TimeSeries a = gaussian_noise(spec);
  const TimeSeries b = gaussian_noise(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("band-limited noise keeps only the requested band") {
  NoiseSpec spec;
  spec.sigma = 3.0;
  spec.fs = 2000.0;
  spec.duration = 4.096;  // 8192 samples
  spec.f_lo = 100.0;
  spec.f_hi = 400.0;
  spec.seed = 5;
  const TimeSeries x = gaussian_noise(spec);
  CHECK(std::sqrt(central_moment(x, 2)) == doctest::Approx(3.0).epsilon(0.005));

  // out-of-band DFT bins carry no energy beyond the mean-removal residue
  const auto half = oracles::naive_dft_half(x.samples);
  const double df = spec.fs / static_cast<double>(x.size());
  double in_band = 0.0, out_band = 0.0;
  for (std::size_t k = 0; k < half.size(); ++k) {
    const double f = static_cast<double>(k) * df;
    const double power = std::norm(half[k]);
    if (f >= spec.f_lo && f <= spec.f_hi)
      in_band += power;
    else
      out_band += power;
  }
  CHECK(out_band < 1e-20 * in_band);
}

TEST_CASE("degenerate sweep is a pure sine with kurtosis 1.5") {
  SweepSpec spec;
  spec.amplitude = 1.0;
  spec.f_start = 200.0;
  spec.f_end = 200.0;
  spec.fs = 2000.0;
  spec.duration = 10.0;
  const TimeSeries x = sine_sweep(spec);
  CHECK(kurtosis(x) == doctest::Approx(1.5).epsilon(0.001));
}

TEST_CASE("sweep instantaneous frequency follows the octave law") {
  SweepSpec spec;
  spec.amplitude = 1.0;
  spec.f_start = 150.0;
  spec.f_end = 300.0;
  spec.rate_oct_per_min = 2.0;  // 30 s per sweep
  spec.fs = 4000.0;
  spec.duration = 30.0;
  const TimeSeries x = sine_sweep(spec);

  for (double t_center : {3.0, 12.0, 24.0}) {
    const double f_expected = 150.0 * std::exp2(2.0 * t_center / 60.0);
    const double window = 1.0;  // seconds
    const auto begin = static_cast<std::size_t>((t_center - window / 2) * spec.fs);
    const auto end = static_cast<std::size_t>((t_center + window / 2) * spec.fs);
    const int crossings = oracles::count_zero_crossings(x.samples, begin, end);
    const double f_estimate = crossings / (2.0 * window);
    CHECK(f_estimate == doctest::Approx(f_expected).epsilon(0.02));
  }
}

TEST_CASE("sweep rms is amplitude over sqrt(2)") {
  SweepSpec spec;
  spec.amplitude = 22.0;
  spec.duration = 120.0;  // wraps once at 60 s
  const TimeSeries x = sine_sweep(spec);
  CHECK(std::sqrt(central_moment(x, 2)) == doctest::Approx(22.0 / std::sqrt(2.0)).epsilon(0.005));
}

TEST_CASE("sine-on-random matches the documented mixture kurtosis") {
  NoiseSpec noise;
  noise.sigma = 10.0;
  noise.fs = 2000.0;
  noise.duration = 120.0;
  noise.seed = 42;
  SweepSpec sweep;
  sweep.amplitude = 22.0;
  sweep.f_start = 150.0;
  sweep.f_end = 300.0;
  sweep.rate_oct_per_min = 1.0;
  sweep.fs = 2000.0;
  sweep.duration = 120.0;
  const TimeSeries x = sine_on_random(noise, sweep);
  const double beta = kurtosis(x);
  CHECK(beta >= 2.22);
  CHECK(beta <= 2.28);

  // analytic mixture: beta = ((3/8)A^4 + 3 A^2 s^2 + 3 s^4) / (A^2/2 + s^2)^2
  const double A = 22.0, s = 10.0;
  const double analytic = (0.375 * A * A * A * A + 3.0 * A * A * s * s + 3.0 * s * s * s * s) /
                          std::pow(A * A / 2.0 + s * s, 2);
  CHECK(analytic == doctest::Approx(2.249).epsilon(0.001));
  CHECK(beta == doctest::Approx(analytic).epsilon(0.015));
}

TEST_CASE("zero-amplitude sweep reduces the mixture to noise") {
  NoiseSpec noise;
  noise.sigma = 5.0;
  noise.duration = 120.0;
  noise.seed = 9;
  SweepSpec sweep;
  sweep.amplitude = 0.0;
  sweep.duration = 120.0;
  const TimeSeries x = sine_on_random(noise, sweep);
  CHECK(kurtosis(x) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("variance of the sum is the sum of variances") {
  NoiseSpec noise;
  noise.sigma = 10.0;
  noise.duration = 200.0;
  noise.seed = 21;
  SweepSpec sweep;
  sweep.amplitude = 22.0;
  sweep.duration = 200.0;
  const TimeSeries mix = sine_on_random(noise, sweep);
  const double expected = 10.0 * 10.0 + 22.0 * 22.0 / 2.0;
  CHECK(central_moment(mix, 2) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("spec validation") {
  NoiseSpec bad_band;
  bad_band.f_lo = 900.0;
  bad_band.f_hi = 100.0;
  CHECK_THROWS_AS(gaussian_noise(bad_band), invalid_input_error);

  SweepSpec bad_sweep;
  bad_sweep.f_start = 400.0;
  bad_sweep.f_end = 300.0;
  CHECK_THROWS_AS(sine_sweep(bad_sweep), invalid_input_error);

  SweepSpec above_nyquist;
  above_nyquist.f_end = 1500.0;
  above_nyquist.fs = 2000.0;
  CHECK_THROWS_AS(sine_sweep(above_nyquist), invalid_input_error);

  NoiseSpec noise;
  SweepSpec other_rate;
  other_rate.fs = 4000.0;
  CHECK_THROWS_AS(sine_on_random(noise, other_rate), invalid_input_error);
}

}  // TEST_SUITE
