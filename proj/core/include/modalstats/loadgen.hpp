#pragma once

#include <cstdint>

#include "modalstats/time_series.hpp"

namespace modalstats {

/// xoshiro256++ with SplitMix64 seeding. Fixed here (rather than using the
/// standard library engines) so that a given seed reproduces bit-identical
/// streams on every platform.
class Xoshiro256pp {
public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

private:
  std::uint64_t s_[4];
};

/// Standard-normal draws via the Marsaglia polar method on a Xoshiro256pp
/// stream; the spare variate of each accepted pair is cached.
class GaussianDraw {
public:
  explicit GaussianDraw(std::uint64_t seed) : rng_(seed) {}
  double next();

private:
  Xoshiro256pp rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Logarithmic sine sweep. f_start == f_end degenerates to a pure sine; for
/// durations beyond one sweep span the instantaneous frequency wraps back to
/// f_start (sawtooth in log frequency) with continuous phase.
struct SweepSpec {
  double amplitude = 1.0;        // m/s^2
  double f_start = 150.0;        // Hz
  double f_end = 300.0;          // Hz
  double rate_oct_per_min = 1.0; // octaves/minute
  double fs = 2000.0;            // Hz
  double duration = 60.0;        // s
  double start_phase = 0.0;      // rad

  void validate() const;
  /// Seconds for one pass f_start -> f_end (0 for the degenerate pure sine).
  double span_seconds() const;
};

/// Band-limited Gaussian noise. The default band (0, fs/2] applies no
/// filtering; otherwise bins outside [f_lo, f_hi] are zeroed in the frequency
/// domain. The series is mean-removed and rescaled to RMS sigma either way.
struct NoiseSpec {
  double sigma = 1.0;      // m/s^2 RMS
  double fs = 2000.0;      // Hz
  double duration = 60.0;  // s
  double f_lo = 0.0;       // Hz
  double f_hi = 0.0;       // Hz; 0 means fs/2
  std::uint64_t seed = 1;

  void validate() const;
  bool full_band() const;
};

TimeSeries gaussian_noise(const NoiseSpec& spec);
TimeSeries sine_sweep(const SweepSpec& spec);

/// Elementwise sum; fs and sample counts must match.
TimeSeries sine_on_random(const NoiseSpec& noise, const SweepSpec& sweep);

/// Convenience: num_channels independent realizations (noise seed offset by
/// the channel index; identical sweep component when add_sweep is set).
TimeSeriesSet sine_on_random_set(const NoiseSpec& noise, const SweepSpec& sweep,
                                 int num_channels, bool add_sweep = true);

}  // namespace modalstats
