#include "modalstats/loadgen.hpp"

#include <cmath>
#include <numbers>

#include "modalstats/errors.hpp"
#include "modalstats/fft.hpp"
#include "modalstats/sigstats.hpp"

namespace modalstats {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Eigen::Index sample_count(double fs, double duration) {
  const auto n = static_cast<Eigen::Index>(std::llround(fs * duration));
  if (n < 2) throw invalid_input_error("loadgen: duration too short for fs");
  return n;
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double GaussianDraw::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * rng_.uniform01() - 1.0;
    v = 2.0 * rng_.uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

void SweepSpec::validate() const {
  if (!(fs > 0.0)) throw invalid_input_error("sweep: fs must be positive");
  if (!(f_start > 0.0) || f_start > f_end || !(f_end < fs / 2.0))
    throw invalid_input_error("sweep: need 0 < f_start <= f_end < fs/2");
  if (f_start < f_end && !(rate_oct_per_min > 0.0))
    throw invalid_input_error("sweep: rate must be positive");
  if (!(duration > 0.0)) throw invalid_input_error("sweep: duration must be positive");
  if (!(amplitude >= 0.0)) throw invalid_input_error("sweep: amplitude must be non-negative");
}

double SweepSpec::span_seconds() const {
  if (f_start == f_end) return 0.0;
  return 60.0 * std::log2(f_end / f_start) / rate_oct_per_min;
}

void NoiseSpec::validate() const {
  if (!(fs > 0.0)) throw invalid_input_error("noise: fs must be positive");
  if (!(sigma > 0.0)) throw invalid_input_error("noise: sigma must be positive");
  if (!(duration > 0.0)) throw invalid_input_error("noise: duration must be positive");
  const double hi = f_hi == 0.0 ? fs / 2.0 : f_hi;
  if (f_lo < 0.0 || !(f_lo < hi) || hi > fs / 2.0)
    throw invalid_input_error("noise: need 0 <= f_lo < f_hi <= fs/2");
}

bool NoiseSpec::full_band() const {
  return f_lo == 0.0 && (f_hi == 0.0 || f_hi == fs / 2.0);
}

TimeSeries gaussian_noise(const NoiseSpec& spec) {
  spec.validate();
  const Eigen::Index n = sample_count(spec.fs, spec.duration);
  std::vector<double> x(static_cast<std::size_t>(n));
  GaussianDraw draw(spec.seed);
  for (auto& v : x) v = draw.next();

  if (!spec.full_band()) {
    const double hi = spec.f_hi == 0.0 ? spec.fs / 2.0 : spec.f_hi;
    auto half = rfft(x);
    const double df = spec.fs / static_cast<double>(n);
    for (std::size_t k = 0; k < half.size(); ++k) {
      const double f = static_cast<double>(k) * df;
      if (f < spec.f_lo || f > hi) half[k] = 0.0;
    }
    x = irfft(half, static_cast<std::size_t>(n));
  }

  const double mu = pairwise_sum(x) / static_cast<double>(n);
  for (auto& v : x) v -= mu;
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  const double rms = std::sqrt(pairwise_sum(sq) / static_cast<double>(n));
  if (rms == 0.0) throw numerical_error("noise: degenerate realization");
  const double scale = spec.sigma / rms;
  for (auto& v : x) v *= scale;
  return TimeSeries(std::move(x), 1.0 / spec.fs);
}

TimeSeries sine_sweep(const SweepSpec& spec) {
  spec.validate();
  const Eigen::Index n = sample_count(spec.fs, spec.duration);
  const double dt = 1.0 / spec.fs;
  std::vector<double> x(static_cast<std::size_t>(n));

  if (spec.f_start == spec.f_end) {
    const double w = 2.0 * std::numbers::pi * spec.f_start;
    for (Eigen::Index i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] =
          spec.amplitude * std::sin(w * static_cast<double>(i) * dt + spec.start_phase);
    return TimeSeries(std::move(x), dt);
  }

  const double span = spec.span_seconds();
  const double k = spec.rate_oct_per_min / 60.0;  // octaves per second
  const double phase_scale = 2.0 * std::numbers::pi * spec.f_start / (k * std::numbers::ln2);
  // phase advance of one complete f_start -> f_end pass
  const double span_phase =
      2.0 * std::numbers::pi * (spec.f_end - spec.f_start) / (k * std::numbers::ln2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double wraps = std::floor(t / span);
    const double tau = t - wraps * span;
    const double phase =
        spec.start_phase + wraps * span_phase + phase_scale * (std::exp2(k * tau) - 1.0);
    x[static_cast<std::size_t>(i)] = spec.amplitude * std::sin(phase);
  }
  return TimeSeries(std::move(x), dt);
}

TimeSeries sine_on_random(const NoiseSpec& noise, const SweepSpec& sweep) {
  if (noise.fs != sweep.fs) throw invalid_input_error("sine_on_random: fs mismatch");
  TimeSeries a = gaussian_noise(noise);
  const TimeSeries b = sine_sweep(sweep);
  if (a.size() != b.size()) throw invalid_input_error("sine_on_random: length mismatch");
  for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] += b.samples[i];
  return a;
}

TimeSeriesSet sine_on_random_set(const NoiseSpec& noise, const SweepSpec& sweep,
                                 int num_channels, bool add_sweep) {
  if (num_channels < 1) throw invalid_input_error("sine_on_random_set: need >= 1 channel");
  std::vector<TimeSeries> channels;
  channels.reserve(static_cast<std::size_t>(num_channels));
  for (int u = 0; u < num_channels; ++u) {
    NoiseSpec ns = noise;
    ns.seed = noise.seed + static_cast<std::uint64_t>(u);
    channels.push_back(add_sweep ? sine_on_random(ns, sweep) : gaussian_noise(ns));
  }
  return TimeSeriesSet(channels);
}

}  // namespace modalstats
