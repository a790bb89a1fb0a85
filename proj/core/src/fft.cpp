#include "modalstats/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "modalstats/errors.hpp"

namespace modalstats {

namespace {
// FFTW plan creation is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) throw invalid_input_error("fft: need at least 2 samples");
  std::vector<double> in(x);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  if (!plan) throw numerical_error("fft: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& half_spectrum, std::size_t n) {
  if (n < 2) throw invalid_input_error("fft: need at least 2 samples");
  if (half_spectrum.size() != n / 2 + 1)
    throw invalid_input_error("fft: half spectrum size does not match n");
  std::vector<std::complex<double>> in(half_spectrum);
  in[0] = {in[0].real(), 0.0};
  if (n % 2 == 0) in[n / 2] = {in[n / 2].real(), 0.0};
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  if (!plan) throw numerical_error("fft: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace modalstats
