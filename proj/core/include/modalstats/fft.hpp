#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace modalstats {

/// Forward real-to-complex DFT. Returns n/2+1 bins, unnormalized
/// (X_k = sum_n x_n exp(-2*pi*i*k*n/n)).
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

/// Inverse of rfft: takes n/2+1 half-spectrum bins, returns a length-n real
/// series normalized by 1/n. The imaginary parts of the DC and (for even n)
/// Nyquist bins are ignored, as required for a real result.
std::vector<double> irfft(const std::vector<std::complex<double>>& half_spectrum, std::size_t n);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace modalstats
