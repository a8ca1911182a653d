// Thin FFTW wrapper with a thread-safe plan cache.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace weldlab {

// In-place unnormalized DFT:
//   sign = -1:  X_m = sum_j x_j exp(-i 2pi m j / G)
//   sign = +1:  X_m = sum_j x_j exp(+i 2pi m j / G)
void dft(std::vector<std::complex<double>>& data, int sign);

} // namespace weldlab
