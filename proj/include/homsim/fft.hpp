#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace homsim::detail {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 DFT, unnormalized.
//   forward: X_j = sum_k x_k exp(-2*pi*i*k*j/n)
//   inverse: X_j = sum_k x_k exp(+2*pi*i*k*j/n)
// n must be a power of two.
void fft_inplace(cvector& data, bool inverse);

// Unnormalized DFT by direct summation, any n. Same kernel conventions.
cvector dft_direct(const cvector& data, bool inverse);

}  // namespace homsim::detail
