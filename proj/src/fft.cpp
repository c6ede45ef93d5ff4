#include "homsim/fft.hpp"

#include <cmath>

#include "homsim/errors.hpp"

namespace homsim::detail {

void fft_inplace(cvector& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) {
        throw dimension_error("fft_inplace: size must be a power of two");
    }
    if (n < 2) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * M_PI / static_cast<double>(len);
        // Recompute the root per block from sin/cos: keeps twiddle error at
        // rounding level for the sizes used here.
        const cdouble wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble u = data[i + k];
                const cdouble v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

cvector dft_direct(const cvector& data, bool inverse) {
    const std::size_t n = data.size();
    const double sign = inverse ? 1.0 : -1.0;
    cvector out(n, cdouble(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        cdouble acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double angle =
                sign * 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
            acc += data[k] * cdouble(std::cos(angle), std::sin(angle));
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace homsim::detail
