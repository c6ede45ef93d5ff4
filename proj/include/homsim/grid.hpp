#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace homsim {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform angular-frequency lattice.
///
/// sample(k) = center + (k - n/2) * step for k = 0..n-1, step = span/n.
/// The lattice therefore covers [center - span/2, center + span/2) and all
/// discretized integrals over it are plain Riemann sums with weight `step`.
struct FrequencyGrid {
    std::size_t n = 0;
    double center = 0.0;  // rad/s
    double span = 0.0;    // rad/s, total width

    FrequencyGrid() = default;
    FrequencyGrid(std::size_t n_samples, double center_value, double total_span);

    double step() const { return span / static_cast<double>(n); }
    double sample(std::size_t k) const {
        return center + (static_cast<double>(k) - static_cast<double>(n) / 2.0) * step();
    }
    std::vector<double> samples() const;

    bool operator==(const FrequencyGrid&) const = default;
};

/// Fourier dual of a FrequencyGrid: step_t * step_w * n = 2*pi exactly.
struct TimeGrid {
    std::size_t n = 0;
    double center = 0.0;  // s
    double span = 0.0;    // s

    TimeGrid() = default;
    TimeGrid(std::size_t n_samples, double center_value, double total_span);

    static TimeGrid dual_of(const FrequencyGrid& grid, double time_center = 0.0);

    double step() const { return span / static_cast<double>(n); }
    double sample(std::size_t k) const {
        return center + (static_cast<double>(k) - static_cast<double>(n) / 2.0) * step();
    }
    std::vector<double> samples() const;

    bool operator==(const TimeGrid&) const = default;
};

/// True when (grid, tgrid) satisfy the duality relation within rel_tol.
bool is_fourier_dual(const FrequencyGrid& grid, const TimeGrid& tgrid, double rel_tol = 1e-9);

/// Riemann sum: step * sum(samples). Throws dimension_error on length mismatch.
cdouble integrate(std::span<const cdouble> samples, const FrequencyGrid& grid);
double integrate(std::span<const double> samples, const FrequencyGrid& grid);
double integrate(std::span<const double> samples, const TimeGrid& grid);

/// Discretized unitary Fourier transform, fixed library-wide convention
///
///   g~(t) = (2*pi)^(-1/2) * Integral g(w) exp(-i w t) dw,
///
/// evaluated on the dual time lattice centered at `time_center`. Uses an FFT
/// with phase corrections for the off-center lattices when n is a power of
/// two, and falls back to direct summation otherwise. Parseval holds to
/// machine precision: sum |g~|^2 step_t == sum |g|^2 step_w.
std::pair<cvector, TimeGrid> fourier_to_time(std::span<const cdouble> values, const FrequencyGrid& grid,
                                             double time_center = 0.0);

/// O(n^2) reference quadrature of the same sum; kept as the cross-check path.
cvector fourier_to_time_direct(std::span<const cdouble> values, const FrequencyGrid& grid,
                               const TimeGrid& tgrid);

/// Inverse transform g(w) = (2*pi)^(-1/2) * Integral g~(t) exp(+i w t) dt back
/// onto `out`, which must be the Fourier dual of `tgrid`.
cvector time_to_frequency(std::span<const cdouble> values, const TimeGrid& tgrid, const FrequencyGrid& out);

cvector time_to_frequency_direct(std::span<const cdouble> values, const TimeGrid& tgrid,
                                 const FrequencyGrid& out);

}  // namespace homsim
