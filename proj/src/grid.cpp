#include "homsim/grid.hpp"

#include <cmath>
#include <string>

#include "homsim/errors.hpp"
#include "homsim/fft.hpp"

namespace homsim {

namespace {

// exp(-i*pi*n/2) for integer n.
cdouble quarter_turn_phase(std::size_t n, double sign) {
    switch (n % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -sign};
        case 2: return {-1.0, 0.0};
        default: return {0.0, sign};
    }
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::size_t n_samples, double center_value, double total_span)
    : n(n_samples), center(center_value), span(total_span) {
    if (n < 8) throw config_error("FrequencyGrid: need n >= 8, got " + std::to_string(n));
    if (!(span > 0.0) || !std::isfinite(span) || !std::isfinite(center)) {
        throw config_error("FrequencyGrid: span must be finite and positive");
    }
}

std::vector<double> FrequencyGrid::samples() const {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = sample(k);
    return out;
}

TimeGrid::TimeGrid(std::size_t n_samples, double center_value, double total_span)
    : n(n_samples), center(center_value), span(total_span) {
    if (n < 8) throw config_error("TimeGrid: need n >= 8, got " + std::to_string(n));
    if (!(span > 0.0) || !std::isfinite(span) || !std::isfinite(center)) {
        throw config_error("TimeGrid: span must be finite and positive");
    }
}

TimeGrid TimeGrid::dual_of(const FrequencyGrid& grid, double time_center) {
    const double step_t = kTwoPi / (static_cast<double>(grid.n) * grid.step());
    return TimeGrid(grid.n, time_center, step_t * static_cast<double>(grid.n));
}

std::vector<double> TimeGrid::samples() const {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = sample(k);
    return out;
}

bool is_fourier_dual(const FrequencyGrid& grid, const TimeGrid& tgrid, double rel_tol) {
    if (grid.n != tgrid.n) return false;
    const double product = grid.step() * tgrid.step() * static_cast<double>(grid.n);
    return std::abs(product - kTwoPi) <= rel_tol * kTwoPi;
}

cdouble integrate(std::span<const cdouble> samples, const FrequencyGrid& grid) {
    if (samples.size() != grid.n) {
        throw dimension_error("integrate: got " + std::to_string(samples.size()) + " samples on a grid of " +
                              std::to_string(grid.n));
    }
    cdouble acc(0.0, 0.0);
    for (const cdouble& v : samples) acc += v;
    return acc * grid.step();
}

double integrate(std::span<const double> samples, const FrequencyGrid& grid) {
    if (samples.size() != grid.n) {
        throw dimension_error("integrate: sample/grid length mismatch");
    }
    double acc = 0.0;
    for (double v : samples) acc += v;
    return acc * grid.step();
}

double integrate(std::span<const double> samples, const TimeGrid& grid) {
    if (samples.size() != grid.n) {
        throw dimension_error("integrate: sample/grid length mismatch");
    }
    double acc = 0.0;
    for (double v : samples) acc += v;
    return acc * grid.step();
}

// The lattice phases below come from expanding w_k * t_j with
// w_k = w_c + (k - n/2)*dw and t_j = t_c + (j - n/2)*dt, dw*dt = 2*pi/n:
//   w_k t_j = w_c t_j + (k - n/2) dw t_c + 2*pi*k*j/n - pi*k - pi*j + pi*n/2.
std::pair<cvector, TimeGrid> fourier_to_time(std::span<const cdouble> values, const FrequencyGrid& grid,
                                             double time_center) {
    if (values.size() != grid.n) {
        throw dimension_error("fourier_to_time: sample/grid length mismatch");
    }
    const TimeGrid tgrid = TimeGrid::dual_of(grid, time_center);
    const std::size_t n = grid.n;

    if (!detail::is_power_of_two(n)) {
        return {fourier_to_time_direct(values, grid, tgrid), tgrid};
    }

    const double dw = grid.step();
    cvector work(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a_k = static_cast<double>(k) - static_cast<double>(n) / 2.0;
        cdouble pre = std::polar(1.0, -a_k * dw * time_center);
        if (k & 1) pre = -pre;
        work[k] = values[k] * pre;
    }
    detail::fft_inplace(work, /*inverse=*/false);

    const double scale = dw / std::sqrt(kTwoPi);
    const cdouble corner = quarter_turn_phase(n, +1.0);  // exp(-i pi n / 2)
    cvector out(n);
    for (std::size_t j = 0; j < n; ++j) {
        cdouble post = scale * corner * std::polar(1.0, -grid.center * tgrid.sample(j));
        if (j & 1) post = -post;
        out[j] = work[j] * post;
    }
    return {std::move(out), tgrid};
}

cvector fourier_to_time_direct(std::span<const cdouble> values, const FrequencyGrid& grid,
                               const TimeGrid& tgrid) {
    if (values.size() != grid.n) {
        throw dimension_error("fourier_to_time_direct: sample/grid length mismatch");
    }
    const double scale = grid.step() / std::sqrt(kTwoPi);
    cvector out(tgrid.n, cdouble(0.0, 0.0));
    for (std::size_t j = 0; j < tgrid.n; ++j) {
        const double t = tgrid.sample(j);
        cdouble acc(0.0, 0.0);
        for (std::size_t k = 0; k < grid.n; ++k) {
            acc += values[k] * std::polar(1.0, -grid.sample(k) * t);
        }
        out[j] = acc * scale;
    }
    return out;
}

cvector time_to_frequency(std::span<const cdouble> values, const TimeGrid& tgrid, const FrequencyGrid& out) {
    if (values.size() != tgrid.n) {
        throw dimension_error("time_to_frequency: sample/grid length mismatch");
    }
    if (!is_fourier_dual(out, tgrid)) {
        throw dimension_error("time_to_frequency: output grid is not the Fourier dual of the input");
    }
    const std::size_t n = tgrid.n;
    if (!detail::is_power_of_two(n)) {
        return time_to_frequency_direct(values, tgrid, out);
    }

    const double dt = tgrid.step();
    cvector work(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double b_j = static_cast<double>(j) - static_cast<double>(n) / 2.0;
        cdouble pre = std::polar(1.0, out.center * b_j * dt);
        if (j & 1) pre = -pre;
        work[j] = values[j] * pre;
    }
    detail::fft_inplace(work, /*inverse=*/true);

    const double scale = dt / std::sqrt(kTwoPi);
    const cdouble corner = quarter_turn_phase(n, -1.0);  // exp(+i pi n / 2)
    const cdouble center_phase = std::polar(1.0, out.center * tgrid.center);
    cvector result(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a_k = static_cast<double>(k) - static_cast<double>(n) / 2.0;
        cdouble post = scale * corner * center_phase * std::polar(1.0, a_k * out.step() * tgrid.center);
        if (k & 1) post = -post;
        result[k] = work[k] * post;
    }
    return result;
}

cvector time_to_frequency_direct(std::span<const cdouble> values, const TimeGrid& tgrid,
                                 const FrequencyGrid& out) {
    if (values.size() != tgrid.n) {
        throw dimension_error("time_to_frequency_direct: sample/grid length mismatch");
    }
    const double scale = tgrid.step() / std::sqrt(kTwoPi);
    cvector result(out.n, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < out.n; ++k) {
        const double w = out.sample(k);
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < tgrid.n; ++j) {
            acc += values[j] * std::polar(1.0, w * tgrid.sample(j));
        }
        result[k] = acc * scale;
    }
    return result;
}

}  // namespace homsim
