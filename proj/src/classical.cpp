#include "homsim/classical.hpp"

#include <algorithm>
#include <cmath>

#include "homsim/errors.hpp"

namespace homsim {

PhaseDistribution PhaseDistribution::uniform() { return {Kind::UniformContinuous, 0.0, 0.0}; }

PhaseDistribution PhaseDistribution::two_point(double a, double b) { return {Kind::TwoPoint, a, b}; }

PhaseDistribution PhaseDistribution::fixed(double phi) { return {Kind::Fixed, phi, phi}; }

cdouble PhaseDistribution::mean_phase() const {
    switch (kind) {
        case Kind::UniformContinuous: return {0.0, 0.0};
        case Kind::TwoPoint: return 0.5 * (std::polar(1.0, phi_a) + std::polar(1.0, phi_b));
        case Kind::Fixed: return std::polar(1.0, phi_a);
    }
    throw config_error("PhaseDistribution: unknown kind");
}

cdouble PhaseDistribution::mean_phase_sq() const {
    switch (kind) {
        case Kind::UniformContinuous: return {0.0, 0.0};
        case Kind::TwoPoint: return 0.5 * (std::polar(1.0, 2.0 * phi_a) + std::polar(1.0, 2.0 * phi_b));
        case Kind::Fixed: return std::polar(1.0, 2.0 * phi_a);
    }
    throw config_error("PhaseDistribution: unknown kind");
}

namespace {

struct FirstMoments {
    double n0 = 0.0;   // Integral |alpha|^2 dw
    cdouble i1;        // Integral |alpha|^2 e^{i w t} dw
};

FirstMoments spectral_moments(const CoherentInput& input, double t) {
    FirstMoments m;
    const FrequencyGrid& g = input.alpha.grid;
    cdouble i1(0.0, 0.0);
    double n0 = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
        const double p = std::norm(input.alpha.values[k]);
        n0 += p;
        i1 += p * std::polar(1.0, g.sample(k) * t);
    }
    m.n0 = n0 * g.step();
    m.i1 = i1 * g.step();
    if (!(m.n0 > 1e-150)) throw degenerate_state_error("intensity_correlation: zero-intensity input");
    return m;
}

}  // namespace

double intensity_correlation(const CoherentInput& input, double t) {
    const FirstMoments m = spectral_moments(input, t);
    const double total_sq = 4.0 * m.n0 * m.n0;  // <N>^2 with <N> = 2 n0
    const cdouble mp = input.phase_dist.mean_phase();
    const cdouble mp2 = input.phase_dist.mean_phase_sq();

    const double numerator = total_sq - 2.0 * std::real(mp2 * m.i1 * m.i1) - 2.0 * std::norm(m.i1);
    const double first_order = std::real(mp * m.i1);
    const double denominator = total_sq - 4.0 * first_order * first_order;

    const double eps = 1e-12 * total_sq;
    if (std::abs(denominator) < eps) {
        // Removable 0/0 of deterministic-phase inputs (numerator and
        // denominator coincide for every Fixed phi); the limit value is 1.
        if (std::abs(numerator) < eps) return 1.0;
        throw degenerate_state_error("intensity_correlation: vanishing mean intensity product");
    }
    return numerator / denominator;
}

std::vector<double> correlation_scan(const CoherentInput& input, const TimeGrid& t_grid) {
    std::vector<double> out(t_grid.n);
    for (std::size_t k = 0; k < t_grid.n; ++k) out[k] = intensity_correlation(input, t_grid.sample(k));
    return out;
}

double second_order_only_correlation(const CoherentInput& input, double t) {
    const FirstMoments m = spectral_moments(input, t);
    return 1.0 - std::norm(m.i1) / (2.0 * m.n0 * m.n0);
}

double visibility(const std::vector<double>& curve) {
    if (curve.size() < 3) return 0.0;
    const std::size_t tail = std::max<std::size_t>(1, curve.size() / 10);
    double plateau = 0.0;
    for (std::size_t k = 0; k < tail; ++k) plateau += curve[k] + curve[curve.size() - 1 - k];
    plateau /= static_cast<double>(2 * tail);
    const double minimum = *std::min_element(curve.begin(), curve.end());
    if (std::abs(plateau) < 1e-300) return 0.0;
    return (plateau - minimum) / plateau;
}

}  // namespace homsim
