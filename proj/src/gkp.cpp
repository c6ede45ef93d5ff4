#include "homsim/gkp.hpp"

#include <cmath>
#include <string>

#include "homsim/errors.hpp"
#include "homsim/hom.hpp"

namespace homsim {

namespace {

cvector comb_values(double offset, double spacing2, double tooth_width, double envelope_width,
                    const FrequencyGrid& grid, std::size_t* teeth_out) {
    const double half_span = grid.span / 2.0;
    cvector vals(grid.n, cdouble(0.0, 0.0));
    std::size_t teeth = 0;
    const double reach = envelope_width > 0.0 ? std::min(half_span, 4.0 * envelope_width) : half_span;
    const auto n_min = static_cast<long long>(std::ceil((-reach - offset) / spacing2));
    const auto n_max = static_cast<long long>(std::floor((reach - offset) / spacing2));
    for (long long n = n_min; n <= n_max; ++n) {
        const double c = offset + static_cast<double>(n) * spacing2;
        const double weight =
            envelope_width > 0.0 ? std::exp(-c * c / (2.0 * envelope_width * envelope_width)) : 1.0;
        ++teeth;
        for (std::size_t k = 0; k < grid.n; ++k) {
            const double d = grid.sample(k) - grid.center - c;
            vals[k] += weight * std::exp(-d * d / (2.0 * tooth_width * tooth_width));
        }
    }
    if (teeth_out) *teeth_out = teeth;
    return vals;
}

}  // namespace

CombState encode(LogicalLabel label, double tooth_spacing, double tooth_width, double envelope_width,
                 const FrequencyGrid& grid) {
    if (!(tooth_spacing > 0.0) || !(tooth_width > 0.0)) {
        throw config_error("encode: tooth spacing and width must be positive");
    }
    if (!(tooth_width < tooth_spacing / 4.0)) {
        throw config_error("encode: teeth are not resolvable, need s < spacing/4");
    }
    if (grid.step() > tooth_width / 8.0) {
        throw resolution_error("encode: grid step " + std::to_string(grid.step()) +
                               " does not resolve teeth of width " + std::to_string(tooth_width));
    }

    const double spacing2 = 2.0 * tooth_spacing;
    std::size_t teeth = 0;
    cvector vals;
    switch (label) {
        case LogicalLabel::Zero:
        case LogicalLabel::Raw:
            vals = comb_values(0.0, spacing2, tooth_width, envelope_width, grid, &teeth);
            break;
        case LogicalLabel::One:
            vals = comb_values(tooth_spacing, spacing2, tooth_width, envelope_width, grid, &teeth);
            break;
        case LogicalLabel::Plus:
        case LogicalLabel::Minus: {
            std::size_t teeth_zero = 0, teeth_one = 0;
            cvector zero = comb_values(0.0, spacing2, tooth_width, envelope_width, grid, &teeth_zero);
            const cvector one = comb_values(tooth_spacing, spacing2, tooth_width, envelope_width, grid, &teeth_one);
            const double sign = label == LogicalLabel::Plus ? 1.0 : -1.0;
            for (std::size_t k = 0; k < grid.n; ++k) zero[k] += sign * one[k];
            vals = std::move(zero);
            teeth = teeth_zero + teeth_one;
            break;
        }
    }
    if (teeth < 8) {
        throw resolution_error("encode: only " + std::to_string(teeth) +
                               " teeth fit the envelope/grid, need >= 8");
    }
    CombState out;
    out.amplitude = normalize(SpectralAmplitude(grid, std::move(vals)));
    out.tooth_spacing = tooth_spacing;
    out.tooth_width = tooth_width;
    out.envelope_width = envelope_width;
    out.label = label;
    return out;
}

CombState periodic_delta_comb(const FrequencyGrid& grid, double tooth_spacing, double offset) {
    if (!(tooth_spacing > 0.0)) throw config_error("periodic_delta_comb: spacing must be positive");
    const double step = grid.step();
    const double spacing_bins = tooth_spacing / step;
    const double offset_bins = offset / step;
    const double period_bins = 2.0 * spacing_bins;
    if (std::abs(spacing_bins - std::round(spacing_bins)) > 1e-9 ||
        std::abs(offset_bins - std::round(offset_bins)) > 1e-9) {
        throw config_error("periodic_delta_comb: spacing and offset must be grid-step multiples");
    }
    const double span_periods = grid.span / (2.0 * tooth_spacing);
    if (std::abs(span_periods - std::round(span_periods)) > 1e-9) {
        throw config_error("periodic_delta_comb: span must be a multiple of the logical period");
    }
    cvector vals(grid.n, cdouble(0.0, 0.0));
    const auto period = static_cast<std::size_t>(std::llround(period_bins));
    // Teeth sit where sample(k) - center == offset (mod 2*spacing), i.e.
    // k == n/2 + offset_bins (mod period).
    const long long base = static_cast<long long>(grid.n / 2) + std::llround(offset_bins);
    const auto start = static_cast<std::size_t>(
        ((base % static_cast<long long>(period)) + static_cast<long long>(period)) %
        static_cast<long long>(period));
    for (std::size_t k = start; k < grid.n; k += period) vals[k] = {1.0, 0.0};
    CombState out;
    out.amplitude = normalize(SpectralAmplitude(grid, std::move(vals)));
    out.tooth_spacing = tooth_spacing;
    out.tooth_width = 0.0;
    out.envelope_width = 0.0;
    out.label = LogicalLabel::Raw;
    return out;
}

CombState apply_gate(const CombState& state, const ShiftGate& gate) {
    CombState out = state;
    out.label = LogicalLabel::Raw;
    if (gate.kind == ShiftGate::Kind::TimeShift) {
        for (std::size_t k = 0; k < state.amplitude.grid.n; ++k) {
            out.amplitude.values[k] =
                state.amplitude.values[k] * std::polar(1.0, state.amplitude.grid.sample(k) * gate.amount);
        }
        return out;
    }
    const bool periodic = state.envelope_width <= 0.0;
    if (!periodic) {
        const double loss = wrap_loss_fraction(state.amplitude, gate.amount);
        if (loss > 0.01) {
            throw accuracy_error("apply_gate: frequency shift wraps " + std::to_string(loss * 100.0) +
                                 "% of the state around the lattice");
        }
    }
    out.amplitude = shift_frequency(state.amplitude, gate.amount);
    return out;
}

cdouble logical_overlap(const CombState& a, const CombState& b) {
    if (!(a.amplitude.grid == b.amplitude.grid)) {
        throw dimension_error("logical_overlap: comb states live on different grids");
    }
    cdouble acc(0.0, 0.0);
    for (std::size_t k = 0; k < a.amplitude.grid.n; ++k) {
        acc += std::conj(a.amplitude.values[k]) * b.amplitude.values[k];
    }
    return acc * a.amplitude.grid.step();
}

std::vector<double> hom_readout(const CombState& a, const CombState& b, const TimeGrid& tau_grid) {
    if (!(a.amplitude.grid == b.amplitude.grid)) {
        throw dimension_error("hom_readout: comb states live on different grids");
    }
    // Sum/difference coordinates carry the readout: `a` plays the energy
    // envelope, `b` the phase-matching comb. A literal photon product would
    // cap the coincidence at 1/2; the entangled pair state is what sweeps the
    // full [0, 1] range as the delay walks the comb.
    const JointSpectralAmplitude jsa =
        jsa_from_pm(normalize(a.amplitude), normalize(b.amplitude), PMConvention::SumDifference);
    return hom_scan(jsa, tau_grid);
}

}  // namespace homsim
