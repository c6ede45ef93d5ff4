#pragma once

#include <vector>

#include "homsim/amplitude.hpp"
#include "homsim/grid.hpp"

namespace homsim {

enum class LogicalLabel { Zero, One, Plus, Minus, Raw };

/// Frequency-comb logical state: Gaussian teeth of width s on a lattice of
/// logical period 2 * tooth_spacing, under a Gaussian envelope
/// (envelope_width <= 0 means a flat, periodic comb).
struct CombState {
    SpectralAmplitude amplitude;
    double tooth_spacing = 0.0;   // Delta [rad/s]
    double tooth_width = 0.0;     // s [rad/s]
    double envelope_width = 0.0;  // [rad/s], 0 = flat
    LogicalLabel label = LogicalLabel::Raw;
};

/// Fixed time/frequency displacement acting on a comb state.
struct ShiftGate {
    enum class Kind { FrequencyShift, TimeShift };
    Kind kind = Kind::FrequencyShift;
    double amount = 0.0;  // rad/s or s

    static ShiftGate frequency_shift(double delta_omega) { return {Kind::FrequencyShift, delta_omega}; }
    static ShiftGate time_shift(double delta_t) { return {Kind::TimeShift, delta_t}; }
    /// Logical Pauli assignments on the square comb lattice: X is a frequency
    /// shift by one tooth spacing, Z a delay of pi / spacing (which flips the
    /// sign of every other tooth).
    static ShiftGate pauli_x(double tooth_spacing) { return frequency_shift(tooth_spacing); }
    static ShiftGate pauli_z(double tooth_spacing) { return time_shift(kPi / tooth_spacing); }
};

/// Builds a logical comb state on `grid`:
///   g(w) = N sum_n E(c_n) G_s(w - center - c_n),  c_n = offset + n * 2 * Delta
/// with offset 0 (Zero) or Delta (One); Plus/Minus are the normalized sum and
/// difference. Preconditions: teeth resolved by >= 8 samples (step <= s/8),
/// s < Delta/4, and at least 8 teeth in reach of the envelope and grid.
CombState encode(LogicalLabel label, double tooth_spacing, double tooth_width, double envelope_width,
                 const FrequencyGrid& grid);

/// Ideal reference comb: flat envelope, one-sample teeth on the exact lattice
/// offset + 2 * spacing * Z, wrapping around the grid. Requires the spacing
/// and offset to be grid-step multiples and the span a multiple of the
/// logical period. This is the infinite-squeezing limit on which the shift
/// gates satisfy the qubit algebra exactly; finite-width teeth degrade the
/// squared gates by the within-tooth phase spread exp(-(pi s / spacing)^2).
CombState periodic_delta_comb(const FrequencyGrid& grid, double tooth_spacing, double offset = 0.0);

/// Applies the displacement exactly (phase multiplication in the conjugate
/// domain); unitary on the lattice, so the norm is preserved to rounding.
/// Frequency shifts pushing more than 1% of the norm around the lattice edge
/// raise accuracy_error unless the comb is flat (periodic combs wrap by
/// construction).
CombState apply_gate(const CombState& state, const ShiftGate& gate);

/// Plain grid inner product <a|b>. Grids must match.
cdouble logical_overlap(const CombState& a, const CombState& b);

/// HOM readout trace of the pair state a SPDC-like source would emit with
/// energy envelope `a` and phase-matching factor `b`: the separable product
/// a (x) b entangled by the frequency beam splitter into sum/difference
/// coordinates, then scanned in delay. Symmetric effective states dip to 0,
/// antisymmetric ones peak at 1.
std::vector<double> hom_readout(const CombState& a, const CombState& b, const TimeGrid& tau_grid);

}  // namespace homsim
