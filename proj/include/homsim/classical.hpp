#pragma once

#include <vector>

#include "homsim/amplitude.hpp"
#include "homsim/grid.hpp"

namespace homsim {

/// Distribution of the random relative phase between the two coherent inputs.
struct PhaseDistribution {
    enum class Kind { UniformContinuous, TwoPoint, Fixed };

    Kind kind = Kind::UniformContinuous;
    double phi_a = 0.0;  // Fixed value, or first branch of TwoPoint
    double phi_b = 0.0;  // second branch of TwoPoint (equal weights)

    static PhaseDistribution uniform();
    static PhaseDistribution two_point(double a, double b);
    static PhaseDistribution fixed(double phi);

    /// <exp(i phi)> and <exp(2 i phi)>, evaluated analytically per kind. These
    /// are the only phase moments the correlation formula needs.
    cdouble mean_phase() const;
    cdouble mean_phase_sq() const;
};

/// Coherent-state drive: both arms share the spectral envelope |alpha(w)|,
/// arm 2 carries the random phase. Any finite nonzero norm is allowed.
struct CoherentInput {
    SpectralAmplitude alpha;
    PhaseDistribution phase_dist;
};

/// Normalized intensity correlation between the two output ports at delay t.
///
/// With n0 = Integral |alpha|^2 dw and I1(t) = Integral |alpha|^2 e^{i w t} dw:
///   numerator   = 4 n0^2 - 2 Re[<e^{2 i phi}> I1(t)^2] - 2 |I1(t)|^2
///   denominator = 4 n0^2 - 4 (Re[<e^{i phi}> I1(t)])^2
/// averaged over the phase distribution moment-by-moment (numerator moments
/// and the first-order moment inside the denominator square separately).
/// Fixed-phase inputs make numerator and denominator vanish together at
/// isolated delays; the removable limit value 1 is returned there.
double intensity_correlation(const CoherentInput& input, double t);

std::vector<double> correlation_scan(const CoherentInput& input, const TimeGrid& t_grid);

/// Same with the first-order (phase-dependent) interference term deleted from
/// numerator and denominator:
///   C2(t) = 1 - |I1(t)|^2 / (2 n0^2),
/// independent of the phase distribution, bounded by 1/2 <= C2 <= 1.
double second_order_only_correlation(const CoherentInput& input, double t);

/// (plateau - min) / plateau with the plateau estimated from the outer 10% of
/// samples on each end of the scan. Flat curves give 0.
double visibility(const std::vector<double>& curve);

}  // namespace homsim
