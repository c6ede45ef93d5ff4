#pragma once

#include <vector>

#include "homsim/amplitude.hpp"
#include "homsim/grid.hpp"

namespace homsim {

/// Coincidence probability over a (mu, tau) lattice. Row-major with rows
/// indexed by tau ascending and columns by mu ascending, matching the CSV
/// matrix layout emitted by the CLI.
struct CoincidenceMap {
    FrequencyGrid mu_grid;
    TimeGrid tau_grid;
    std::vector<double> values;  // size tau_grid.n * mu_grid.n

    double& at(std::size_t tau_index, std::size_t mu_index) {
        return values[tau_index * mu_grid.n + mu_index];
    }
    double at(std::size_t tau_index, std::size_t mu_index) const {
        return values[tau_index * mu_grid.n + mu_index];
    }
};

/// Physical frequency displacement applied to arm 2 for a requested
/// phase-space mu. The factor of two is the half-difference-axis calibration:
/// with it, C(mu, tau) = 1/2 - 1/2 * W-(mu, tau) holds exactly for states
/// built from half-difference (w+, w-) factors, with W- the chronocyclic
/// Wigner function of the w- factor. Pinned by tests on both evaluation paths.
inline constexpr double kArmShiftPerMu = 2.0;

/// Applies the interferometer dials to a joint amplitude: the arm-1 delay
/// phase exp(i*w1*tau) and an arm-2 spectral displacement by `delta` (exact
/// circular shift). More than 1% of wrapped norm raises accuracy_error.
JointSpectralAmplitude apply_delay_and_shift(const JointSpectralAmplitude& jsa, double tau, double delta);

/// Coincidence probability at one phase-space point:
///   C = 1/2 - 1/2 * Re sum f'(w1,w2) conj(f'(w2,w1)) dw1 dw2
/// with f' the dialed amplitude (tau on arm 1, kArmShiftPerMu * mu on arm 2).
/// Requires a normalized square-grid amplitude. Raw values outside [0,1] by
/// more than 1e-6 raise accuracy_error; inside that band they are clamped.
double coincidence(const JointSpectralAmplitude& jsa, const PhaseSpacePoint& point);

/// Coincidence versus tau at fixed mu. Identical arithmetic to coincidence().
std::vector<double> hom_scan(const JointSpectralAmplitude& jsa, const TimeGrid& tau_grid, double mu = 0.0);

/// Full (mu, tau) sweep, cells computed independently (deterministic for any
/// thread count).
CoincidenceMap coincidence_map(const JointSpectralAmplitude& jsa, const FrequencyGrid& mu_grid,
                               const TimeGrid& tau_grid, unsigned threads = 1);

/// Dip of two independent identical photons, evaluated in the time domain:
///   C(tau) = 1/2 * (1 - |Integral gt(t) conj(gt(t - tau)) dt|^2)
/// with gt = fourier_to_time(g). Phase-independent by construction.
std::vector<double> independent_source_dip(const SpectralAmplitude& g, const TimeGrid& tau_grid);

/// Windowed-Fourier spectrogram value
///   S(mu, tau) = 1/2 * (1 - |Integral f(w) conj(g(w - mu)) exp(i w tau) dw|^2),
/// in [0, 1/2]. `mu` here is the physical window displacement; it equals the
/// two-photon coincidence of f (x) g at phase-space point (mu / kArmShiftPerMu, tau).
double spectrogram(const SpectralAmplitude& f, const SpectralAmplitude& window, const PhaseSpacePoint& point);

}  // namespace homsim
