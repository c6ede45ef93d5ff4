#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "homsim/amplitude.hpp"
#include "homsim/grid.hpp"

namespace homsim {

/// Waveguide / source parameters. k_degenerate is derived from the pump
/// frequency and the degeneracy incidence angle.
struct DeviceConfig {
    double length = 0.0;            // L [m], interaction region is [-L/2, L/2]
    double group_velocity = 0.0;    // harmonic-mean group velocity of the pair modes [m/s]
    double pump_frequency = 0.0;    // w_p [rad/s]
    double degeneracy_angle = 0.0;  // theta_deg [rad]
    double light_speed = 299792458.0;

    DeviceConfig() = default;
    DeviceConfig(double L, double v_g, double omega_p, double theta_deg, double c = 299792458.0);

    double pump_wavenumber() const { return pump_frequency / light_speed; }  // k = w_p / c
    double k_degenerate() const { return pump_wavenumber() * std::sin(degeneracy_angle); }
};

/// One Gaussian pump beam hitting the waveguide.
struct PumpBeam {
    double waist = 0.0;      // w_p [m]
    double angle = 0.0;      // incidence angle theta [rad]
    double position = 0.0;   // z0 [m]
    cdouble amplitude = {1.0, 0.0};
};

/// Facet cavity parameters. The residual reflectivity imprints a comb on the
/// phase-matching amplitude; `roundtrip_time` is the photon round-trip time.
struct CavityConfig {
    enum class Detuning { Resonant, AntiResonant };
    double reflectivity = 0.0;    // R in [0, 1)
    double roundtrip_time = 0.0;  // tau_bar [s]
    Detuning detuning = Detuning::Resonant;

    CavityConfig() = default;
    CavityConfig(double R, double tau_bar, Detuning d);
};

/// Uniform lattice over the interaction region [-L/2, L/2): z_k = (k - n/2) dz.
struct AxialGrid {
    std::size_t n = 0;
    double length = 0.0;
    double step() const { return length / static_cast<double>(n); }
    double sample(std::size_t k) const {
        return (static_cast<double>(k) - static_cast<double>(n) / 2.0) * step();
    }
};

/// Lattice that resolves every beam's carrier with >= 8 samples per
/// wavelength 2*pi/(k sin theta). Under-resolution of a requested n raises
/// resolution_error instead of aliasing.
AxialGrid make_axial_grid(const DeviceConfig& device, const std::vector<PumpBeam>& beams,
                          std::size_t n_samples);

/// Pump field along the waveguide:
///   Phi(z) = sum_b amp_b exp(-(z - z0_b)^2 cos^2(theta_b) / w_b^2) exp(i k sin(theta_b) z),
/// k = w_p / c. Not normalized. Empty beam list raises config_error.
cvector pump_profile(const std::vector<PumpBeam>& beams, const DeviceConfig& device, const AxialGrid& z);

/// Phase-matching amplitude by direct quadrature over z:
///   f-(w) = Integral_{-L/2}^{L/2} Phi(z) exp(-i (k_deg + w / v_g) z) dz,
/// normalized on out_grid.
SpectralAmplitude phase_matching_amplitude(const cvector& profile, const AxialGrid& z,
                                           const DeviceConfig& device, const FrequencyGrid& out_grid);

/// Same integral by FFT over z, evaluated on the natural dual lattice
/// (returned with the amplitude). Cross-check path for the quadrature route.
SpectralAmplitude phase_matching_amplitude_fft(const cvector& profile, const AxialGrid& z,
                                               const DeviceConfig& device);

/// Convenience wrapper: profile + quadrature, with a truncation warning when
/// a beam's footprint leaks past the interaction region.
SpectralAmplitude fminus_from_beams(const std::vector<PumpBeam>& beams, const DeviceConfig& device,
                                    const FrequencyGrid& out_grid, std::size_t n_z);

/// Closed-form parameters of the single-Gaussian-beam phase-matching
/// amplitude in the long-waveguide limit.
struct GaussianFminusParams {
    double omega_center = 0.0;  // (k sin theta - k_deg) * v_g
    double tau0 = 0.0;          // z0 / v_g
    double width = 0.0;         // 2 v_g cos(theta) / w_p, 1/e half-width of the amplitude
};
GaussianFminusParams gaussian_fminus_params(const PumpBeam& beam, const DeviceConfig& device);

/// Evaluates the closed form
///   f-(w) = N exp(i w0 tau0) exp(-i w tau0) exp(-(w - w0)^2 / width^2)
/// directly (normalized). Warns when the waist is not small against L.
SpectralAmplitude gaussian_fminus(const PumpBeam& beam, const DeviceConfig& device,
                                  const FrequencyGrid& out_grid);

/// Normalized two- and four-component superpositions of gaussian_fminus
/// terms, weighted by the beams' complex amplitudes. The mutual overlap of
/// the components (orthogonality defect) is reported through warnings when
/// it is not negligible.
SpectralAmplitude cat_fminus(const PumpBeam& beam_a, const PumpBeam& beam_b, const DeviceConfig& device,
                             const FrequencyGrid& out_grid);
SpectralAmplitude compass_fminus(const std::array<PumpBeam, 4>& beams, const DeviceConfig& device,
                                 const FrequencyGrid& out_grid);

/// Round-trip comb filter. Multiplies the amplitude by the pair transfer
///   A(w) = (1 - R)^2 / (1 + R^2 - 2 R cos(w tau_bar / 2 + phi)),
/// phi = 0 (Resonant) or pi (AntiResonant), then renormalizes. The time
/// profile acquires echoes at multiples of tau_bar/2 with relative amplitude
/// R^|k|; AntiResonant flips the sign of the odd echoes. The grid must
/// resolve the comb teeth: step <= (2 pi / (tau_bar/2)) / 16.
SpectralAmplitude cavity_comb(const SpectralAmplitude& f, const CavityConfig& cavity);

/// Geometric echo series of the comb filter: relative weight of the echo at
/// delay k * tau_bar / 2 in the amplitude (R^|k|, sign-flipped for odd k when
/// anti-resonant), normalized to the k = 0 echo.
double cavity_echo_amplitude(const CavityConfig& cavity, int k);

/// The energy-conservation factor is the pump spectrum itself; this wrapper
/// just normalizes and exists so scenario files can say where f+ came from.
SpectralAmplitude fplus_from_pump_spectrum(const SpectralAmplitude& spectrum);

}  // namespace homsim
