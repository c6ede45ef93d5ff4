#include "homsim/pump.hpp"

#include <cmath>
#include <string>

#include "homsim/errors.hpp"
#include "homsim/grid.hpp"
#include "homsim/warnings.hpp"

namespace homsim {

DeviceConfig::DeviceConfig(double L, double v_g, double omega_p, double theta_deg, double c)
    : length(L), group_velocity(v_g), pump_frequency(omega_p), degeneracy_angle(theta_deg), light_speed(c) {
    if (!(L > 0.0) || !(v_g > 0.0) || !(omega_p > 0.0) || !(c > 0.0)) {
        throw config_error("DeviceConfig: L, v_g, omega_p and c must be positive");
    }
}

CavityConfig::CavityConfig(double R, double tau_bar, Detuning d)
    : reflectivity(R), roundtrip_time(tau_bar), detuning(d) {
    if (R < 0.0 || R >= 1.0) throw config_error("CavityConfig: need 0 <= R < 1");
    if (!(tau_bar > 0.0)) throw config_error("CavityConfig: roundtrip time must be positive");
}

AxialGrid make_axial_grid(const DeviceConfig& device, const std::vector<PumpBeam>& beams,
                          std::size_t n_samples) {
    if (beams.empty()) throw config_error("make_axial_grid: empty beam list");
    double k_max = 0.0;
    for (const PumpBeam& b : beams) {
        k_max = std::max(k_max, std::abs(device.pump_wavenumber() * std::sin(b.angle)));
    }
    if (k_max > 0.0) {
        const double carrier_wavelength = kTwoPi / k_max;
        const double required = 8.0 * device.length / carrier_wavelength;
        if (static_cast<double>(n_samples) < required) {
            throw resolution_error("make_axial_grid: need >= " + std::to_string(required) +
                                   " samples to resolve the pump carrier, got " + std::to_string(n_samples));
        }
    }
    return AxialGrid{n_samples, device.length};
}

cvector pump_profile(const std::vector<PumpBeam>& beams, const DeviceConfig& device, const AxialGrid& z) {
    if (beams.empty()) throw config_error("pump_profile: empty beam list");
    const double k = device.pump_wavenumber();
    cvector out(z.n, cdouble(0.0, 0.0));
    for (const PumpBeam& b : beams) {
        if (!(b.waist > 0.0)) throw config_error("pump_profile: beam waist must be positive");
        const double cos2 = std::cos(b.angle) * std::cos(b.angle);
        const double carrier = k * std::sin(b.angle);
        for (std::size_t i = 0; i < z.n; ++i) {
            const double zi = z.sample(i);
            const double envelope = std::exp(-(zi - b.position) * (zi - b.position) * cos2 / (b.waist * b.waist));
            out[i] += b.amplitude * envelope * std::polar(1.0, carrier * zi);
        }
    }
    return out;
}

SpectralAmplitude phase_matching_amplitude(const cvector& profile, const AxialGrid& z,
                                           const DeviceConfig& device, const FrequencyGrid& out_grid) {
    if (profile.size() != z.n) throw dimension_error("phase_matching_amplitude: profile/grid mismatch");
    const double k_deg = device.k_degenerate();
    const double dz = z.step();
    cvector vals(out_grid.n, cdouble(0.0, 0.0));
    for (std::size_t m = 0; m < out_grid.n; ++m) {
        const double kappa = k_deg + out_grid.sample(m) / device.group_velocity;
        cdouble acc(0.0, 0.0);
        for (std::size_t i = 0; i < z.n; ++i) {
            acc += profile[i] * std::polar(1.0, -kappa * z.sample(i));
        }
        vals[m] = acc * dz;
    }
    return normalize(SpectralAmplitude(out_grid, std::move(vals)));
}

SpectralAmplitude phase_matching_amplitude_fft(const cvector& profile, const AxialGrid& z,
                                               const DeviceConfig& device) {
    if (profile.size() != z.n) throw dimension_error("phase_matching_amplitude_fft: profile/grid mismatch");
    // f-(w) = Integral Phi(z) e^{-i k_deg z} e^{-i z w / v_g} dz. Treating
    // zeta = z / v_g as the conjugate variable makes this the fixed-convention
    // forward transform on a pseudo frequency lattice of step dz (values
    // become "spectral" samples), with the output lattice scaled by v_g.
    const double k_deg = device.k_degenerate();
    cvector weighted(z.n);
    for (std::size_t i = 0; i < z.n; ++i) {
        weighted[i] = profile[i] * std::polar(1.0, -k_deg * z.sample(i));
    }
    const FrequencyGrid pseudo(z.n, 0.0, z.length / device.group_velocity);
    auto [transformed, dual] = fourier_to_time(weighted, pseudo);
    const FrequencyGrid out(z.n, 0.0, dual.span);
    return normalize(SpectralAmplitude(out, std::move(transformed)));
}

SpectralAmplitude fminus_from_beams(const std::vector<PumpBeam>& beams, const DeviceConfig& device,
                                    const FrequencyGrid& out_grid, std::size_t n_z) {
    const AxialGrid z = make_axial_grid(device, beams, n_z);
    double outside = 0.0;
    double total = 0.0;
    for (const PumpBeam& b : beams) {
        const double sigma = b.waist / (2.0 * std::cos(b.angle));  // |envelope|^2 std dev
        const double weight = std::norm(b.amplitude);
        const double upper = (device.length / 2.0 - b.position) / (std::sqrt(2.0) * sigma);
        const double lower = (-device.length / 2.0 - b.position) / (std::sqrt(2.0) * sigma);
        outside += weight * 0.5 * (std::erfc(upper) + std::erfc(-lower));
        total += weight;
    }
    if (total > 0.0 && outside / total > 1e-6) {
        warnings::emit("fminus_from_beams: about " + std::to_string(outside / total * 100.0) +
                       "% of the pump footprint lies outside the interaction region");
    }
    const cvector profile = pump_profile(beams, device, z);
    return phase_matching_amplitude(profile, z, device, out_grid);
}

GaussianFminusParams gaussian_fminus_params(const PumpBeam& beam, const DeviceConfig& device) {
    GaussianFminusParams p;
    const double k = device.pump_wavenumber();
    p.omega_center = (k * std::sin(beam.angle) - device.k_degenerate()) * device.group_velocity;
    p.tau0 = beam.position / device.group_velocity;
    p.width = 2.0 * device.group_velocity * std::cos(beam.angle) / beam.waist;
    return p;
}

SpectralAmplitude gaussian_fminus(const PumpBeam& beam, const DeviceConfig& device,
                                  const FrequencyGrid& out_grid) {
    if (!(beam.waist > 0.0)) throw config_error("gaussian_fminus: beam waist must be positive");
    if (beam.waist > device.length / 8.0) {
        warnings::emit("gaussian_fminus: waist is not small against the waveguide; closed form degrades");
    }
    const GaussianFminusParams p = gaussian_fminus_params(beam, device);
    const double half_span = out_grid.span / 2.0;
    // |f|^2 has standard deviation width/2; ask for 10 of them on the grid.
    if (std::abs(p.omega_center - out_grid.center) + 5.0 * (p.width / 2.0) > half_span) {
        warnings::emit("gaussian_fminus: grid covers fewer than 10 standard deviations of the state");
    }
    cvector vals(out_grid.n);
    for (std::size_t m = 0; m < out_grid.n; ++m) {
        const double w = out_grid.sample(m);
        const double d = (w - p.omega_center) / p.width;
        vals[m] = beam.amplitude * std::exp(-d * d) * std::polar(1.0, (p.omega_center - w) * p.tau0);
    }
    return normalize(SpectralAmplitude(out_grid, std::move(vals)));
}

namespace {

SpectralAmplitude superpose_fminus(const std::vector<PumpBeam>& beams, const DeviceConfig& device,
                                   const FrequencyGrid& out_grid, const char* who) {
    std::vector<SpectralAmplitude> parts;
    parts.reserve(beams.size());
    for (const PumpBeam& b : beams) {
        PumpBeam unit = b;
        unit.amplitude = {1.0, 0.0};
        parts.push_back(gaussian_fminus(unit, device, out_grid));
    }
    double defect = 0.0;
    for (std::size_t a = 0; a + 1 < parts.size(); ++a) {
        for (std::size_t b = a + 1; b < parts.size(); ++b) {
            cdouble overlap(0.0, 0.0);
            for (std::size_t m = 0; m < out_grid.n; ++m) {
                overlap += std::conj(parts[a].values[m]) * parts[b].values[m];
            }
            defect = std::max(defect, std::abs(overlap) * out_grid.step());
        }
    }
    if (defect > 1e-3) {
        warnings::emit(std::string(who) + ": component overlap " + std::to_string(defect) +
                       " (superposition is not orthogonal)");
    }
    cvector vals(out_grid.n, cdouble(0.0, 0.0));
    for (std::size_t p = 0; p < parts.size(); ++p) {
        for (std::size_t m = 0; m < out_grid.n; ++m) {
            vals[m] += beams[p].amplitude * parts[p].values[m];
        }
    }
    return normalize(SpectralAmplitude(out_grid, std::move(vals)));
}

}  // namespace

SpectralAmplitude cat_fminus(const PumpBeam& beam_a, const PumpBeam& beam_b, const DeviceConfig& device,
                             const FrequencyGrid& out_grid) {
    return superpose_fminus({beam_a, beam_b}, device, out_grid, "cat_fminus");
}

SpectralAmplitude compass_fminus(const std::array<PumpBeam, 4>& beams, const DeviceConfig& device,
                                 const FrequencyGrid& out_grid) {
    return superpose_fminus({beams.begin(), beams.end()}, device, out_grid, "compass_fminus");
}

SpectralAmplitude cavity_comb(const SpectralAmplitude& f, const CavityConfig& cavity) {
    const double R = cavity.reflectivity;
    if (R == 0.0) return normalize(f);
    const double tooth_spacing = kTwoPi / (cavity.roundtrip_time / 2.0);
    if (f.grid.step() > tooth_spacing / 16.0) {
        throw resolution_error("cavity_comb: grid step " + std::to_string(f.grid.step()) +
                               " does not resolve the comb (need <= " + std::to_string(tooth_spacing / 16.0) +
                               ")");
    }
    const double phi = cavity.detuning == CavityConfig::Detuning::Resonant ? 0.0 : kPi;
    SpectralAmplitude out = f;
    for (std::size_t m = 0; m < f.grid.n; ++m) {
        const double theta = f.grid.sample(m) * cavity.roundtrip_time / 2.0 + phi;
        const double airy = (1.0 - R) * (1.0 - R) / (1.0 + R * R - 2.0 * R * std::cos(theta));
        out.values[m] *= airy;
    }
    return normalize(out);
}

double cavity_echo_amplitude(const CavityConfig& cavity, int k) {
    const double mag = std::pow(cavity.reflectivity, std::abs(k));
    if (cavity.detuning == CavityConfig::Detuning::AntiResonant && (std::abs(k) % 2 == 1)) return -mag;
    return mag;
}

SpectralAmplitude fplus_from_pump_spectrum(const SpectralAmplitude& spectrum) {
    return normalize(spectrum);
}

}  // namespace homsim
