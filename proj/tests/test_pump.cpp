#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "homsim/errors.hpp"
#include "homsim/grid.hpp"
#include "homsim/hom.hpp"
#include "homsim/pump.hpp"
#include "homsim/warnings.hpp"

using namespace homsim;

namespace {

// Scaled test bench: v_g = 1, c = 10, pump at 50 rad/s incident near 0.2 rad.
DeviceConfig test_device() { return DeviceConfig(20.0, 1.0, 50.0, 0.2, 10.0); }

double rms(const cvector& a, const cvector& b) {
    REQUIRE(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace

TEST_CASE("device derives the degeneracy wavenumber") {
    DeviceConfig dev = test_device();
    CHECK(dev.k_degenerate() == doctest::Approx(50.0 * std::sin(0.2) / 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(DeviceConfig(-1.0, 1.0, 50.0, 0.2, 10.0), config_error);
}

TEST_CASE("pump profile: single beam, symmetry, compass linearity") {
    DeviceConfig dev = test_device();
    PumpBeam beam{1.5, dev.degeneracy_angle, 0.0, {1.0, 0.0}};
    AxialGrid z = make_axial_grid(dev, {beam}, 512);
    const cvector phi = pump_profile({beam}, dev, z);
    // Degeneracy-angle beam at the origin: gaussian envelope times the
    // carrier exp(i k_deg z).
    for (std::size_t i = 0; i < z.n; i += 31) {
        const double zi = z.sample(i);
        const double env = std::exp(-zi * zi * std::cos(0.2) * std::cos(0.2) / (1.5 * 1.5));
        const cdouble expected = env * std::polar(1.0, dev.k_degenerate() * zi);
        CHECK(std::abs(phi[i] - expected) < 1e-12);
    }

    PumpBeam left = beam, right = beam;
    left.position = -2.0;
    right.position = 2.0;
    const cvector pair = pump_profile({left, right}, dev, z);
    // z_k = (k - n/2) dz, so the mirror of index i is n - i.
    for (std::size_t i = 1; i < z.n / 2; i += 17) {
        CHECK(std::abs(std::abs(pair[i]) - std::abs(pair[z.n - i])) < 1e-9);
    }

    // Compass = sum of the two cats, exactly.
    PumpBeam up = beam, down = beam;
    up.angle = 0.26;
    down.angle = 0.14;
    const cvector cat_t = pump_profile({left, right}, dev, z);
    const cvector cat_f = pump_profile({up, down}, dev, z);
    const cvector compass = pump_profile({left, right, up, down}, dev, z);
    for (std::size_t i = 0; i < z.n; i += 13) {
        CHECK(std::abs(compass[i] - (cat_t[i] + cat_f[i])) < 1e-12);
    }

    CHECK_THROWS_AS(pump_profile({}, dev, z), config_error);
    CHECK_THROWS_AS(make_axial_grid(dev, {beam}, 16), resolution_error);
}

TEST_CASE("phase matching amplitude matches the gaussian closed form") {
    DeviceConfig dev = test_device();
    PumpBeam beam{1.5, 0.26, 1.5, {1.0, 0.0}};
    FrequencyGrid out(256, 0.0, 12.0);
    SpectralAmplitude numeric = fminus_from_beams({beam}, dev, out, 1024);
    SpectralAmplitude closed = gaussian_fminus(beam, dev, out);
    CHECK(rms(numeric.values, closed.values) < 1e-4);

    const GaussianFminusParams p = gaussian_fminus_params(beam, dev);
    CHECK(p.tau0 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(p.omega_center == doctest::Approx(5.0 * std::sin(0.26) - dev.k_degenerate()).epsilon(1e-12));
    CHECK(p.width == doctest::Approx(2.0 * std::cos(0.26) / 1.5).epsilon(1e-12));

    // Centroid of |f-|^2 sits at omega_center, width at the closed-form value.
    double mass = 0.0, mean = 0.0, var = 0.0;
    for (std::size_t k = 0; k < out.n; ++k) {
        const double p2 = std::norm(numeric.values[k]);
        mass += p2;
        mean += p2 * out.sample(k);
    }
    mean /= mass;
    for (std::size_t k = 0; k < out.n; ++k) {
        var += std::norm(numeric.values[k]) * (out.sample(k) - mean) * (out.sample(k) - mean);
    }
    var /= mass;
    CHECK(std::abs(mean - p.omega_center) < 1e-6);
    CHECK(std::abs(2.0 * std::sqrt(var) - p.width) / p.width < 1e-4);
}

TEST_CASE("constant profile gives a sinc with zeros at 2 pi v_g / L") {
    DeviceConfig dev = test_device();
    AxialGrid z{4096, dev.length};
    cvector flat(z.n);
    for (std::size_t i = 0; i < z.n; ++i) {
        flat[i] = std::polar(1.0, dev.k_degenerate() * z.sample(i));
    }
    FrequencyGrid out(512, 0.0, 8.0);
    SpectralAmplitude f = phase_matching_amplitude(flat, z, dev, out);
    // First zero of sin(w L / (2 v_g)) / w at w = 2 pi v_g / L.
    const double zero = kTwoPi * dev.group_velocity / dev.length;
    const auto probe = [&](double w) {
        std::size_t best = 0;
        double dist = 1e300;
        for (std::size_t k = 0; k < out.n; ++k) {
            if (std::abs(out.sample(k) - w) < dist) {
                dist = std::abs(out.sample(k) - w);
                best = k;
            }
        }
        return std::abs(f.values[best]);
    };
    double peak_abs = 0.0;
    for (const cdouble& v : f.values) peak_abs = std::max(peak_abs, std::abs(v));
    CHECK(probe(zero) < 0.02 * peak_abs);
    CHECK(probe(-zero) < 0.02 * peak_abs);
    CHECK(probe(zero * 0.5) > 0.5 * peak_abs);
}

TEST_CASE("two distant beams give orthogonal phase-matching states") {
    DeviceConfig dev = test_device();
    PumpBeam a{1.0, 0.2, -6.0, {1.0, 0.0}};
    PumpBeam b{1.0, 0.2, 6.0, {1.0, 0.0}};
    FrequencyGrid out(256, 0.0, 16.0);
    SpectralAmplitude fa = fminus_from_beams({a}, dev, out, 1024);
    SpectralAmplitude fb = fminus_from_beams({b}, dev, out, 1024);
    cdouble overlap(0.0, 0.0);
    for (std::size_t k = 0; k < out.n; ++k) overlap += std::conj(fa.values[k]) * fb.values[k];
    overlap *= out.step();
    CHECK(std::abs(overlap) < 0.01);
}

TEST_CASE("fft and quadrature phase matching agree on the dual lattice") {
    DeviceConfig dev = test_device();
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> angle(0.14, 0.3), pos(-3.0, 3.0), waist(0.8, 2.2);
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<PumpBeam> beams;
        const int nb = 1 + rep % 3;
        for (int b = 0; b < nb; ++b) {
            beams.push_back({waist(rng), angle(rng), pos(rng), std::polar(1.0, 0.7 * b)});
        }
        AxialGrid z = make_axial_grid(dev, beams, 1024);
        const cvector profile = pump_profile(beams, dev, z);
        SpectralAmplitude fast = phase_matching_amplitude_fft(profile, z, dev);
        SpectralAmplitude slow = phase_matching_amplitude(profile, z, dev, fast.grid);
        CHECK(rms(fast.values, slow.values) < 1e-10);
    }
}

TEST_CASE("gaussian_fminus shift and angle covariance") {
    DeviceConfig dev = test_device();
    FrequencyGrid out(256, 0.0, 12.0);
    PumpBeam base{1.5, 0.2, 0.0, {1.0, 0.0}};
    SpectralAmplitude f0 = gaussian_fminus(base, dev, out);
    PumpBeam moved = base;
    moved.position = 2.5;
    SpectralAmplitude f1 = gaussian_fminus(moved, dev, out);
    // Translation multiplies by exp(-i w dz / v_g) (modulus invariant).
    for (std::size_t k = 0; k < out.n; k += 11) {
        CHECK(std::abs(std::abs(f1.values[k]) - std::abs(f0.values[k])) < 1e-8);
    }
    const double dz = 2.5;
    for (std::size_t k = 0; k < out.n; k += 11) {
        if (std::abs(f0.values[k]) < 1e-6) continue;
        const cdouble ratio = f1.values[k] / f0.values[k];
        const cdouble expected = std::polar(1.0, -out.sample(k) * dz / dev.group_velocity +
                                                     gaussian_fminus_params(moved, dev).omega_center * dz);
        CHECK(std::abs(ratio - expected) < 1e-8);
    }

    // Centroid moves linearly with (k sin theta - k_deg) v_g.
    for (double dtheta : {0.01, 0.02, 0.04}) {
        PumpBeam tilted = base;
        tilted.angle = 0.2 + dtheta;
        SpectralAmplitude ft = gaussian_fminus(tilted, dev, out);
        double mass = 0.0, mean = 0.0;
        for (std::size_t k = 0; k < out.n; ++k) {
            mass += std::norm(ft.values[k]);
            mean += std::norm(ft.values[k]) * out.sample(k);
        }
        mean /= mass;
        const double predicted = gaussian_fminus_params(tilted, dev).omega_center;
        CHECK(std::abs(mean - predicted) / std::abs(predicted) < 0.01);
    }
}

TEST_CASE("pump superpositions: time cat fringes and frequency cat lobes") {
    DeviceConfig dev = test_device();
    FrequencyGrid out(512, 0.0, 12.0);

    PumpBeam a{1.0, 0.2, -4.0, {1.0, 0.0}};
    PumpBeam b{1.0, 0.2, 4.0, {1.0, 0.0}};
    SpectralAmplitude tcat = cat_fminus(a, b, dev, out);
    // |f-| fringes with period 2 pi v_g / |za - zb|.
    const double period = kTwoPi * dev.group_velocity / 8.0;
    // Track the interference nulls: unlike the maxima they are not pulled
    // around by the envelope slope.
    std::vector<double> mags(out.n);
    double peak = 0.0;
    for (std::size_t k = 0; k < out.n; ++k) {
        mags[k] = std::abs(tcat.values[k]);
        peak = std::max(peak, mags[k]);
    }
    std::vector<double> nulls;
    for (std::size_t k = 1; k + 1 < out.n; ++k) {
        if (mags[k] < mags[k - 1] && mags[k] < mags[k + 1] && mags[k] < 0.15 * peak) {
            // |f|^2 is locally quadratic around a null; fit its vertex.
            const double p0 = mags[k - 1] * mags[k - 1];
            const double p1 = mags[k] * mags[k];
            const double p2 = mags[k + 1] * mags[k + 1];
            const double denom = p0 - 2.0 * p1 + p2;
            const double off = denom != 0.0 ? 0.5 * (p0 - p2) / denom : 0.0;
            nulls.push_back(out.sample(k) + off * out.step());
        }
    }
    REQUIRE(nulls.size() >= 4);
    for (std::size_t i = 1; i < nulls.size(); ++i) {
        CHECK(std::abs((nulls[i] - nulls[i - 1]) - period) / period < 0.02);
    }

    // Frequency cat: two lobes centered on the two closed-form centers.
    PumpBeam up{4.0, 0.26, 0.0, {1.0, 0.0}};
    PumpBeam down{4.0, 0.14, 0.0, {1.0, 0.0}};
    SpectralAmplitude fcat = cat_fminus(up, down, dev, out);
    const double c_up = gaussian_fminus_params(up, dev).omega_center;
    const double c_down = gaussian_fminus_params(down, dev).omega_center;
    double peak_up = 0.0, peak_down = 0.0;
    for (std::size_t k = 0; k < out.n; ++k) {
        const double w = out.sample(k);
        if (std::abs(w - c_up) < 0.1) peak_up = std::max(peak_up, std::abs(fcat.values[k]));
        if (std::abs(w - c_down) < 0.1) peak_down = std::max(peak_down, std::abs(fcat.values[k]));
    }
    double global_peak = 0.0;
    for (const cdouble& v : fcat.values) global_peak = std::max(global_peak, std::abs(v));
    CHECK(peak_up > 0.9 * global_peak);
    CHECK(peak_down > 0.9 * global_peak);

    // Equal-amplitude orthogonal cat: each component carries 1/sqrt(2).
    cdouble comp_overlap(0.0, 0.0);
    PumpBeam a_unit = a;
    a_unit.amplitude = {1.0, 0.0};
    SpectralAmplitude ga = gaussian_fminus(a_unit, dev, out);
    for (std::size_t k = 0; k < out.n; ++k) comp_overlap += std::conj(ga.values[k]) * tcat.values[k];
    comp_overlap *= out.step();
    CHECK(std::abs(std::abs(comp_overlap) - 1.0 / std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("compass superposition carries four quarter-weight components") {
    // Two impact points times two tilts: a 2x2 lattice of nearly orthogonal
    // displaced components.
    warnings::Capture muted;
    DeviceConfig dev = test_device();
    FrequencyGrid out(512, 0.0, 16.0);
    const std::array<PumpBeam, 4> beams = {{{2.0, 0.45, -4.0, {1.0, 0.0}},
                                            {2.0, -0.05, -4.0, {1.0, 0.0}},
                                            {2.0, 0.45, 4.0, {1.0, 0.0}},
                                            {2.0, -0.05, 4.0, {1.0, 0.0}}}};
    SpectralAmplitude compass = compass_fminus(beams, dev, out);
    CHECK(compass.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (const PumpBeam& b : beams) {
        PumpBeam unit = b;
        unit.amplitude = {1.0, 0.0};
        SpectralAmplitude comp = gaussian_fminus(unit, dev, out);
        cdouble overlap(0.0, 0.0);
        for (std::size_t k = 0; k < out.n; ++k) overlap += std::conj(comp.values[k]) * compass.values[k];
        overlap *= out.step();
        CHECK(std::abs(overlap) > 0.45);
        CHECK(std::abs(overlap) < 0.55);
    }
}

TEST_CASE("linearity of the phase matching integral") {
    DeviceConfig dev = test_device();
    PumpBeam a{1.5, 0.22, -2.0, {1.0, 0.0}};
    PumpBeam b{1.2, 0.18, 2.5, {1.0, 0.0}};
    AxialGrid z = make_axial_grid(dev, {a, b}, 1024);
    FrequencyGrid out(128, 0.0, 12.0);

    const cvector pa = pump_profile({a}, dev, z);
    const cvector pb = pump_profile({b}, dev, z);
    cvector sum(z.n);
    for (std::size_t i = 0; i < z.n; ++i) sum[i] = pa[i] + pb[i];

    // Unnormalized integrals add exactly; compare through the raw sums.
    const double k_deg = dev.k_degenerate();
    const auto raw = [&](const cvector& prof, double w) {
        cdouble acc(0.0, 0.0);
        const double kappa = k_deg + w / dev.group_velocity;
        for (std::size_t i = 0; i < z.n; ++i) acc += prof[i] * std::polar(1.0, -kappa * z.sample(i));
        return acc * z.step();
    };
    for (double w : {-3.0, 0.0, 1.7}) {
        const cdouble lhs = raw(sum, w);
        const cdouble rhs = raw(pa, w) + raw(pb, w);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    }
    (void)out;
}

TEST_CASE("cavity comb: identity at R=0, echoes at R=0.3") {
    FrequencyGrid g(1024, 0.0, 64.0);
    cvector vals(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double w = g.sample(k);
        vals[k] = std::exp(-w * w / (2.0 * 8.0 * 8.0));
    }
    SpectralAmplitude f = normalize(SpectralAmplitude(g, std::move(vals)));

    CavityConfig off(0.0, kTwoPi, CavityConfig::Detuning::Resonant);
    SpectralAmplitude same = cavity_comb(f, off);
    for (std::size_t k = 0; k < g.n; ++k) CHECK(std::abs(same.values[k] - f.values[k]) < 1e-12);

    CavityConfig cav(0.3, kTwoPi, CavityConfig::Detuning::Resonant);
    SpectralAmplitude combed = cavity_comb(f, cav);
    auto [gt, tg] = fourier_to_time(combed.values, combed.grid);

    // Echo at +- tau_bar/2 with amplitude ratio R against the main peak.
    const auto mag_at = [&](double t) {
        std::size_t best = 0;
        double dist = 1e300;
        for (std::size_t j = 0; j < tg.n; ++j) {
            if (std::abs(tg.sample(j) - t) < dist) {
                dist = std::abs(tg.sample(j) - t);
                best = j;
            }
        }
        return std::abs(gt[best]);
    };
    const double main_peak = mag_at(0.0);
    const double echo_plus = mag_at(kPi);
    const double echo_minus = mag_at(-kPi);
    CHECK(std::abs(echo_plus / main_peak - 0.3) < 0.01);
    CHECK(std::abs(echo_minus / main_peak - 0.3) < 0.01);
    CHECK(cavity_echo_amplitude(cav, 1) == doctest::Approx(0.3));
    CHECK(cavity_echo_amplitude(cav, -2) == doctest::Approx(0.09));

    // Anti-resonant: odd echoes flip sign (check the complex amplitude phase).
    CavityConfig anti(0.3, kTwoPi, CavityConfig::Detuning::AntiResonant);
    SpectralAmplitude combed_anti = cavity_comb(f, anti);
    auto [gt_anti, tg2] = fourier_to_time(combed_anti.values, combed_anti.grid);
    std::size_t idx_echo = 0;
    double dist = 1e300;
    for (std::size_t j = 0; j < tg2.n; ++j) {
        if (std::abs(tg2.sample(j) - kPi) < dist) {
            dist = std::abs(tg2.sample(j) - kPi);
            idx_echo = j;
        }
    }
    std::size_t idx_main = 0;
    dist = 1e300;
    for (std::size_t j = 0; j < tg2.n; ++j) {
        if (std::abs(tg2.sample(j)) < dist) {
            dist = std::abs(tg2.sample(j));
            idx_main = j;
        }
    }
    const double rel_phase = std::arg(gt_anti[idx_echo] / gt_anti[idx_main]);
    CHECK(std::abs(std::abs(rel_phase) - kPi) < 1e-6);
    CHECK(cavity_echo_amplitude(anti, 1) == doctest::Approx(-0.3));

    // Resolution guard: coarse grid refuses the comb.
    FrequencyGrid coarse(64, 0.0, 64.0);
    cvector cv(coarse.n, cdouble(1.0, 0.0));
    SpectralAmplitude fc = normalize(SpectralAmplitude(coarse, std::move(cv)));
    CHECK_THROWS_AS(cavity_comb(fc, cav), resolution_error);
}

TEST_CASE("beams leaking past the interaction region raise a truncation warning") {
    DeviceConfig dev = test_device();
    PumpBeam outside{1.5, 0.2, 9.5, {1.0, 0.0}};  // footprint straddles +L/2
    FrequencyGrid out(128, 0.0, 12.0);
    warnings::Capture captured;
    fminus_from_beams({outside}, dev, out, 512);
    bool found = false;
    for (const std::string& w : captured.messages()) {
        found = found || w.find("outside the interaction region") != std::string::npos;
    }
    CHECK(found);
}

TEST_CASE("cat components that overlap are reported") {
    DeviceConfig dev = test_device();
    FrequencyGrid out(256, 0.0, 12.0);
    PumpBeam a{1.5, 0.2, -0.4, {1.0, 0.0}};
    PumpBeam b{1.5, 0.2, 0.4, {1.0, 0.0}};
    warnings::Capture captured;
    cat_fminus(a, b, dev, out);
    bool found = false;
    for (const std::string& w : captured.messages()) {
        found = found || w.find("not orthogonal") != std::string::npos;
    }
    CHECK(found);
}

TEST_CASE("fplus wrapper normalizes") {
    FrequencyGrid g(64, 0.0, 10.0);
    cvector vals(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double w = g.sample(k);
        vals[k] = 3.7 * std::exp(-w * w / 2.0);
    }
    SpectralAmplitude raw(g, std::move(vals));
    SpectralAmplitude f = fplus_from_pump_spectrum(raw);
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
