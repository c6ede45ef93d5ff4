#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "homsim/amplitude.hpp"
#include "homsim/classical.hpp"
#include "homsim/errors.hpp"
#include "homsim/hom.hpp"

using namespace homsim;

namespace {

CoherentInput gaussian_input(const PhaseDistribution& dist, double sigma = 1.0) {
    FrequencyGrid g(256, 0.0, 40.0);
    cvector vals(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double w = g.sample(k);
        vals[k] = 0.8 * std::exp(-w * w / (2.0 * sigma * sigma));  // arbitrary overall power
    }
    return {SpectralAmplitude(g, std::move(vals)), dist};
}

}  // namespace

TEST_CASE("the three reference values at zero delay") {
    CHECK(intensity_correlation(gaussian_input(PhaseDistribution::uniform()), 0.0) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(intensity_correlation(gaussian_input(PhaseDistribution::two_point(0.0, kPi)), 0.0) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(intensity_correlation(gaussian_input(PhaseDistribution::two_point(kPi / 2.0, 3.0 * kPi / 2.0)), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scan visibilities: 1 for the binary phase, 1/2 for uniform") {
    TimeGrid ts(256, 0.0, 30.0);

    const std::vector<double> binary =
        correlation_scan(gaussian_input(PhaseDistribution::two_point(0.0, kPi)), ts);
    CHECK(std::abs(visibility(binary) - 1.0) < 1e-3);

    const std::vector<double> uniform = correlation_scan(gaussian_input(PhaseDistribution::uniform()), ts);
    CHECK(std::abs(visibility(uniform) - 0.5) < 1e-3);
}

TEST_CASE("fixed phase gives the flat deterministic curve") {
    TimeGrid ts(128, 0.0, 20.0);
    const std::vector<double> curve = correlation_scan(gaussian_input(PhaseDistribution::fixed(0.0)), ts);
    for (double v : curve) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(visibility(curve) < 1e-9);

    // A two-point average is not the average of the two fixed curves (the
    // moments average, not the ratios) - but each moment set is.
    const PhaseDistribution tp = PhaseDistribution::two_point(0.3, 1.9);
    const cdouble mean_tp = tp.mean_phase();
    const cdouble mean_avg = 0.5 * (PhaseDistribution::fixed(0.3).mean_phase() +
                                    PhaseDistribution::fixed(1.9).mean_phase());
    CHECK(std::abs(mean_tp - mean_avg) == 0.0);
    const cdouble mean2_tp = tp.mean_phase_sq();
    const cdouble mean2_avg = 0.5 * (PhaseDistribution::fixed(0.3).mean_phase_sq() +
                                     PhaseDistribution::fixed(1.9).mean_phase_sq());
    CHECK(std::abs(mean2_tp - mean2_avg) == 0.0);
}

TEST_CASE("correlations are nonnegative") {
    TimeGrid ts(64, 0.0, 24.0);
    for (const PhaseDistribution& d :
         {PhaseDistribution::uniform(), PhaseDistribution::two_point(0.0, kPi),
          PhaseDistribution::two_point(kPi / 2.0, 3.0 * kPi / 2.0), PhaseDistribution::fixed(0.7)}) {
        const std::vector<double> curve = correlation_scan(gaussian_input(d), ts);
        for (double v : curve) CHECK(v >= -1e-10);
    }
}

TEST_CASE("second-order-only correlation: phase independence and true bounds") {
    TimeGrid ts(256, 0.0, 30.0);
    const CoherentInput a = gaussian_input(PhaseDistribution::uniform());
    const CoherentInput b = gaussian_input(PhaseDistribution::two_point(0.0, kPi));
    std::vector<double> curve(ts.n);
    for (std::size_t k = 0; k < ts.n; ++k) {
        const double t = ts.sample(k);
        const double va = second_order_only_correlation(a, t);
        const double vb = second_order_only_correlation(b, t);
        CHECK(va == vb);  // the deleted term carried all the phase dependence
        curve[k] = va;
        // The spectral overlap bounds the curve to [1/2, 1].
        CHECK(va >= 0.5 - 1e-12);
        CHECK(va <= 1.0 + 1e-12);
    }
    CHECK(curve[ts.n / 2] == doctest::Approx(0.5).epsilon(1e-9));  // t = 0
    CHECK(std::abs(visibility(curve) - 0.5) < 1e-3);
    // Large-delay plateau: the overlap dies and the curve sits at 1.
    CHECK(curve.front() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("zero intensity input is rejected") {
    FrequencyGrid g(32, 0.0, 8.0);
    CoherentInput dead{SpectralAmplitude(g, cvector(g.n, cdouble(0.0, 0.0))), PhaseDistribution::uniform()};
    CHECK_THROWS_AS(intensity_correlation(dead, 0.0), degenerate_state_error);
}

// Two-mode Fock bookkeeping for a biphoton input. With the transfer operator
// I(t) = sum_k a1^dag(k) a2(k) e^{i w_k t}, a (1,1)-sector state is mapped to
// (2,0), so <I> = <I^2> = 0 by photon-number counting; the only surviving
// pieces of the intensity-correlation formula are <I I^dag> and <I^dag I>,
// computed here by explicit operator application on a small lattice.
namespace fock {

// Discrete (1,1) amplitudes F[i*n+j] for |1_i ; 1_j>, sum |F|^2 = 1.
struct BiphotonState {
    std::size_t n = 0;
    cvector f11;
};

// I^dag(t) |psi>: both photons end up in arm 2; amplitudes over ordered mode
// pairs (k, j) where k received the transferred photon.
cvector apply_transfer_dagger(const BiphotonState& psi, const FrequencyGrid& g, double t) {
    const std::size_t n = psi.n;
    cvector arm2_pair(n * n, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            arm2_pair[i * n + j] = psi.f11[i * n + j] * std::polar(1.0, -g.sample(i) * t);
        }
    }
    return arm2_pair;
}

// <I I^dag> = || I^dag psi ||^2 with the bosonic two-photon inner product
// <0| a(j') a(k') a^dag(k) a^dag(j) |0> = d_{k'k} d_{j'j} + d_{k'j} d_{j'k}.
cdouble transfer_idag_norm(const cvector& pair, std::size_t n) {
    cdouble direct(0.0, 0.0), exchange_term(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            direct += std::conj(pair[k * n + j]) * pair[k * n + j];
            exchange_term += std::conj(pair[k * n + j]) * pair[j * n + k];
        }
    }
    return direct + exchange_term;
}

}  // namespace fock

TEST_CASE("biphoton input reduces the intensity correlation to the coincidence probability") {
    FrequencyGrid g(24, 0.0, 8.0);
    // A mildly entangled two-photon amplitude.
    cvector f(g.n * g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            const double wi = g.sample(i), wj = g.sample(j);
            f[i * g.n + j] = std::exp(-(wi + wj) * (wi + wj) / 4.0 - (wi - wj) * (wi - wj) / 9.0) *
                             std::polar(1.0, 0.2 * wi);
        }
    }
    JointSpectralAmplitude jsa = normalize(JointSpectralAmplitude(g, g, std::move(f)));
    fock::BiphotonState psi{g.n, jsa.values};
    const double cell = g.step();
    for (cdouble& v : psi.f11) v *= cell;  // discrete amplitudes: sum |F|^2 = 1

    for (double t : {0.0, 0.8, -1.7}) {
        // <I I^dag> = 1 + exchange(t); the mirrored <I^dag I> carries the same
        // exchange term, so <(I + I^dag)^2> = 2 + 2 * exchange(t).
        const cdouble iid = fock::transfer_idag_norm(fock::apply_transfer_dagger(psi, g, t), g.n);
        CHECK(std::abs(iid.imag()) < 1e-12);

        // C(t) = (<N^2> - <(I+I^dag)^2>) / (<N>^2 - <I+I^dag>^2) with <N> = 2,
        // <N^2> = 4 and vanishing first moments. The correlation formula puts
        // the delay on arm 2; the interferometer dial delays arm 1, so the
        // curves are time-reversed images of each other.
        const double reduced = (4.0 - 2.0 * iid.real()) / 4.0;
        const double c_hom = coincidence(jsa, {0.0, -t});
        CHECK(std::abs(reduced - c_hom) < 1e-9);
    }
}
