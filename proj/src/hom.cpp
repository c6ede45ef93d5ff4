#include "homsim/hom.hpp"

#include <cmath>
#include <string>

#include "homsim/errors.hpp"
#include "homsim/fft.hpp"
#include "homsim/parallel.hpp"
#include "homsim/warnings.hpp"

namespace homsim {

namespace {

void require_square_normalized(const JointSpectralAmplitude& jsa, const char* who) {
    if (!(jsa.grid1 == jsa.grid2)) {
        throw dimension_error(std::string(who) + ": photon grids must coincide");
    }
    if (std::abs(jsa.norm() - 1.0) > 1e-6) {
        throw precondition_error(std::string(who) + ": joint amplitude must be normalized");
    }
}

// Circular spectral displacement of every row's second argument:
// f(w1, w2) -> f(w1, w2 - delta). Exact (phase multiplication in the
// conjugate domain), so the map stays unitary for any delta.
void shift_arm2(JointSpectralAmplitude& jsa, double delta) {
    if (delta == 0.0) return;
    const std::size_t n1 = jsa.grid1.n;
    const std::size_t n2 = jsa.grid2.n;
    const double shift_bins = delta / jsa.grid2.step();

    // Wrapped-mass estimate before shifting.
    const double step_prod = jsa.grid1.step() * jsa.grid2.step();
    const auto band = static_cast<std::size_t>(
        std::min<double>(std::ceil(std::abs(delta) / jsa.grid2.step()), static_cast<double>(n2)));
    double wrapped = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        if (delta > 0.0) {
            for (std::size_t j = n2 - band; j < n2; ++j) wrapped += std::norm(jsa.at(i, j));
        } else {
            for (std::size_t j = 0; j < band; ++j) wrapped += std::norm(jsa.at(i, j));
        }
    }
    wrapped *= step_prod;
    if (wrapped > 0.01) {
        throw accuracy_error("arm-2 displacement wraps " + std::to_string(wrapped * 100.0) +
                             "% of the state off the lattice");
    }
    if (wrapped > 1e-6) {
        warnings::emit("arm-2 displacement truncates " + std::to_string(wrapped * 100.0) +
                       "% of the state at the lattice edge");
    }

    cvector phases(n2);
    for (std::size_t m = 0; m < n2; ++m) {
        const double m_signed =
            (m < n2 / 2) ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n2);
        phases[m] = std::polar(1.0, -kTwoPi * m_signed * shift_bins / static_cast<double>(n2));
    }

    const bool pow2 = detail::is_power_of_two(n2);
    cvector row(n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) row[j] = jsa.at(i, j);
        if (pow2) {
            detail::fft_inplace(row, false);
            for (std::size_t m = 0; m < n2; ++m) row[m] *= phases[m];
            detail::fft_inplace(row, true);
        } else {
            cvector spec = detail::dft_direct(row, false);
            for (std::size_t m = 0; m < n2; ++m) spec[m] *= phases[m];
            row = detail::dft_direct(spec, true);
        }
        const double inv = 1.0 / static_cast<double>(n2);
        for (std::size_t j = 0; j < n2; ++j) jsa.at(i, j) = row[j] * inv;
    }
}

// Diagonal sums S(d) = sum_{i-j=d} f'(i,j) conj(f'(j,i)) * dw1 * dw2.
// With them, the exchange overlap under an arm-1 delay tau is
//   O(tau) = sum_d S(d) exp(i d dw tau),
// an O(n) evaluation per tau after an O(n^2) precomputation.
std::vector<cdouble> exchange_diagonals(const JointSpectralAmplitude& jsa) {
    const std::size_t n = jsa.grid1.n;
    std::vector<cdouble> diag(2 * n - 1, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            diag[(i + n - 1) - j] += jsa.at(i, j) * std::conj(jsa.at(j, i));
        }
    }
    const double w = jsa.grid1.step() * jsa.grid2.step();
    for (cdouble& v : diag) v *= w;
    return diag;
}

double coincidence_from_diagonals(const std::vector<cdouble>& diag, double step, double tau) {
    const auto n = (diag.size() + 1) / 2;
    cdouble acc(0.0, 0.0);
    for (std::size_t idx = 0; idx < diag.size(); ++idx) {
        const double d = static_cast<double>(idx) - (static_cast<double>(n) - 1.0);
        acc += diag[idx] * std::polar(1.0, d * step * tau);
    }
    if (std::abs(acc.imag()) > 1e-8) {
        throw accuracy_error("exchange overlap acquired a non-real part: " + std::to_string(acc.imag()));
    }
    const double raw = 0.5 - 0.5 * acc.real();
    if (raw < -1e-6 || raw > 1.0 + 1e-6) {
        throw accuracy_error("coincidence " + std::to_string(raw) + " is outside [0,1] beyond tolerance");
    }
    return std::min(1.0, std::max(0.0, raw));
}

}  // namespace

JointSpectralAmplitude apply_delay_and_shift(const JointSpectralAmplitude& jsa, double tau, double delta) {
    JointSpectralAmplitude out = jsa;
    shift_arm2(out, delta);
    if (tau != 0.0) {
        for (std::size_t i = 0; i < out.grid1.n; ++i) {
            const cdouble phase = std::polar(1.0, out.grid1.sample(i) * tau);
            for (std::size_t j = 0; j < out.grid2.n; ++j) out.at(i, j) *= phase;
        }
    }
    return out;
}

double coincidence(const JointSpectralAmplitude& jsa, const PhaseSpacePoint& point) {
    require_square_normalized(jsa, "coincidence");
    JointSpectralAmplitude dialed = jsa;
    shift_arm2(dialed, kArmShiftPerMu * point.mu);
    const std::vector<cdouble> diag = exchange_diagonals(dialed);
    return coincidence_from_diagonals(diag, jsa.grid1.step(), point.tau);
}

std::vector<double> hom_scan(const JointSpectralAmplitude& jsa, const TimeGrid& tau_grid, double mu) {
    require_square_normalized(jsa, "hom_scan");
    JointSpectralAmplitude dialed = jsa;
    shift_arm2(dialed, kArmShiftPerMu * mu);
    const std::vector<cdouble> diag = exchange_diagonals(dialed);
    std::vector<double> out(tau_grid.n);
    for (std::size_t t = 0; t < tau_grid.n; ++t) {
        out[t] = coincidence_from_diagonals(diag, jsa.grid1.step(), tau_grid.sample(t));
    }
    return out;
}

CoincidenceMap coincidence_map(const JointSpectralAmplitude& jsa, const FrequencyGrid& mu_grid,
                               const TimeGrid& tau_grid, unsigned threads) {
    require_square_normalized(jsa, "coincidence_map");
    CoincidenceMap map{mu_grid, tau_grid, std::vector<double>(mu_grid.n * tau_grid.n, 0.0)};
    parallel_for(mu_grid.n, threads, [&](std::size_t m) {
        JointSpectralAmplitude dialed = jsa;
        shift_arm2(dialed, kArmShiftPerMu * mu_grid.sample(m));
        const std::vector<cdouble> diag = exchange_diagonals(dialed);
        for (std::size_t t = 0; t < tau_grid.n; ++t) {
            map.at(t, m) = coincidence_from_diagonals(diag, jsa.grid1.step(), tau_grid.sample(t));
        }
    });
    return map;
}

std::vector<double> independent_source_dip(const SpectralAmplitude& g, const TimeGrid& tau_grid) {
    const SpectralAmplitude gn = normalize(g);
    auto [gt, tgrid] = fourier_to_time(gn.values, gn.grid);
    const double dt = tgrid.step();

    std::vector<double> out(tau_grid.n);
    cvector delayed_spec(gn.grid.n);
    for (std::size_t t = 0; t < tau_grid.n; ++t) {
        const double tau = tau_grid.sample(t);
        // gt(. - tau) via the exact shift theorem: transform of g * exp(i w tau).
        for (std::size_t k = 0; k < gn.grid.n; ++k) {
            delayed_spec[k] = gn.values[k] * std::polar(1.0, gn.grid.sample(k) * tau);
        }
        auto [gt_delayed, tg2] = fourier_to_time(delayed_spec, gn.grid);
        cdouble overlap(0.0, 0.0);
        for (std::size_t j = 0; j < gt.size(); ++j) overlap += gt[j] * std::conj(gt_delayed[j]);
        overlap *= dt;
        const double raw = 0.5 * (1.0 - std::norm(overlap));
        out[t] = std::min(1.0, std::max(0.0, raw));
    }
    return out;
}

double spectrogram(const SpectralAmplitude& f, const SpectralAmplitude& window,
                   const PhaseSpacePoint& point) {
    if (!(f.grid == window.grid)) {
        throw dimension_error("spectrogram: signal and window must share a grid");
    }
    if (std::abs(f.norm() - 1.0) > 1e-6 || std::abs(window.norm() - 1.0) > 1e-6) {
        throw precondition_error("spectrogram: signal and window must be normalized");
    }
    const double loss = wrap_loss_fraction(window, point.mu);
    if (loss > 0.01) {
        throw accuracy_error("spectrogram: window displacement wraps " + std::to_string(loss * 100.0) +
                             "% of the norm");
    }
    const SpectralAmplitude shifted = shift_frequency(window, point.mu);
    cdouble acc(0.0, 0.0);
    for (std::size_t k = 0; k < f.grid.n; ++k) {
        acc += f.values[k] * std::conj(shifted.values[k]) * std::polar(1.0, f.grid.sample(k) * point.tau);
    }
    acc *= f.grid.step();
    const double raw = 0.5 * (1.0 - std::norm(acc));
    if (raw < -1e-6 || raw > 0.5 + 1e-6) {
        throw accuracy_error("spectrogram value " + std::to_string(raw) + " left [0, 1/2]");
    }
    return std::min(0.5, std::max(0.0, raw));
}

}  // namespace homsim
