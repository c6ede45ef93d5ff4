#include "homsim/wigner.hpp"

#include <cmath>
#include <string>

#include "homsim/errors.hpp"
#include "homsim/fft.hpp"
#include "homsim/parallel.hpp"
#include "homsim/warnings.hpp"

namespace homsim {

namespace {

// h_mu(u_k) = g(mu + u_k) conj(g(mu - u_k)) on the offset lattice
// u_k = (k - n/2) * step.
cvector overlap_kernel(const SpectralAmplitude& g, double mu) {
    const std::size_t n = g.grid.n;
    const double step = g.grid.step();
    cvector h(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * step;
        h[k] = g.value_at(mu + u) * std::conj(g.value_at(mu - u));
    }
    return h;
}

double wigner_from_kernel(const cvector& h, double step, double tau) {
    const std::size_t n = h.size();
    cdouble acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * step;
        acc += h[k] * std::polar(1.0, 2.0 * u * tau);
    }
    acc *= step;
    if (std::abs(acc.imag()) > 1e-8) {
        throw accuracy_error("wigner_point: non-real value, imag = " + std::to_string(acc.imag()));
    }
    return acc.real();
}

// FFT over the tau lattice tau_j = t_c + (j - n/2) * dtau, dtau = pi/(n*step):
//   2 u_k tau_j = 2 (k - n/2) step t_c + 2 pi k j / n - pi k - pi j + pi n / 2.
std::vector<double> wigner_tau_fft(const cvector& h, double step, const TimeGrid& tau_grid) {
    const std::size_t n = h.size();
    cvector work(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a_k = static_cast<double>(k) - static_cast<double>(n) / 2.0;
        cdouble pre = std::polar(1.0, 2.0 * a_k * step * tau_grid.center);
        if (k & 1) pre = -pre;
        work[k] = h[k] * pre;
    }
    detail::fft_inplace(work, /*inverse=*/true);  // kernel exp(+2 pi i k j / n)

    cdouble corner;  // exp(+i pi n / 2)
    switch (n % 4) {
        case 0: corner = {1.0, 0.0}; break;
        case 1: corner = {0.0, 1.0}; break;
        case 2: corner = {-1.0, 0.0}; break;
        default: corner = {0.0, -1.0}; break;
    }

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        cdouble post = corner * step;
        if (j & 1) post = -post;
        const cdouble w = work[j] * post;
        if (std::abs(w.imag()) > 1e-8) {
            throw accuracy_error("wigner_map: non-real value on the FFT route");
        }
        out[j] = w.real();
    }
    return out;
}

}  // namespace

double wigner_point(const SpectralAmplitude& g, const PhaseSpacePoint& point) {
    if (std::abs(g.norm() - 1.0) > 1e-6) {
        throw precondition_error("wigner_point: amplitude must be normalized");
    }
    if (std::abs(point.mu - g.grid.center) > g.grid.span / 2.0) {
        warnings::emit("wigner_point: mu is outside the amplitude's lattice; using zero padding");
    }
    const cvector h = overlap_kernel(g, point.mu);
    return wigner_from_kernel(h, g.grid.step(), point.tau);
}

double wigner_point_halfsum(const SpectralAmplitude& g, const PhaseSpacePoint& point) {
    if (std::abs(g.norm() - 1.0) > 1e-6) {
        throw precondition_error("wigner_point_halfsum: amplitude must be normalized");
    }
    // w lattice with step 2*dw; w/2 then lands on g's own lattice.
    const std::size_t n = g.grid.n;
    const double wstep = 2.0 * g.grid.step();
    cdouble acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * wstep;
        acc += g.value_at(point.mu + w / 2.0) * std::conj(g.value_at(point.mu - w / 2.0)) *
               std::polar(1.0, w * point.tau);
    }
    acc *= 0.5 * wstep;
    if (std::abs(acc.imag()) > 1e-8) {
        throw accuracy_error("wigner_point_halfsum: non-real value");
    }
    return acc.real();
}

TimeGrid wigner_dual_tau_grid(const FrequencyGrid& grid, double tau_center) {
    const double dtau = kPi / (static_cast<double>(grid.n) * grid.step());
    return TimeGrid(grid.n, tau_center, dtau * static_cast<double>(grid.n));
}

WignerMap wigner_map(const SpectralAmplitude& g, const FrequencyGrid& mu_grid, const TimeGrid& tau_grid,
                     WignerPath path, unsigned threads) {
    if (std::abs(g.norm() - 1.0) > 1e-6) {
        throw precondition_error("wigner_map: amplitude must be normalized");
    }
    const TimeGrid natural = wigner_dual_tau_grid(g.grid, tau_grid.center);
    const bool fft_ok = detail::is_power_of_two(g.grid.n) && tau_grid.n == g.grid.n &&
                        std::abs(tau_grid.step() - natural.step()) <= 1e-9 * natural.step();
    bool use_fft = false;
    if (path == WignerPath::Fft) {
        if (!fft_ok) {
            throw config_error("wigner_map: FFT route needs the dual tau lattice (see wigner_dual_tau_grid)");
        }
        use_fft = true;
    } else if (path == WignerPath::Auto) {
        use_fft = fft_ok;
    }

    WignerMap map{mu_grid, tau_grid, std::vector<double>(mu_grid.n * tau_grid.n, 0.0)};
    const double step = g.grid.step();
    parallel_for(mu_grid.n, threads, [&](std::size_t m) {
        const cvector h = overlap_kernel(g, mu_grid.sample(m));
        if (use_fft) {
            const std::vector<double> column = wigner_tau_fft(h, step, tau_grid);
            for (std::size_t t = 0; t < tau_grid.n; ++t) map.at(t, m) = column[t];
        } else {
            for (std::size_t t = 0; t < tau_grid.n; ++t) {
                map.at(t, m) = wigner_from_kernel(h, step, tau_grid.sample(t));
            }
        }
    });

    for (double v : map.values) {
        if (std::abs(v) > 1.0 + 1e-6) {
            throw accuracy_error("wigner_map: |W| = " + std::to_string(std::abs(v)) +
                                 " violates the overlap bound");
        }
    }
    return map;
}

WignerMap wigner_from_hom(const CoincidenceMap& map) {
    WignerMap out{map.mu_grid, map.tau_grid, std::vector<double>(map.values.size(), 0.0)};
    for (std::size_t i = 0; i < map.values.size(); ++i) out.values[i] = 1.0 - 2.0 * map.values[i];
    return out;
}

Marginals marginals(const WignerMap& map) {
    const std::size_t n_mu = map.mu_grid.n;
    const std::size_t n_tau = map.tau_grid.n;
    Marginals out;
    out.spectral.assign(n_mu, 0.0);
    out.temporal.assign(n_tau, 0.0);
    for (std::size_t t = 0; t < n_tau; ++t) {
        for (std::size_t m = 0; m < n_mu; ++m) {
            const double w = map.at(t, m);
            out.spectral[m] += w;
            out.temporal[t] += w;
        }
    }
    const double dtau = map.tau_grid.step();
    const double dmu = map.mu_grid.step();
    for (double& v : out.spectral) v *= dtau / kPi;
    for (double& v : out.temporal) v *= dmu / kPi;

    double mass_s = 0.0, mass_t = 0.0;
    for (double v : out.spectral) mass_s += v * dmu;
    for (double v : out.temporal) mass_t += v * dtau;
    if (std::abs(mass_s - 1.0) > 1e-3 || std::abs(mass_t - 1.0) > 1e-3) {
        warnings::emit("marginals: grids capture " + std::to_string(mass_s) + " / " + std::to_string(mass_t) +
                       " of the unit mass; enlarge the phase-space window");
    }
    return out;
}

double negativity_volume(const WignerMap& map) {
    double acc = 0.0;
    for (double v : map.values) acc += std::max(0.0, -v);
    return acc * map.mu_grid.step() * map.tau_grid.step();
}

WitnessReport witness(const CoincidenceMap& map, double tol) {
    WitnessReport report;
    for (std::size_t t = 0; t < map.tau_grid.n; ++t) {
        for (std::size_t m = 0; m < map.mu_grid.n; ++m) {
            if (map.at(t, m) > 0.5 + tol) {
                report.points.push_back({map.mu_grid.sample(m), map.tau_grid.sample(t)});
            }
        }
    }
    report.fired = !report.points.empty();
    return report;
}

WitnessReport witness(const WignerMap& map, double tol) {
    WitnessReport report;
    for (std::size_t t = 0; t < map.tau_grid.n; ++t) {
        for (std::size_t m = 0; m < map.mu_grid.n; ++m) {
            if (map.at(t, m) < -2.0 * tol) {
                report.points.push_back({map.mu_grid.sample(m), map.tau_grid.sample(t)});
            }
        }
    }
    report.fired = !report.points.empty();
    return report;
}

}  // namespace homsim
