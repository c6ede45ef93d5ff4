#pragma once

#include <utility>
#include <vector>

#include "homsim/amplitude.hpp"
#include "homsim/grid.hpp"
#include "homsim/hom.hpp"

namespace homsim {

/// Chronocyclic Wigner function over the (mu, tau) lattice. Same layout as
/// CoincidenceMap: rows = tau ascending, columns = mu ascending.
struct WignerMap {
    FrequencyGrid mu_grid;
    TimeGrid tau_grid;
    std::vector<double> values;

    double& at(std::size_t tau_index, std::size_t mu_index) {
        return values[tau_index * mu_grid.n + mu_index];
    }
    double at(std::size_t tau_index, std::size_t mu_index) const {
        return values[tau_index * mu_grid.n + mu_index];
    }
};

enum class WignerPath { Auto, Fft, Quadrature };

/// W(mu, tau) = Integral g(mu + u) conj(g(mu - u)) exp(2 i u tau) du.
///
/// The integrand pairs (u, -u) conjugately, so the value is real; the real
/// part is returned and a non-real residue beyond 1e-8 raises accuracy_error.
/// |W| <= 1 for normalized g (Cauchy-Schwarz). Off-lattice arguments are
/// zero-padded.
double wigner_point(const SpectralAmplitude& g, const PhaseSpacePoint& point);

/// Same value through the half-sum parametrization
///   (1/2) Integral g(mu + w/2) conj(g(mu - w/2)) exp(i w tau) dw,
/// kept as an independently coded route for convention pinning.
double wigner_point_halfsum(const SpectralAmplitude& g, const PhaseSpacePoint& point);

/// Batch sweep. The FFT route requires tau_grid to match wigner_dual_tau_grid
/// (step pi / (n * dw)); Auto picks FFT when it does. Both routes evaluate the
/// identical discretized sum.
WignerMap wigner_map(const SpectralAmplitude& g, const FrequencyGrid& mu_grid, const TimeGrid& tau_grid,
                     WignerPath path = WignerPath::Auto, unsigned threads = 1);

/// The tau lattice on which the FFT route is exact: n samples, step
/// pi / (n * g_step) (the factor-2 kernel halves the usual dual step).
TimeGrid wigner_dual_tau_grid(const FrequencyGrid& grid, double tau_center = 0.0);

/// W = 1 - 2 C, elementwise, on the same grids. Inverse of the coincidence
/// identity C = 1/2 - 1/2 W.
WignerMap wigner_from_hom(const CoincidenceMap& map);

struct Marginals {
    std::vector<double> spectral;  // density over mu, integrates to ~1
    std::vector<double> temporal;  // density over tau, integrates to ~1
};

/// Wigner marginals divided by the kernel constant pi, so both come back as
/// probability densities:
///   spectral(mu)  = (1/pi) Integral W dtau  ->  |g(mu)|^2
///   temporal(tau) = (1/pi) Integral W dmu   ->  |gt(-tau)|^2
/// where gt is the fixed-convention transform; the tau axis of the phase
/// space runs opposite to gt's argument (see README). Warns when the grids
/// capture less than the expected unit mass.
Marginals marginals(const WignerMap& map);

/// Integral of the negative part: sum max(0, -W) dmu dtau.
double negativity_volume(const WignerMap& map);

struct WitnessReport {
    bool fired = false;
    std::vector<PhaseSpacePoint> points;  // lattice points where C > 1/2 + tol
};

/// Entanglement witness: fires iff some C(mu, tau) > 1/2 + tol, equivalently
/// W(mu, tau) < -2 tol.
WitnessReport witness(const CoincidenceMap& map, double tol = 1e-6);
WitnessReport witness(const WignerMap& map, double tol = 1e-6);

}  // namespace homsim
