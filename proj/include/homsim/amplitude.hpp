#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "homsim/grid.hpp"

namespace homsim {

/// Complex single-argument spectral amplitude g(w) on a FrequencyGrid.
struct SpectralAmplitude {
    FrequencyGrid grid;
    cvector values;

    SpectralAmplitude() = default;
    SpectralAmplitude(FrequencyGrid g, cvector v);

    double norm() const;  // sqrt( sum |v|^2 * step )

    /// Linear interpolation with zero padding outside the lattice. Queries
    /// that land on a lattice point (within 1e-9 of a step) return the stored
    /// sample exactly.
    cdouble value_at(double omega) const;
};

/// Complex two-argument amplitude f(w1, w2), row-major: value(i, j) is the
/// amplitude at (grid1.sample(i), grid2.sample(j)).
struct JointSpectralAmplitude {
    FrequencyGrid grid1;
    FrequencyGrid grid2;
    cvector values;  // size grid1.n * grid2.n

    JointSpectralAmplitude() = default;
    JointSpectralAmplitude(FrequencyGrid g1, FrequencyGrid g2, cvector v);

    cdouble& at(std::size_t i, std::size_t j) { return values[i * grid2.n + j]; }
    const cdouble& at(std::size_t i, std::size_t j) const { return values[i * grid2.n + j]; }

    double norm() const;  // sqrt( sum |v|^2 * step1 * step2 )
};

/// A point of the time-frequency phase space (mu in rad/s, tau in s).
struct PhaseSpacePoint {
    double mu = 0.0;
    double tau = 0.0;
};

/// Convention for the collective variables (w+, w-) of a photon pair:
///   HalfDifference:  w+- = (w1 +- w2) / 2      (library default)
///   SumDifference:   w+- =  w1 +- w2
///   Orthonormal:     w+- = (w1 +- w2) / sqrt(2) (involutive, unit Jacobian)
/// The three differ only by axis scaling; mixing them silently is the main
/// numeric trap of this problem domain, so every coordinate change takes the
/// convention explicitly.
enum class PMConvention { HalfDifference, SumDifference, Orthonormal };

/// Scale s in w+- = (w1 +- w2) * s.
double pm_axis_scale(PMConvention convention);

SpectralAmplitude normalize(const SpectralAmplitude& a);
JointSpectralAmplitude normalize(const JointSpectralAmplitude& a);

/// f(w1, w2) = f1(w1) * f2(w2) * exp(i*phase), normalized.
JointSpectralAmplitude separable_jsa(const SpectralAmplitude& f1, const SpectralAmplitude& f2, double phase);

/// Builds f(w1, w2) = f_plus(w+) * f_minus(w-) on photon grids derived from
/// the factor grids (equal steps required), then normalizes. Values requested
/// outside a factor's lattice are zero-padded; if more than 1% of the expected
/// norm is lost this way a warning is emitted.
JointSpectralAmplitude jsa_from_pm(const SpectralAmplitude& f_plus, const SpectralAmplitude& f_minus,
                                   PMConvention convention = PMConvention::HalfDifference);

/// Same, on caller-provided photon grids.
JointSpectralAmplitude jsa_from_pm(const SpectralAmplitude& f_plus, const SpectralAmplitude& f_minus,
                                   PMConvention convention, const FrequencyGrid& grid1,
                                   const FrequencyGrid& grid2);

/// Photon grids the one-argument jsa_from_pm overload will use.
std::pair<FrequencyGrid, FrequencyGrid> pm_photon_grids(const FrequencyGrid& plus_grid,
                                                        const FrequencyGrid& minus_grid,
                                                        PMConvention convention);

/// Arm exchange f(w1, w2) -> f(w2, w1). Requires grid1 == grid2.
JointSpectralAmplitude swap_arms(const JointSpectralAmplitude& jsa);

/// sum_ij f(i,j) * conj(f(j,i)) * step1 * step2. Real for every amplitude up
/// to rounding; callers assert on the imaginary part.
cdouble exchange_overlap(const JointSpectralAmplitude& jsa);

struct BeamSplitterResult {
    JointSpectralAmplitude jsa;
    double resampling_loss = 0.0;  // fraction of input norm mapped off-grid, >= 0
};

/// Re-expresses the amplitude in the collective coordinates (w+, w-):
/// output(a, b) = scale * f(w1(a,b), w2(a,b)) with bilinear resampling and the
/// Jacobian scale that keeps the result normalizable. Output grids default to
/// the image of the input lattice. Loss above 1% raises accuracy_error.
BeamSplitterResult frequency_beam_splitter(const JointSpectralAmplitude& jsa, PMConvention convention);
BeamSplitterResult frequency_beam_splitter(const JointSpectralAmplitude& jsa, PMConvention convention,
                                           const FrequencyGrid& out_plus, const FrequencyGrid& out_minus);

/// Schmidt mode count K = (sum p)^2 / sum p^2 from the grid-weighted singular
/// values (p = sigma^2, values below 1e-12 * max are dropped). K = 1 iff the
/// amplitude factorizes; K >= 1 always.
double schmidt_number(const JointSpectralAmplitude& jsa);

/// Singular values of values * sqrt(step1*step2), descending.
std::vector<double> schmidt_singular_values(const JointSpectralAmplitude& jsa);

/// Exact spectral displacement g(w) -> g(w - delta) implemented as a phase in
/// the conjugate domain (circular, unitary). For lattice-multiple shifts it
/// reduces to an index roll.
SpectralAmplitude shift_frequency(const SpectralAmplitude& a, double delta);

/// Fraction of |a|^2 inside the edge band of width |delta| that a circular
/// shift by delta would wrap around the lattice.
double wrap_loss_fraction(const SpectralAmplitude& a, double delta);

}  // namespace homsim
