#include "homsim/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "homsim/errors.hpp"
#include "homsim/fft.hpp"
#include "homsim/warnings.hpp"

namespace homsim {

namespace {

constexpr double kLatticeSnap = 1e-9;  // fraction of a step

double sqr(double x) { return x * x; }

}  // namespace

SpectralAmplitude::SpectralAmplitude(FrequencyGrid g, cvector v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n) {
        throw dimension_error("SpectralAmplitude: " + std::to_string(values.size()) + " values on a grid of " +
                              std::to_string(grid.n));
    }
}

double SpectralAmplitude::norm() const {
    double acc = 0.0;
    for (const cdouble& v : values) acc += std::norm(v);
    return std::sqrt(acc * grid.step());
}

cdouble SpectralAmplitude::value_at(double omega) const {
    const double pos = (omega - grid.sample(0)) / grid.step();
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) < kLatticeSnap) {
        const auto k = static_cast<long long>(rounded);
        if (k < 0 || k >= static_cast<long long>(grid.n)) return {0.0, 0.0};
        return values[static_cast<std::size_t>(k)];
    }
    const double lower = std::floor(pos);
    const double frac = pos - lower;
    const auto k = static_cast<long long>(lower);
    const cdouble left = (k < 0 || k >= static_cast<long long>(grid.n)) ? cdouble(0.0, 0.0)
                                                                        : values[static_cast<std::size_t>(k)];
    const long long k1 = k + 1;
    const cdouble right = (k1 < 0 || k1 >= static_cast<long long>(grid.n))
                              ? cdouble(0.0, 0.0)
                              : values[static_cast<std::size_t>(k1)];
    return left * (1.0 - frac) + right * frac;
}

JointSpectralAmplitude::JointSpectralAmplitude(FrequencyGrid g1, FrequencyGrid g2, cvector v)
    : grid1(g1), grid2(g2), values(std::move(v)) {
    if (values.size() != grid1.n * grid2.n) {
        throw dimension_error("JointSpectralAmplitude: value count does not match grid1.n * grid2.n");
    }
}

double JointSpectralAmplitude::norm() const {
    double acc = 0.0;
    for (const cdouble& v : values) acc += std::norm(v);
    return std::sqrt(acc * grid1.step() * grid2.step());
}

double pm_axis_scale(PMConvention convention) {
    switch (convention) {
        case PMConvention::HalfDifference: return 0.5;
        case PMConvention::SumDifference: return 1.0;
        case PMConvention::Orthonormal: return 1.0 / std::sqrt(2.0);
    }
    throw config_error("pm_axis_scale: unknown convention");
}

SpectralAmplitude normalize(const SpectralAmplitude& a) {
    const double n = a.norm();
    if (!(n > 1e-150)) throw degenerate_state_error("normalize: amplitude has zero norm");
    SpectralAmplitude out = a;
    const double inv = 1.0 / n;
    for (cdouble& v : out.values) v *= inv;
    return out;
}

JointSpectralAmplitude normalize(const JointSpectralAmplitude& a) {
    const double n = a.norm();
    if (!(n > 1e-150)) throw degenerate_state_error("normalize: amplitude has zero norm");
    JointSpectralAmplitude out = a;
    const double inv = 1.0 / n;
    for (cdouble& v : out.values) v *= inv;
    return out;
}

JointSpectralAmplitude separable_jsa(const SpectralAmplitude& f1, const SpectralAmplitude& f2,
                                     double phase) {
    const cdouble ph = std::polar(1.0, phase);
    cvector vals(f1.grid.n * f2.grid.n);
    for (std::size_t i = 0; i < f1.grid.n; ++i) {
        const cdouble a = f1.values[i] * ph;
        for (std::size_t j = 0; j < f2.grid.n; ++j) {
            vals[i * f2.grid.n + j] = a * f2.values[j];
        }
    }
    return normalize(JointSpectralAmplitude(f1.grid, f2.grid, std::move(vals)));
}

std::pair<FrequencyGrid, FrequencyGrid> pm_photon_grids(const FrequencyGrid& plus_grid,
                                                        const FrequencyGrid& minus_grid,
                                                        PMConvention convention) {
    const double s = pm_axis_scale(convention);
    // One photon-index step moves w+- by step * s; choosing step = factor
    // step / s keeps every requested (w+, w-) on the factor lattices, so the
    // construction is interpolation-free when the factor steps agree.
    const double step = std::min(plus_grid.step(), minus_grid.step()) / s;
    const std::size_t n = std::max(plus_grid.n, minus_grid.n);
    // Photon-axis centers follow from inverting w+- = (w1 +- w2) * s.
    const double c1 = (plus_grid.center + minus_grid.center) / (2.0 * s);
    const double c2 = (plus_grid.center - minus_grid.center) / (2.0 * s);
    const double span = step * static_cast<double>(n);
    return {FrequencyGrid(n, c1, span), FrequencyGrid(n, c2, span)};
}

JointSpectralAmplitude jsa_from_pm(const SpectralAmplitude& f_plus, const SpectralAmplitude& f_minus,
                                   PMConvention convention) {
    const auto grids = pm_photon_grids(f_plus.grid, f_minus.grid, convention);
    return jsa_from_pm(f_plus, f_minus, convention, grids.first, grids.second);
}

JointSpectralAmplitude jsa_from_pm(const SpectralAmplitude& f_plus, const SpectralAmplitude& f_minus,
                                   PMConvention convention, const FrequencyGrid& grid1,
                                   const FrequencyGrid& grid2) {
    const double s = pm_axis_scale(convention);
    cvector vals(grid1.n * grid2.n);
    double captured = 0.0;
    for (std::size_t i = 0; i < grid1.n; ++i) {
        const double w1 = grid1.sample(i);
        for (std::size_t j = 0; j < grid2.n; ++j) {
            const double w2 = grid2.sample(j);
            const cdouble v = f_plus.value_at((w1 + w2) * s) * f_minus.value_at((w1 - w2) * s);
            vals[i * grid2.n + j] = v;
            captured += std::norm(v);
        }
    }
    captured *= grid1.step() * grid2.step();

    // d(w1) d(w2) = |J| d(w+) d(w-) with |J| = 1/(2 s^2).
    const double jacobian = 1.0 / (2.0 * s * s);
    const double expected = jacobian * sqr(f_plus.norm()) * sqr(f_minus.norm());
    if (expected > 0.0) {
        const double loss = 1.0 - captured / expected;
        if (loss > 0.01) {
            warnings::emit("jsa_from_pm: " + std::to_string(loss * 100.0) +
                           "% of the factor norm falls outside the photon grids");
        }
    }
    return normalize(JointSpectralAmplitude(grid1, grid2, std::move(vals)));
}

JointSpectralAmplitude swap_arms(const JointSpectralAmplitude& jsa) {
    if (!(jsa.grid1 == jsa.grid2)) {
        throw dimension_error("swap_arms: photon grids differ, exchange is not defined on this lattice");
    }
    JointSpectralAmplitude out = jsa;
    for (std::size_t i = 0; i < jsa.grid1.n; ++i) {
        for (std::size_t j = 0; j < jsa.grid2.n; ++j) {
            out.at(i, j) = jsa.at(j, i);
        }
    }
    return out;
}

cdouble exchange_overlap(const JointSpectralAmplitude& jsa) {
    if (!(jsa.grid1 == jsa.grid2)) {
        throw dimension_error("exchange_overlap: photon grids differ");
    }
    const std::size_t n = jsa.grid1.n;
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += jsa.at(i, j) * std::conj(jsa.at(j, i));
        }
    }
    return acc * (jsa.grid1.step() * jsa.grid2.step());
}

namespace {

// Bilinear sample of a JSA with zero padding, lattice snap as in value_at.
cdouble jsa_value_at(const JointSpectralAmplitude& f, double w1, double w2) {
    const auto axis = [](double pos, std::size_t n, long long& k0, double& frac) {
        const double rounded = std::round(pos);
        if (std::abs(pos - rounded) < kLatticeSnap) {
            k0 = static_cast<long long>(rounded);
            frac = 0.0;
        } else {
            k0 = static_cast<long long>(std::floor(pos));
            frac = pos - std::floor(pos);
        }
        return k0 >= -1 && k0 <= static_cast<long long>(n);
    };
    long long i0 = 0, j0 = 0;
    double fi = 0.0, fj = 0.0;
    const double p1 = (w1 - f.grid1.sample(0)) / f.grid1.step();
    const double p2 = (w2 - f.grid2.sample(0)) / f.grid2.step();
    if (!axis(p1, f.grid1.n, i0, fi) || !axis(p2, f.grid2.n, j0, fj)) return {0.0, 0.0};
    const auto fetch = [&](long long i, long long j) -> cdouble {
        if (i < 0 || j < 0 || i >= static_cast<long long>(f.grid1.n) || j >= static_cast<long long>(f.grid2.n)) {
            return {0.0, 0.0};
        }
        return f.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    };
    if (fi == 0.0 && fj == 0.0) return fetch(i0, j0);
    return fetch(i0, j0) * ((1.0 - fi) * (1.0 - fj)) + fetch(i0 + 1, j0) * (fi * (1.0 - fj)) +
           fetch(i0, j0 + 1) * ((1.0 - fi) * fj) + fetch(i0 + 1, j0 + 1) * (fi * fj);
}

bool inside_grid(const FrequencyGrid& g, double w) {
    const double pos = (w - g.sample(0)) / g.step();
    return pos >= -kLatticeSnap && pos <= static_cast<double>(g.n - 1) + kLatticeSnap;
}

}  // namespace

BeamSplitterResult frequency_beam_splitter(const JointSpectralAmplitude& jsa, PMConvention convention) {
    const double s = pm_axis_scale(convention);
    const double step = 2.0 * s * std::min(jsa.grid1.step(), jsa.grid2.step());
    const std::size_t n = std::max(jsa.grid1.n, jsa.grid2.n);
    const double span = step * static_cast<double>(n);
    const FrequencyGrid out_plus(n, (jsa.grid1.center + jsa.grid2.center) * s, span);
    const FrequencyGrid out_minus(n, (jsa.grid1.center - jsa.grid2.center) * s, span);
    return frequency_beam_splitter(jsa, convention, out_plus, out_minus);
}

BeamSplitterResult frequency_beam_splitter(const JointSpectralAmplitude& jsa, PMConvention convention,
                                           const FrequencyGrid& out_plus, const FrequencyGrid& out_minus) {
    const double input_norm = jsa.norm();
    if (std::abs(input_norm - 1.0) > 1e-6) {
        throw precondition_error("frequency_beam_splitter: input amplitude must be normalized");
    }
    const double s = pm_axis_scale(convention);
    // Unitary scale: |J|^(-1/2) for (w1,w2) -> (w+,w-) with |J| = 1/(2 s^2).
    const double scale = 1.0 / std::sqrt(2.0 * s * s);

    cvector vals(out_plus.n * out_minus.n);
    for (std::size_t a = 0; a < out_plus.n; ++a) {
        const double wp = out_plus.sample(a);
        for (std::size_t b = 0; b < out_minus.n; ++b) {
            const double wm = out_minus.sample(b);
            const double w1 = (wp + wm) / (2.0 * s);
            const double w2 = (wp - wm) / (2.0 * s);
            vals[a * out_minus.n + b] = scale * jsa_value_at(jsa, w1, w2);
        }
    }

    // Loss bookkeeping on the input side: mass whose image misses the output grids.
    double lost = 0.0;
    for (std::size_t i = 0; i < jsa.grid1.n; ++i) {
        const double w1 = jsa.grid1.sample(i);
        for (std::size_t j = 0; j < jsa.grid2.n; ++j) {
            const double w2 = jsa.grid2.sample(j);
            const double wp = (w1 + w2) * s;
            const double wm = (w1 - w2) * s;
            if (!inside_grid(out_plus, wp) || !inside_grid(out_minus, wm)) {
                lost += std::norm(jsa.at(i, j));
            }
        }
    }
    lost *= jsa.grid1.step() * jsa.grid2.step();

    if (lost > 0.01) {
        throw accuracy_error("frequency_beam_splitter: resampling loss " + std::to_string(lost * 100.0) +
                             "% exceeds 1%");
    }
    return {normalize(JointSpectralAmplitude(out_plus, out_minus, std::move(vals))), lost};
}

namespace {

// One-sided Jacobi SVD, singular values only. Works on the column Gram
// structure; adequate and dependency-free for the matrix sizes used here.
std::vector<double> singular_values(cvector a, std::size_t rows, std::size_t cols) {
    if (cols > rows) {
        // Work on the transpose so columns are the short dimension.
        cvector t(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = a[i * cols + j];
        a.swap(t);
        std::swap(rows, cols);
    }
    const auto col = [&](std::size_t j) { return a.begin() + static_cast<std::ptrdiff_t>(j * rows); };
    // Column-major layout after this point.
    {
        cvector t(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = a[i * cols + j];
        a.swap(t);
    }

    const double tol = 1e-28;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                auto up = col(p);
                auto uq = col(q);
                double alpha = 0.0, beta = 0.0;
                cdouble gamma(0.0, 0.0);
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += std::norm(up[i]);
                    beta += std::norm(uq[i]);
                    gamma += std::conj(up[i]) * uq[i];
                }
                if (std::norm(gamma) <= tol * alpha * beta || std::abs(gamma) == 0.0) continue;
                converged = false;
                const double absg = std::abs(gamma);
                const cdouble phase = gamma / absg;
                const double zeta = (beta - alpha) / (2.0 * absg);
                const double t_rot = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t_rot * t_rot);
                const double s_rot = c * t_rot;
                for (std::size_t i = 0; i < rows; ++i) {
                    const cdouble vq = uq[i] * std::conj(phase);
                    const cdouble vp = up[i];
                    up[i] = c * vp - s_rot * vq;
                    uq[i] = s_rot * vp + c * vq;
                }
            }
        }
        if (converged) break;
    }

    std::vector<double> sv(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        auto u = col(j);
        for (std::size_t i = 0; i < rows; ++i) acc += std::norm(u[i]);
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace

std::vector<double> schmidt_singular_values(const JointSpectralAmplitude& jsa) {
    const double weight = std::sqrt(jsa.grid1.step() * jsa.grid2.step());
    cvector m = jsa.values;
    for (cdouble& v : m) v *= weight;
    return singular_values(std::move(m), jsa.grid1.n, jsa.grid2.n);
}

double schmidt_number(const JointSpectralAmplitude& jsa) {
    const std::vector<double> sv = schmidt_singular_values(jsa);
    if (sv.empty() || sv.front() <= 0.0) {
        throw degenerate_state_error("schmidt_number: zero amplitude");
    }
    const double cutoff = 1e-12 * sv.front();
    double sum = 0.0, sum2 = 0.0;
    for (double s : sv) {
        if (s < cutoff) break;
        const double p = s * s;
        sum += p;
        sum2 += p * p;
    }
    return sum * sum / sum2;
}

SpectralAmplitude shift_frequency(const SpectralAmplitude& a, double delta) {
    const std::size_t n = a.grid.n;
    if (!detail::is_power_of_two(n)) {
        // Circular shift via direct DFT; same definition as the FFT branch.
        cvector spectrum = detail::dft_direct(a.values, false);
        const double shift_bins = delta / a.grid.step();
        for (std::size_t m = 0; m < n; ++m) {
            // Symmetric bin index for a band-limited displacement.
            const double m_signed =
                (m < n / 2) ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
            spectrum[m] *= std::polar(1.0, -kTwoPi * m_signed * shift_bins / static_cast<double>(n));
        }
        cvector rolled = detail::dft_direct(spectrum, true);
        SpectralAmplitude out = a;
        for (std::size_t k = 0; k < n; ++k) out.values[k] = rolled[k] / static_cast<double>(n);
        return out;
    }
    cvector work = a.values;
    detail::fft_inplace(work, false);
    const double shift_bins = delta / a.grid.step();
    for (std::size_t m = 0; m < n; ++m) {
        const double m_signed =
            (m < n / 2) ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
        work[m] *= std::polar(1.0, -kTwoPi * m_signed * shift_bins / static_cast<double>(n));
    }
    detail::fft_inplace(work, true);
    SpectralAmplitude out = a;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = work[k] * inv;
    return out;
}

double wrap_loss_fraction(const SpectralAmplitude& a, double delta) {
    if (delta == 0.0) return 0.0;
    const double step = a.grid.step();
    const auto band = static_cast<std::size_t>(std::min<double>(
        std::ceil(std::abs(delta) / step), static_cast<double>(a.grid.n)));
    double mass = 0.0;
    if (delta > 0.0) {
        for (std::size_t k = a.grid.n - band; k < a.grid.n; ++k) mass += std::norm(a.values[k]);
    } else {
        for (std::size_t k = 0; k < band; ++k) mass += std::norm(a.values[k]);
    }
    const double total = sqr(a.norm()) / step;
    return total > 0.0 ? mass / total : 0.0;
}

}  // namespace homsim
