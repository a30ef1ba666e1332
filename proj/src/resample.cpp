#include "fgpe/resample.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fgpe/errors.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

namespace {

// Band-limited periodic interpolation weights for an even number of nodes:
// S(d) = sin(pi d / h) / (n tan(pi d / L)), S(0) = 1.
std::vector<double> interpolation_matrix(const Grid2D& source, const Grid2D& target, double scale) {
    const std::size_t ns = source.n();
    const std::size_t nt = target.n();
    const double L = source.extent();
    const double h = source.spacing();
    std::vector<double> A(nt * ns, 0.0);
    for (std::size_t p = 0; p < nt; ++p) {
        const double X = scale * target.coordinate(p);
        if (std::abs(X) > 0.5 * L) continue;
        for (std::size_t j = 0; j < ns; ++j) {
            const double d = X - source.coordinate(j);
            const double t = std::tan(std::numbers::pi * d / L);
            double w;
            if (std::abs(d) < 1e-14 * h)
                w = 1.0;
            else
                w = std::sin(std::numbers::pi * d / h) / (static_cast<double>(ns) * t);
            A[p * ns + j] = w;
        }
    }
    return A;
}

}  // namespace

double spectral_tail_fraction(const ScalarField& u, double cutoff) {
    const Spectrum spec = forward(u);
    const std::size_t n = u.grid.n();
    const std::size_t cols = spec.cols();
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < cols; ++l) {
            const double w = column_weight(l, n) * std::norm(spec.coeffs[k * cols + l]);
            total += w;
            const double a = std::max(std::abs(u.grid.wavenumber(k)), std::abs(u.grid.wavenumber(l)));
            if (a > cutoff) tail += w;
        }
    return total > 0.0 ? tail / total : 0.0;
}

ScalarField resample(const ScalarField& u, const Grid2D& target, double scale, double amplitude,
                     const ResampleGuard& guard) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("resample scale must be positive");
    const double step = scale * target.spacing();
    if (step > u.grid.spacing()) {
        const double frac = spectral_tail_fraction(u, std::numbers::pi / step);
        if (frac > guard.max_alias_fraction)
            throw SolverError(SolverFailure::Aliasing,
                              "resampling would alias: spectral fraction " + std::to_string(frac) +
                                  " beyond the target band");
    }
    const std::size_t ns = u.grid.n();
    const std::size_t nt = target.n();
    const std::vector<double> A = interpolation_matrix(u.grid, target, scale);

    // T = U A^T (ns x nt), then out = A T (nt x nt).
    std::vector<double> T(ns * nt, 0.0);
    for (std::size_t i = 0; i < ns; ++i) {
        const double* urow = &u.values[i * ns];
        for (std::size_t q = 0; q < nt; ++q) {
            const double* arow = &A[q * ns];
            double acc = 0.0;
            for (std::size_t j = 0; j < ns; ++j) acc += urow[j] * arow[j];
            T[i * nt + q] = acc;
        }
    }
    ScalarField out(target);
    for (std::size_t p = 0; p < nt; ++p) {
        const double* arow = &A[p * ns];
        double* orow = &out.values[p * nt];
        for (std::size_t i = 0; i < ns; ++i) {
            const double a = arow[i];
            if (a == 0.0) continue;
            const double* trow = &T[i * nt];
            for (std::size_t q = 0; q < nt; ++q) orow[q] += a * trow[q];
        }
        for (std::size_t q = 0; q < nt; ++q) orow[q] *= amplitude;
    }
    return out;
}

ScalarField dilate(const ScalarField& u, double t, const ResampleGuard& guard) {
    return resample(u, u.grid, t, t, guard);
}

ScalarField refine(const ScalarField& u, std::size_t n_fine) {
    const std::size_t n = u.grid.n();
    if (n_fine < n || !is_power_of_two(n_fine)) throw ConfigError("refine needs a larger power-of-two size");
    const Grid2D fine = make_grid(u.grid.extent(), n_fine);
    if (n_fine == n) return ScalarField(fine, u.values);
    const Spectrum coarse = forward(u);
    Spectrum out(fine);
    const std::size_t cc = coarse.cols();
    const std::size_t fc = out.cols();
    const double gain = static_cast<double>(fine.size()) / static_cast<double>(u.grid.size());
    // The coarse Nyquist row and column are split evenly between +/- frequencies. For the
    // column only +n/2 is stored; its -n/2 partner follows from Hermitian symmetry.
    for (std::size_t k = 0; k < n; ++k) {
        const bool knyq = (k == n / 2);
        const std::size_t kf = k < n / 2 ? k : k + (n_fine - n);
        for (std::size_t l = 0; l < cc; ++l) {
            const bool lnyq = (l == n / 2);
            double w = gain;
            if (knyq) w *= 0.5;
            if (lnyq) w *= 0.5;
            const std::complex<double> c = coarse.coeffs[k * cc + l] * w;
            out.coeffs[kf * fc + l] += c;
            if (knyq) out.coeffs[(n / 2) * fc + l] += c;
        }
    }
    return inverse(out);
}

}  // namespace fgpe
