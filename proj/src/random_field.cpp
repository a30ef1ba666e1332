#include "fgpe/random_field.hpp"

#include <cmath>
#include <random>

#include "fgpe/errors.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

ScalarField random_band_limited(const Grid2D& grid, std::uint64_t seed, const RandomFieldOptions& opt) {
    if (!(opt.cutoff > 0.0)) throw ConfigError("random field cutoff must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ScalarField noise(grid);
    for (double& v : noise.values) v = normal(rng);
    Spectrum spec = forward(noise);
    const std::size_t n = grid.n();
    const std::size_t cols = spec.cols();
    const double c2 = opt.cutoff * opt.cutoff;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = grid.wavenumber(k);
        for (std::size_t l = 0; l < cols; ++l) {
            const double b = grid.wavenumber(l);
            const double xi2 = a * a + b * b;
            spec.coeffs[k * cols + l] *= xi2 > c2 ? 0.0 : std::exp(-xi2 / c2);
        }
    }
    ScalarField u = inverse(spec);
    if (opt.envelope_width > 0.0) {
        std::uniform_real_distribution<double> shift(-0.1 * grid.extent(), 0.1 * grid.extent());
        const double cx = shift(rng), cy = shift(rng);
        const double w2 = opt.envelope_width * opt.envelope_width;
        const std::size_t m = grid.n();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double dx = grid.coordinate(i) - cx, dy = grid.coordinate(j) - cy;
                u.at(i, j) *= std::exp(-0.5 * (dx * dx + dy * dy) / w2);
            }
    }
    if (opt.nonnegative)
        for (double& v : u.values) v = std::abs(v);
    return u;
}

}  // namespace fgpe
