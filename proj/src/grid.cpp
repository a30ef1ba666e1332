#include "fgpe/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fgpe/errors.hpp"

namespace fgpe {

const char* to_string(SolverFailure kind) {
    switch (kind) {
        case SolverFailure::NonConvergence: return "non_convergence";
        case SolverFailure::BoxTooSmall: return "box_too_small";
        case SolverFailure::Collapse: return "collapse";
        case SolverFailure::Aliasing: return "aliasing";
        case SolverFailure::FellToMin: return "fell_to_min";
        case SolverFailure::UnderResolved: return "under_resolved";
    }
    return "unknown";
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Grid2D::Grid2D(double extent, std::size_t n) : extent_(extent), n_(n) {}

double Grid2D::coordinate(std::size_t i) const noexcept {
    return -0.5 * extent_ + static_cast<double>(i) * spacing();
}

double Grid2D::wavenumber(std::size_t k) const noexcept {
    const auto kk = static_cast<long long>(k);
    const auto nn = static_cast<long long>(n_);
    const long long m = kk < nn / 2 ? kk : kk - nn;
    return 2.0 * std::numbers::pi / extent_ * static_cast<double>(m);
}

double Grid2D::radius_sq(std::size_t i, std::size_t j) const noexcept {
    const double x = coordinate(i);
    const double y = coordinate(j);
    return x * x + y * y;
}

Grid2D make_grid(double extent, std::size_t n) {
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw ConfigError("grid extent must be positive and finite, got " + std::to_string(extent));
    if (n < 16 || !is_power_of_two(n))
        throw ConfigError("points per axis must be a power of two >= 16, got " + std::to_string(n));
    return Grid2D(extent, n);
}

}  // namespace fgpe
