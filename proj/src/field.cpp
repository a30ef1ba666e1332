#include "fgpe/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fgpe/errors.hpp"

namespace fgpe {

ScalarField::ScalarField(const Grid2D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ConfigError("field has " + std::to_string(values.size()) + " samples, grid needs " +
                          std::to_string(grid.size()));
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

bool ScalarField::is_nonnegative() const noexcept {
    if (values.empty()) return true;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *lo >= -1e-12 * std::max(*hi, 0.0);
}

double integrate(const ScalarField& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v;
    return acc * u.grid.cell_area();
}

double mass(const ScalarField& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v;
    return acc * u.grid.cell_area();
}

double l4_quartic(const ScalarField& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v * v * v;
    return acc * u.grid.cell_area();
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) acc += a.values[k] * b.values[k];
    return acc * a.grid.cell_area();
}

double l2_distance(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = a.values[k] - b.values[k];
        acc += d * d;
    }
    return std::sqrt(acc * a.grid.cell_area());
}

double outer_mass_fraction(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    const double r0 = 0.9 * 0.5 * u.grid.extent();
    double outer = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double w = u.at(i, j) * u.at(i, j);
            total += w;
            if (u.grid.radius_sq(i, j) >= r0 * r0) outer += w;
        }
    return total > 0.0 ? outer / total : 0.0;
}

double asymmetry(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    // Reflection about the origin node n/2 maps index i to n - i (index 0 has no partner).
    double worst = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) {
            const double v = u.at(i, j);
            worst = std::max(worst, std::abs(v - u.at(n - i, j)));
            worst = std::max(worst, std::abs(v - u.at(i, n - j)));
            worst = std::max(worst, std::abs(v - u.at(j, i)));
        }
    return worst / peak;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid) throw NumericalError("fields live on different grids");
}

void require_finite(const ScalarField& u, const char* what) {
    if (!u.all_finite()) throw NumericalError(std::string(what) + ": field has non-finite samples");
}

}  // namespace fgpe
