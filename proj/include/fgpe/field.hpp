#pragma once

#include <cstddef>
#include <vector>

#include "fgpe/grid.hpp"

namespace fgpe {

struct ScalarField {
    Grid2D grid;
    std::vector<double> values;

    explicit ScalarField(const Grid2D& g) : grid(g), values(g.size(), 0.0) {}
    ScalarField(const Grid2D& g, std::vector<double> v);

    double& at(std::size_t i, std::size_t j) { return values[i * grid.n() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * grid.n() + j]; }

    bool all_finite() const noexcept;
    // min >= -1e-12 * max
    bool is_nonnegative() const noexcept;
};

template <class F>
ScalarField sample(const Grid2D& g, F&& f) {
    ScalarField u(g);
    const std::size_t n = g.n();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.coordinate(i);
        for (std::size_t j = 0; j < n; ++j) u.values[i * n + j] = f(x, g.coordinate(j));
    }
    return u;
}

// Quadrature h^2 * sum.
double integrate(const ScalarField& u);
double mass(const ScalarField& u);
double l4_quartic(const ScalarField& u);
double inner(const ScalarField& a, const ScalarField& b);
double l2_distance(const ScalarField& a, const ScalarField& b);
// Mass in the annulus r >= 0.9 * L/2, divided by total mass.
double outer_mass_fraction(const ScalarField& u);
// Largest deviation under x <-> -x, y <-> -y and x <-> y, relative to max |u|.
double asymmetry(const ScalarField& u);

void require_same_grid(const ScalarField& a, const ScalarField& b);
void require_finite(const ScalarField& u, const char* what);

}  // namespace fgpe
