#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgpe/field.hpp"
#include "fgpe/grid.hpp"

namespace fgpe {

struct GroundStateOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    // Largest admissible mass fraction in the outer annulus r >= 0.9 L/2.
    double decay_guard = 1e-6;
    double symmetry_tol = 1e-8;
    // If nonzero and below the grid size, solve on this many points per axis first, then
    // prolong spectrally and finish on the requested grid. Levels of 1024 points or more are
    // themselves started from a grid of half the size.
    std::size_t coarse_n = 0;
};

// Q solves (-Delta)^s Q + Q = Q^3.
struct GroundStateResult {
    ScalarField Q;
    double s = 1.0;
    double ns_star = 0.0;
    double kinetic = 0.0;
    double quartic = 0.0;
    // int |x|^2 Q^2, used by the mountain-pass bracket.
    double second_moment = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double outer_mass = 0.0;
    double asymmetry = 0.0;
};

// Petviashvili iteration Q <- S^{3/2} (1 + (-Delta)^s)^{-1} Q^3 with S = <Q,(1+L)Q> / <Q^3,Q>.
// Starts from a unit Gaussian unless a warm start on the same grid is given.
GroundStateResult solve_ground_state(double s, const Grid2D& grid, const GroundStateOptions& opt = {},
                                     const ScalarField* warm_start = nullptr);

struct NStarEntry {
    double s = 1.0;
    std::string status;  // "ok" or a failure kind
    std::optional<GroundStateResult> result;
};

std::vector<NStarEntry> n_star_curve(const std::vector<double>& s_list, const Grid2D& grid,
                                     const GroundStateOptions& opt = {}, bool warm_start = true);

// Columns: s, Ns_star, kinetic, quartic, residual, iterations.
void write_n_star_csv(const std::string& path, const std::vector<NStarEntry>& entries);

}  // namespace fgpe
