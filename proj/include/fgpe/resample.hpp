#pragma once

#include <cstddef>

#include "fgpe/field.hpp"

namespace fgpe {

struct ResampleGuard {
    // Largest spectral energy fraction allowed above the band the target samples can carry.
    double max_alias_fraction = 1e-10;
};

// out(x) = amplitude * u(scale * x) for x on the target grid, using the trigonometric
// interpolant of u. Points with scale * x outside the source box are set to zero.
// Throws SolverError(Aliasing) when the target sampling is too coarse for the content of u.
ScalarField resample(const ScalarField& u, const Grid2D& target, double scale, double amplitude,
                     const ResampleGuard& guard = {});

// t * u(t x) on the same grid (mass preserving in 2D).
ScalarField dilate(const ScalarField& u, double t, const ResampleGuard& guard = {});

// Fraction of sum |u_hat|^2 carried by modes with max(|xi_1|, |xi_2|) > cutoff.
double spectral_tail_fraction(const ScalarField& u, double cutoff);

// Exact band-limited prolongation onto the same box with n_fine >= n points per axis.
ScalarField refine(const ScalarField& u, std::size_t n_fine);

}  // namespace fgpe
