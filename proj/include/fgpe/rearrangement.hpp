#pragma once

#include <utility>
#include <vector>

#include "fgpe/field.hpp"

namespace fgpe {

// Symmetric decreasing rearrangement on the grid. Values are sorted in decreasing order and
// dealt to cells in order of increasing |x|; each shell of equal |x| then receives the RMS of
// its block, which keeps the L2 norm exact and the profile nonincreasing. Throws on u < 0.
ScalarField schwarz_rearrange(const ScalarField& u);

struct ModulusCheck {
    double lhs = 0.0;  // seminorm^2 of |u|
    double rhs = 0.0;  // seminorm^2 of u
};

ModulusCheck modulus_seminorm_check(const ScalarField& u, double s);

// Shell-averaged profile: (radius, mean value) with shells of equal |x|, ordered by radius.
std::vector<std::pair<double, double>> radial_profile(const ScalarField& u);
// True if, inside the inscribed disc, no node exceeds its neighbour one step closer to the origin
// along its discrete ray by more than tol * max|u|.
bool radially_nonincreasing(const ScalarField& u, double tol = 1e-8);
// Integer-node shift moving the density centroid to the origin node.
ScalarField recenter(const ScalarField& u);

}  // namespace fgpe
