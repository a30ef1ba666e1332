#pragma once

#include <cstdint>

#include "fgpe/field.hpp"

namespace fgpe {

struct RandomFieldOptions {
    // Modes with |xi| above this are removed; the rest are weighted by exp(-|xi|^2 / cutoff^2).
    double cutoff = 4.0;
    // If positive, the noise is multiplied by exp(-|x - c|^2 / (2 width^2)) with a random centre c.
    double envelope_width = 0.0;
    bool nonnegative = false;  // take |u| after filtering
};

// White noise from a seeded mt19937_64, low-pass filtered in Fourier space.
ScalarField random_band_limited(const Grid2D& grid, std::uint64_t seed, const RandomFieldOptions& opt = {});

}  // namespace fgpe
