#pragma once

#include <cstddef>
#include <vector>

namespace fgpe {

// Periodic square box [-L/2, L/2)^2 sampled at n points per axis.
// Node (i, j) sits at (x_i, x_j) with x_i = -L/2 + i*h, so the origin is node (n/2, n/2).
// Arrays are row-major with i the slow index.
class Grid2D {
public:
    Grid2D(double extent, std::size_t n);

    double extent() const noexcept { return extent_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ * n_; }
    double spacing() const noexcept { return extent_ / static_cast<double>(n_); }
    double cell_area() const noexcept { return spacing() * spacing(); }

    double coordinate(std::size_t i) const noexcept;
    // Wavenumber of FFT index k: 2*pi/L times k for k < n/2, k - n otherwise (Nyquist is negative).
    double wavenumber(std::size_t k) const noexcept;
    double radius_sq(std::size_t i, std::size_t j) const noexcept;

    bool operator==(const Grid2D& other) const noexcept {
        return extent_ == other.extent_ && n_ == other.n_;
    }
    bool operator!=(const Grid2D& other) const noexcept { return !(*this == other); }

private:
    double extent_;
    std::size_t n_;
};

// Validating factory: n a power of two, n >= 16, L > 0 and finite. Throws ConfigError.
Grid2D make_grid(double extent, std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace fgpe
