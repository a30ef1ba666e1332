#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fgpe/field.hpp"
#include "fgpe/grid.hpp"

namespace fgpe {

// Half spectrum of a real field: n rows by n/2+1 columns, unnormalized forward DFT.
// The inverse applies 1/n^2. Integrals use the weight h^2 on the physical side.
struct Spectrum {
    Grid2D grid;
    std::vector<std::complex<double>> coeffs;

    explicit Spectrum(const Grid2D& g) : grid(g), coeffs(g.n() * (g.n() / 2 + 1)) {}
    std::size_t cols() const noexcept { return grid.n() / 2 + 1; }
};

Spectrum forward(const ScalarField& u);
ScalarField inverse(const Spectrum& spec);

// Multiplicity of half-spectrum column l in the full spectrum (1 or 2).
double column_weight(std::size_t l, std::size_t n) noexcept;

// Sum over the full spectrum of w_kl |c_kl|^2, weighted so that the result approximates the
// integral of the corresponding quadratic form on the physical side.
double spectral_quadratic(const Spectrum& spec, const std::vector<double>* weights);

class FractionalSymbol {
public:
    FractionalSymbol(const Grid2D& grid, double s);

    const Grid2D& grid() const noexcept { return grid_; }
    double order() const noexcept { return s_; }
    // Half-spectrum layout, same as Spectrum::coeffs.
    const std::vector<double>& table() const noexcept { return table_; }
    double operator()(std::size_t k, std::size_t l) const noexcept {
        return table_[k * (grid_.n() / 2 + 1) + l];
    }

private:
    Grid2D grid_;
    double s_;
    std::vector<double> table_;
};

ScalarField frac_laplacian(const ScalarField& u, const FractionalSymbol& sym);
double frac_seminorm_sq(const ScalarField& u, const FractionalSymbol& sym);

// Multiplies the half spectrum of u by a precomputed table in the Spectrum layout.
ScalarField apply_multiplier(const ScalarField& u, const std::vector<double>& table);

// Returns the field whose spectrum is g(m_kl) * u_hat_kl. Used for resolvents such as (1 + m)^{-1}.
ScalarField apply_symbol_function(const ScalarField& u, const FractionalSymbol& sym,
                                  const std::function<double(double)>& g);

}  // namespace fgpe
