#pragma once

#include <string>
#include <vector>

#include "fgpe/grid.hpp"

namespace fgpe {

// Radial samples (r, V(r), r V'(r)), linearly interpolated. r must start at 0 and increase strictly.
struct RadialTable {
    std::vector<double> r;
    std::vector<double> value;
    std::vector<double> r_dvdr;
};

RadialTable read_potential_csv(const std::string& path);

class Potential {
public:
    enum class Kind { Harmonic, Table };

    static Potential harmonic();
    static Potential from_table(RadialTable table);

    Kind kind() const noexcept { return kind_; }
    bool is_harmonic() const noexcept { return kind_ == Kind::Harmonic; }
    const RadialTable& table() const noexcept { return table_; }
    // Largest radius the potential is defined at (infinite for the harmonic trap).
    double max_radius() const noexcept;

    double value(double r) const;
    // x . grad V evaluated at |x| = r, i.e. r V'(r).
    double r_dvdr(double r) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Harmonic;
    RadialTable table_;
};

struct SampledPotential {
    std::vector<double> value;
    std::vector<double> x_grad;
    // Smallest C with |r V'(r)| <= C (1 + V) on the sampled nodes.
    double growth_constant = 0.0;
};

// Samples c_v * V(|x| / b) and c_v * (x . grad V)(|x| / b) on the grid.
// With b = 1 and c_v = 1 this is the plain potential.
SampledPotential sample_potential(const Potential& pot, const Grid2D& grid, double b = 1.0,
                                  double c_v = 1.0);

}  // namespace fgpe
