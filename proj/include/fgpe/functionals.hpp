#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "fgpe/field.hpp"
#include "fgpe/potential.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

struct ProblemParams {
    double s = 1.0;
    double N = 1.0;
    Potential potential = Potential::harmonic();

    // s in (1/2, 1], N > 0. Throws ConfigError.
    void validate() const;
};

// Everything needed to evaluate functionals of fields on one grid.
struct Discretization {
    Grid2D grid;
    double s;
    FractionalSymbol symbol;
    SampledPotential potential;
};

Discretization discretize(const ProblemParams& p, const Grid2D& grid);

struct EnergyBreakdown {
    double mass = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double quartic = 0.0;
    double total = 0.0;
    double multiplier = 0.0;
    double virial = 0.0;
};

// E = (K + V)/2 - Q4/4, mu = (K + V - Q4)/mass, P = s K - (1/2) int (x . grad V) u^2 - Q4/2.
EnergyBreakdown energy(const ScalarField& u, const Discretization& d);
EnergyBreakdown energy(const ScalarField& u, const ProblemParams& p);
double virial(const ScalarField& u, const ProblemParams& p);

// (-Delta)^s u + V u - u^3 - mu u with mu from the breakdown.
ScalarField euler_lagrange_residual(const ScalarField& u, const Discretization& d, double mu);
// || residual ||_2 / || u ||_2
double el_residual_norm(const ScalarField& u, const Discretization& d, double mu);

double gn_quotient(const ScalarField& u, double s);
double gn_constant(double s, double ns_star);

struct InterpolationCheck {
    double lhs = 0.0;  // seminorm^2 at order 3/4
    double rhs = 0.0;  // (seminorm^2 at order s)^{3/(4s)} mass^{1 - 3/(4s)}
};

// Hoelder in frequency; lhs <= rhs for s in (3/4, 1].
InterpolationCheck interpolation_check(const ScalarField& u, double s);

struct UndefinedAtUnitOrder {};
using KineticRadius = std::variant<double, UndefinedAtUnitOrder>;

// t_s = N/(2s-1) (Ns*/N)^{s/(1-s)}; the exponent diverges at s = 1.
KineticRadius kinetic_radius(const ProblemParams& p, double ns_star);

struct BoundaryGap {
    double t_s = 0.0;
    double gap = 0.0;
    std::vector<std::pair<double, double>> curve;  // (t, f(t))
};

// f(t) = t - lambda_s N^{2-1/s} t^{1/s} / Ns*, lambda_s = s / (2s-1)^{1-1/s}.
double boundary_curve(double t, double s, double N, double ns_star);
std::variant<BoundaryGap, UndefinedAtUnitOrder> boundary_gap(const ProblemParams& p, double ns_star,
                                                             std::size_t samples = 121);

struct NonexistenceGap {
    double lhs = 0.0;
    double rhs = 0.0;
    bool certified() const noexcept { return lhs < rhs; }
};

NonexistenceGap nonexistence_gap(const ProblemParams& p, double ns_star);

// Lanczos approximation with a pinned coefficient table; valid on (0, 2].
double gamma_fn(double x);
double hardy_constant(double s);

// Smallest eigenvalue of (-Delta)^s + V by inverse iteration.
double principal_eigenvalue(const Discretization& d, double tol = 1e-12);

}  // namespace fgpe
