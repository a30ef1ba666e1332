#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgpe/field.hpp"
#include "fgpe/functionals.hpp"
#include "fgpe/groundstate.hpp"
#include "fgpe/rearrangement.hpp"

namespace fgpe {

enum class Classification { LocalMin, Saddle, Escaped, Failed };
const char* to_string(Classification c);

struct TraceEntry {
    int iter = 0;
    double energy = 0.0;
    double kinetic = 0.0;
    double virial = 0.0;
};

struct SolveReport {
    explicit SolveReport(const Grid2D& g) : solution(g) {}

    ScalarField solution;
    EnergyBreakdown breakdown;
    double s = 1.0;
    double N = 0.0;
    double ns_star = 0.0;
    KineticRadius t_s = UndefinedAtUnitOrder{};
    // ||(-Delta)^s u + V u - u^3 - mu u|| / ||u||
    double el_residual = 0.0;
    // el_residual / max(1, |mu|); the saddle's multiplier grows without bound as s -> 1.
    double el_residual_scaled = 0.0;
    bool inside_ball = false;
    Classification classification = Classification::Failed;
    std::string message;
    std::vector<TraceEntry> trace;
    // First iterate whose kinetic energy reached t_s, if any.
    std::optional<int> crossing_iteration;
    // Saddle only: v(x) = b^s w(b x) with w computed on the frame grid.
    double frame_scale = 1.0;
};

struct LocalMinOptions {
    double dt = 1e-2;
    double tol = 1e-8;
    double pohozaev_tol = 1e-6;
    int max_flow_iter = 20000;
    int max_newton_iter = 40;
    // Flow hands over to projected Newton once the residual drops below this.
    double newton_switch = 1e-3;
};

// Unit Gaussian scaled to mass N (ground state of the s = 1 harmonic oscillator).
ScalarField default_local_min_init(const ProblemParams& p, const Grid2D& grid);
// Positive Gaussian bump with seeded width and offset plus band-limited noise, mass N.
ScalarField seeded_initial_field(const Grid2D& grid, double N, std::uint64_t seed);

// Normalized descent on the mass sphere: preconditioned semi-implicit gradient flow, then
// projected Newton. At s = 1 there is no kinetic ball and the ball test is skipped.
SolveReport solve_local_min(const ProblemParams& p, double ns_star, const Grid2D& grid,
                            const LocalMinOptions& opt = {}, const ScalarField* init = nullptr);

struct DilationSample {
    double t = 0.0;
    double energy = 0.0;
    double energy_closed = 0.0;
    double kinetic = 0.0;
    double kinetic_closed = 0.0;
};

// Energies of phi^t = t phi(t x), phi = sqrt(N / Ns*) Q, against the closed form that uses the
// ground-state identities and the measured second moment of Q.
std::vector<DilationSample> dilation_path_profile(const GroundStateResult& Q, const ProblemParams& p,
                                                  const std::vector<double>& t_grid);
// Closed-form columns only; the sampled ones are NaN.
DilationSample dilation_path_closed(const GroundStateResult& Q, const ProblemParams& p, double t);

struct MountainPassBracket {
    double lower = 0.0;
    double upper = 0.0;
    double rho0 = 0.0;  // maximizer of f on [1, 2^{(1-s)^-2}]
    double rho1 = 0.0;  // (Ns*/N)^{1/(2(1-s))}
    double h_at_rho1 = 0.0;
    double reference = 0.0;  // N(1-s)/(2(2s-1)) (Ns*/N)^{s/(1-s)}
};

// f(rho) = Ns* rho^{2s} + (2s-1) rho^{-2} m2 - s N rho^2, m2 = int |x|^2 Q^2.
double dilation_path_function(double rho, double s, double N, double ns_star, double m2);
MountainPassBracket mountain_pass_bracket(const GroundStateResult& Q, const ProblemParams& p);

struct MountainPassOptions {
    // Bound on el_residual_scaled.
    double tol = 1e-10;
    double pohozaev_tol = 1e-6;
    int max_inner_iter = 3000;
    int max_mass_steps = 60;
    double mass_tol = 1e-11;
    // If nonzero, converge on every (n / coarse_n)-th node of the frame grid first, then on each
    // doubling of that grid.
    std::size_t coarse_n = 0;
};

// Solves in the frame w(y) = b^{-s} v(y / b) with b = rho0, on the grid of Q, adjusting the frame
// multiplier until the mass constraint holds. Started from the dilation-path point phi^{rho0}.
SolveReport solve_mountain_pass(const ProblemParams& p, const GroundStateResult& Q,
                                const MountainPassOptions& opt = {});

}  // namespace fgpe
