#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgpe/constrained.hpp"
#include "fgpe/functionals.hpp"
#include "fgpe/groundstate.hpp"

namespace fgpe {

struct SweepOptions {
    // Local minimizers and the s = 1 references.
    Grid2D min_grid = make_grid(64.0, 512);
    // Ground states Q_s and the saddle frame.
    Grid2D frame_grid = make_grid(128.0, 2048);
    std::size_t frame_coarse_n = 1024;
    GroundStateOptions groundstate;
    LocalMinOptions local_min;
    MountainPassOptions mountain_pass;
    // Entries with eps < resolution_factor * (physical saddle spacing) are under-resolved.
    double resolution_factor = 4.0;
};

struct SweepValues {
    double ns_star = 0.0;
    double t_s = 0.0;
    double e_min = 0.0;  // e_N(s), energy of the local minimizer
    double kin_min = 0.0;
    double pot_min = 0.0;
    double mu_min = 0.0;
    double kin_saddle = 0.0;
    double quartic_saddle = 0.0;
    double moment_saddle = 0.0;  // int |x|^2 v^2
    double mu_saddle = 0.0;
    double c_lo = 0.0;
    double c_hi = 0.0;
    double energy_saddle = 0.0;
    double eps = 0.0;  // kin_saddle^{-1/(2s)}
    double saddle_spacing = 0.0;
    double rescale_err = 0.0;
    double min_err = 0.0;
    // Rescaled saddle and limit profile along the positive x axis of the rescaled grid.
    std::vector<double> profile_x;
    std::vector<double> profile_rescaled;
    std::vector<double> profile_limit;
};

struct SweepRecord {
    double s = 0.0;
    std::string status;  // "ok", "under-resolved" or a solver failure
    std::string message;
    std::optional<SweepValues> values;  // present only when status is "ok"
};

struct SweepResult {
    double N = 0.0;
    double reference_ns_star = 0.0;  // N_1^*
    double reference_energy = 0.0;   // energy of the s = 1 minimizer
    std::vector<SweepRecord> records;
};

// eps v(eps x) with eps = kinetic^{-1/(2s)}. The dilated lattice is the source lattice scaled by
// 1/eps, so the output lives on a box of extent L / eps and the values are eps v at the same
// nodes; mass and unit kinetic energy hold up to rounding.
ScalarField rescaled_profile(const ScalarField& v, double s);

// (1/sqrt(N1*)) Q(x / sqrt(N)) sampled on the target grid from the s = 1 ground state.
ScalarField limit_profile(const GroundStateResult& Q1, double N, const Grid2D& target);

double rescale_error(const ScalarField& v, double s, const GroundStateResult& Q1, double N);

// Each node replaced by the mean over its shell of equal |x|.
ScalarField radial_average(const ScalarField& u);

// L2 distance of the radial averages of u and ref after recentering both.
double min_profile_error(const ScalarField& u, const ScalarField& ref);

// One record per s, warm-starting ground states and local minimizers along s_list. Solver
// failures are recorded per entry and the sweep continues.
SweepResult sweep(const ProblemParams& p_base, const std::vector<double>& s_list, const SweepOptions& opt = {});

struct MultiplierPoint {
    double s = 0.0;
    double mu_eps = 0.0;  // mu_saddle * eps^{2s}
    double quartic_ratio = 0.0;
};

struct MultiplierReport {
    std::vector<MultiplierPoint> points;
    double target = 0.0;       // -1/N
    double lower_bound = 0.0;  // -2/N1* (1 + delta)
    bool all_negative = false;
    bool above_lower_bound = false;
    bool approaching_target = false;  // |mu_eps - target| strictly decreasing
    bool ratio_increasing = false;
};

// Throws ConfigError with fewer than three successful records.
MultiplierReport multiplier_limit_check(const SweepResult& result, double delta = 0.05);

struct SweepVerdicts {
    std::size_t ok_records = 0;
    bool min_err_decreasing = false;
    bool kin_saddle_increasing = false;
    bool scaled_kinetic_in_band = false;  // K (Ns*/N)^{-s/(1-s)} in [N(1-s)/(2s-1), 2N]
    bool rescale_err_decreasing = false;
    bool moment_decreasing = false;
    bool quartic_ratio_to_two = false;  // increasing, last value >= 1.8
    bool min_bounds_uniform = false;    // kin_min and pot_min at most twice their first value
};

SweepVerdicts sweep_verdicts(const SweepResult& result);

// Columns: s, Ns_star, t_s, eN, kin_min, kin_saddle, c_lo, c_hi, eps, rescale_err, min_err,
// mu_min, mu_saddle, status. Entries without values leave the numeric columns empty.
void write_sweep_csv(const std::string& path, const SweepResult& result);
void write_sweep_summary(const std::string& path, const SweepResult& result);
// Columns: x, rescaled, limit.
void write_profile_csv(const std::string& path, const SweepValues& values);

}  // namespace fgpe
