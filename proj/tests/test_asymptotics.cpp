#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "fgpe/asymptotics.hpp"
#include "fgpe/errors.hpp"
#include "fgpe/io.hpp"
#include "fgpe/resample.hpp"
#include "test_support.hpp"

namespace fgpe {
namespace {

using testing::rel;

const GroundStateResult& townes() {
    static const GroundStateResult r = solve_ground_state(1.0, make_grid(32.0, 256));
    return r;
}

TEST(Rescaling, UnitKineticAndExactMass) {
    const Grid2D g = make_grid(16.0, 128);
    for (double s : {0.8, 0.95, 1.0}) {
        const ScalarField v = testing::gaussian(g, 0.7);
        const ScalarField w = rescaled_profile(v, s);
        EXPECT_LT(rel(mass(w), mass(v)), 1e-13);
        EXPECT_LT(rel(frac_seminorm_sq(w, FractionalSymbol(w.grid, s)), 1.0), 1e-12) << s;
        EXPECT_EQ(w.grid.n(), g.n());
    }
    EXPECT_THROW(rescaled_profile(ScalarField(g), 1.0), ConfigError);
}

TEST(Rescaling, LimitProfileHasMassNAndUnitKinetic) {
    const double N = 4.0;
    const ScalarField lim = limit_profile(townes(), N, make_grid(64.0, 512));
    EXPECT_LT(rel(mass(lim), N), 1e-8);
    EXPECT_LT(rel(frac_seminorm_sq(lim, FractionalSymbol(lim.grid, 1.0)), 1.0), 1e-6);
    GroundStateResult not_unit = townes();
    not_unit.s = 0.9;
    EXPECT_THROW(limit_profile(not_unit, N, lim.grid), ConfigError);
}

TEST(Rescaling, DilatedTownesProfileHasNoError) {
    // Every dilation of sqrt(N/N1*) Q rescales onto the limit profile at s = 1.
    const GroundStateResult& q = townes();
    const double N = 4.0;
    ScalarField v = dilate(q.Q, 0.5);
    for (double& x : v.values) x *= std::sqrt(N / q.ns_star);
    const double err = rescale_error(v, 1.0, q, N);
    EXPECT_LT(err, 1e-5);
    ScalarField bumped = v;
    bumped.at(128, 128) *= 1.5;
    EXPECT_GT(rescale_error(bumped, 1.0, q, N), 10.0 * err);
}

TEST(Rescaling, RadialAverageAndProfileError) {
    const Grid2D g = make_grid(16.0, 64);
    const ScalarField u = testing::gaussian(g);
    EXPECT_LT(l2_distance(radial_average(u), u), 1e-14);
    const double h = g.spacing();
    const ScalarField shifted =
        sample(g, [&](double x, double y) { return std::exp(-0.5 * ((x - 4 * h) * (x - 4 * h) + y * y)); });
    EXPECT_LT(min_profile_error(shifted, u), 1e-10);
    const ScalarField wide = testing::gaussian(g, 1.2);
    EXPECT_GT(min_profile_error(wide, u), 0.1);
    const ScalarField lopsided = sample(g, [](double x, double y) { return std::exp(-0.5 * (x * x + 4 * y * y)); });
    const ScalarField avg = radial_average(lopsided);
    EXPECT_LT(rel(integrate(avg), integrate(lopsided)), 1e-12);
}

TEST(Sweep, InvalidOrdersRejected) {
    const ProblemParams p{0.9, 4.0, Potential::harmonic()};
    EXPECT_THROW(sweep(p, {}), ConfigError);
    EXPECT_THROW(sweep(p, {0.9, 1.0}), ConfigError);
    EXPECT_THROW(sweep(p, {0.95, 0.9}), ConfigError);
    EXPECT_THROW(sweep(p, {0.4}), ConfigError);
}

SweepValues synthetic(double s, double N, double ns) {
    SweepValues v;
    v.ns_star = ns;
    const double ratio = std::pow(ns / N, s / (1 - s));
    v.t_s = N / (2 * s - 1) * ratio;
    v.kin_saddle = 0.9 * N * ratio;
    v.quartic_saddle = 2 * s * v.kin_saddle * (1 - 1e-4);
    v.mu_saddle = -(s / N) * v.kin_saddle;
    v.moment_saddle = 1.0 - s;
    v.kin_min = 1.0;
    v.pot_min = 1.0;
    v.rescale_err = 1.0 - s;
    v.min_err = 2.0 * (1.0 - s);
    v.c_lo = 0.5 * (1 - s) * v.t_s;
    v.c_hi = v.c_lo * (1 + 1e-3);
    v.eps = std::pow(v.kin_saddle, -0.5 / s);
    return v;
}

SweepResult synthetic_result() {
    SweepResult r;
    r.N = 5.85;
    r.reference_ns_star = 11.7;
    for (double s : {0.9, 0.93, 0.95, 0.97}) {
        const double ns = 11.7 - 10 * (1 - s);
        r.records.push_back({s, "ok", "", synthetic(s, r.N, ns)});
    }
    r.records.push_back({0.98, "box_too_small", "outer annulus", std::nullopt});
    return r;
}

TEST(Sweep, VerdictsOnSyntheticTrend) {
    SweepResult r = synthetic_result();
    const SweepVerdicts v = sweep_verdicts(r);
    EXPECT_EQ(v.ok_records, 4u);
    EXPECT_TRUE(v.min_err_decreasing);
    EXPECT_TRUE(v.kin_saddle_increasing);
    EXPECT_TRUE(v.scaled_kinetic_in_band);
    EXPECT_TRUE(v.rescale_err_decreasing);
    EXPECT_TRUE(v.moment_decreasing);
    EXPECT_TRUE(v.quartic_ratio_to_two);
    EXPECT_TRUE(v.min_bounds_uniform);
    r.records[2].values->min_err = 1.0;
    r.records[1].values->kin_min = 3.0;
    r.records[3].values->kin_saddle = 10.0 * r.N * std::pow(r.records[3].values->ns_star / r.N, 0.97 / 0.03);
    const SweepVerdicts w = sweep_verdicts(r);
    EXPECT_FALSE(w.min_err_decreasing);
    EXPECT_FALSE(w.min_bounds_uniform);
    EXPECT_FALSE(w.scaled_kinetic_in_band);
}

TEST(Sweep, MultiplierCheck) {
    SweepResult r = synthetic_result();
    const MultiplierReport m = multiplier_limit_check(r);
    EXPECT_EQ(m.target, -1.0 / r.N);
    EXPECT_LT(rel(m.lower_bound, -2.0 / 11.7 * 1.05), 1e-15);
    ASSERT_EQ(m.points.size(), 4u);
    EXPECT_LT(rel(m.points[0].mu_eps, -0.9 / r.N), 1e-12);
    EXPECT_TRUE(m.all_negative);
    EXPECT_TRUE(m.above_lower_bound);
    EXPECT_TRUE(m.approaching_target);
    EXPECT_TRUE(m.ratio_increasing);
    r.records[0].values->mu_saddle = -10.0 * r.records[0].values->kin_saddle;
    EXPECT_FALSE(multiplier_limit_check(r).above_lower_bound);
    r.records.resize(2);
    EXPECT_THROW(multiplier_limit_check(r), ConfigError);
}

TEST(Sweep, CsvAndSummarySchema) {
    const SweepResult r = synthetic_result();
    const auto dir = testing::scratch_dir();
    write_sweep_csv((dir / "sweep.csv").string(), r);
    std::ifstream in(dir / "sweep.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "s,Ns_star,t_s,eN,kin_min,kin_saddle,c_lo,c_hi,eps,rescale_err,min_err,mu_min,mu_saddle,status");
    int rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 13) << line;
        ++rows;
        last = line;
    }
    EXPECT_EQ(rows, 5);
    EXPECT_EQ(last, "0.97999999999999998,,,,,,,,,,,,,box_too_small");

    write_sweep_summary((dir / "summary.json").string(), r);
    const nlohmann::json j = read_json((dir / "summary.json").string());
    EXPECT_EQ(j.at("entries").size(), 5u);
    EXPECT_TRUE(j.at("verdicts").at("kin_saddle_increasing").get<bool>());
    EXPECT_EQ(j.at("multiplier").at("points").size(), 4u);
    EXPECT_FALSE(j.at("entries")[4].contains("bracket_gap_scaled"));

    SweepValues v;
    v.profile_x = {0.0, 0.5};
    v.profile_rescaled = {1.0, 0.5};
    v.profile_limit = {1.0, 0.25};
    write_profile_csv((dir / "profile.csv").string(), v);
    std::ifstream p(dir / "profile.csv");
    std::getline(p, line);
    EXPECT_EQ(line, "x,rescaled,limit");
    std::getline(p, line);
    EXPECT_EQ(line, "0,1,1");
}

}  // namespace
}  // namespace fgpe
