#include <gtest/gtest.h>

#include <fstream>

#include "fgpe/errors.hpp"
#include "fgpe/potential.hpp"
#include "test_support.hpp"

namespace fgpe {
namespace {

std::string write_csv(const std::string& body) {
    const auto path = testing::scratch_dir() / "v.csv";
    std::ofstream(path) << body;
    return path.string();
}

TEST(Potential, HarmonicValues) {
    const Potential p = Potential::harmonic();
    EXPECT_TRUE(p.is_harmonic());
    EXPECT_EQ(p.value(3.0), 9.0);
    EXPECT_EQ(p.r_dvdr(3.0), 18.0);
    EXPECT_TRUE(std::isinf(p.max_radius()));
}

TEST(Potential, ReadsCsvWithHeaderAndComments) {
    const RadialTable t = read_potential_csv(write_csv("r,V,rVprime\n# comment\n0,0,0\n1,1,2\n2,4,8\n"));
    ASSERT_EQ(t.r.size(), 3u);
    const Potential p = Potential::from_table(t);
    EXPECT_EQ(p.kind(), Potential::Kind::Table);
    EXPECT_DOUBLE_EQ(p.value(1.5), 2.5);
    EXPECT_DOUBLE_EQ(p.r_dvdr(0.5), 1.0);
    EXPECT_EQ(p.max_radius(), 2.0);
    EXPECT_THROW(p.value(2.5), ConfigError);
}

TEST(Potential, MalformedRowsRejected) {
    EXPECT_THROW(read_potential_csv(write_csv("r,V,rVprime\n0,0,0\n1,1\n")), ConfigError);
    EXPECT_THROW(read_potential_csv("/nonexistent/v.csv"), ConfigError);
}

TEST(Potential, TableValidation) {
    EXPECT_THROW(Potential::from_table({{0.0}, {0.0}, {0.0}}), ConfigError);
    EXPECT_THROW(Potential::from_table({{0.5, 1.0}, {0.0, 1.0}, {0.0, 2.0}}), ConfigError);
    EXPECT_THROW(Potential::from_table({{0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 2.0, 2.0}}), ConfigError);
    EXPECT_THROW(Potential::from_table({{0.0, 1.0}, {0.0, -1.0}, {0.0, 2.0}}), ConfigError);
    EXPECT_THROW(Potential::from_table({{0.0, 1.0}, {0.0, 1.0}}), ConfigError);
}

TEST(Potential, SampledTableTooShortForGrid) {
    const Potential p = Potential::from_table({{0.0, 1.0}, {0.0, 1.0}, {0.0, 2.0}});
    EXPECT_THROW(sample_potential(p, make_grid(8.0, 16)), ConfigError);
}

TEST(Potential, SampledGrowthConstantOfHarmonicTrap) {
    const Grid2D g = make_grid(16.0, 32);
    const SampledPotential sp = sample_potential(Potential::harmonic(), g);
    const double rmax2 = g.radius_sq(0, 0);
    EXPECT_NEAR(sp.growth_constant, 2.0 * rmax2 / (1.0 + rmax2), 1e-12);
    const SampledPotential scaled = sample_potential(Potential::harmonic(), g, 2.0, 3.0);
    EXPECT_NEAR(scaled.value[0], 3.0 * rmax2 / 4.0, 1e-12);
}

}  // namespace
}  // namespace fgpe
