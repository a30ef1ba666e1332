#include <gtest/gtest.h>

#include "fgpe/errors.hpp"
#include "fgpe/field.hpp"
#include "fgpe/grid.hpp"
#include "test_support.hpp"

namespace fgpe {
namespace {

TEST(Grid, RejectsBadSizes) {
    EXPECT_THROW(make_grid(16.0, 100), ConfigError);
    EXPECT_THROW(make_grid(16.0, 8), ConfigError);
    EXPECT_THROW(make_grid(0.0, 64), ConfigError);
    EXPECT_THROW(make_grid(std::nan(""), 64), ConfigError);
    EXPECT_NO_THROW(make_grid(16.0, 64));
}

TEST(Grid, OriginIsCentreNode) {
    const Grid2D g = make_grid(16.0, 64);
    EXPECT_DOUBLE_EQ(g.coordinate(0), -8.0);
    EXPECT_DOUBLE_EQ(g.coordinate(32), 0.0);
    EXPECT_DOUBLE_EQ(g.radius_sq(32, 32), 0.0);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
}

TEST(Grid, WavenumbersWrapAtNyquist) {
    const Grid2D g = make_grid(2.0 * M_PI, 16);
    EXPECT_DOUBLE_EQ(g.wavenumber(0), 0.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(3), 3.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(8), -8.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(15), -1.0);
}

TEST(Field, GaussianIntegrals) {
    const Grid2D g = make_grid(16.0, 128);
    const ScalarField u = testing::gaussian(g);
    EXPECT_NEAR(mass(u), M_PI, 1e-12);
    EXPECT_NEAR(l4_quartic(u), M_PI / 2.0, 1e-12);
    EXPECT_NEAR(integrate(u), 2.0 * M_PI, 1e-12);
}

TEST(Field, SizeMismatchThrows) {
    const Grid2D g = make_grid(16.0, 32);
    EXPECT_THROW(ScalarField(g, std::vector<double>(10)), ConfigError);
    const ScalarField a(g);
    const ScalarField b(make_grid(16.0, 64));
    EXPECT_THROW(l2_distance(a, b), NumericalError);
}

TEST(Field, OuterMassAndAsymmetry) {
    const Grid2D g = make_grid(16.0, 128);
    const ScalarField u = testing::gaussian(g);
    EXPECT_LT(outer_mass_fraction(u), 1e-20);
    EXPECT_LT(asymmetry(u), 1e-14);
    const ScalarField shifted = sample(g, [](double x, double y) { return std::exp(-0.5 * ((x - 1) * (x - 1) + y * y)); });
    EXPECT_GT(asymmetry(shifted), 0.1);
    const ScalarField flat = sample(g, [](double, double) { return 1.0; });
    EXPECT_NEAR(outer_mass_fraction(flat), 1.0 - M_PI * 0.81 / 4.0, 0.01);
}

TEST(Field, NonFiniteRejected) {
    ScalarField u(make_grid(16.0, 16));
    u.values[3] = std::nan("");
    EXPECT_FALSE(u.all_finite());
    EXPECT_THROW(require_finite(u, "test"), NumericalError);
}

}  // namespace
}  // namespace fgpe
