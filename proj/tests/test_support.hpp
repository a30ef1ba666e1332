#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "fgpe/field.hpp"
#include "fgpe/grid.hpp"

namespace fgpe::testing {

inline ScalarField gaussian(const Grid2D& g, double width = 1.0) {
    return sample(g, [&](double x, double y) { return std::exp(-0.5 * (x * x + y * y) / (width * width)); });
}

// cos(kx x + ky y) with integer wave indices so that the mode is periodic on the box.
inline ScalarField cosine_mode(const Grid2D& g, int a, int b) {
    const double k0 = 2.0 * M_PI / g.extent();
    return sample(g, [&](double x, double y) { return std::cos(k0 * (a * x + b * y)); });
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Fresh directory under the system temp dir, named after the running test.
inline std::filesystem::path scratch_dir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / (std::string("fgpe_") + info->test_suite_name() + "_" + info->name());
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace fgpe::testing
