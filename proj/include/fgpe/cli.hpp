#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fgpe {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfig = 2,
    kExitNonConvergence = 3,
    kExitEscaped = 4,
    kExitResolution = 5,
};

struct RunConfig {
    std::string command;  // groundstate, minimize, saddle, sweep, verify
    // Unset values take per-command defaults in resolve().
    std::optional<double> L;
    std::optional<std::size_t> n;
    std::optional<double> s;
    std::vector<double> s_list;
    // Absolute mass, or a multiple of N1* written with an "x" suffix ("0.5x").
    std::string N = "0.5x";
    std::optional<double> tol;
    std::optional<double> dt;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    // "harmonic" or a CSV path with columns r, V, rV'.
    std::string potential = "harmonic";

    // Fills defaults and validates; throws ConfigError.
    RunConfig resolve() const;
};

struct MassSpec {
    double value = 0.0;
    bool relative = false;
};

MassSpec parse_mass(const std::string& text);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

// Runs one command, writing artifacts under c.out and progress lines to log.
int run(const RunConfig& c, std::ostream& log);

}  // namespace fgpe
