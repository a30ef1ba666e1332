#pragma once

#include <string>

#include "fgpe/constrained.hpp"
#include "fgpe/field.hpp"
#include "fgpe/groundstate.hpp"
#include "json.hpp"

namespace fgpe {

struct FieldMeta {
    double s = 1.0;
    double N = 0.0;
    std::string kind;  // "ground_state", "local_min", "saddle", ...
};

// <stem>.bin holds n*n little-endian float64 values in row-major order (first index = x);
// <stem>.json holds {n, L, s, N, kind}.
void write_field(const std::string& stem, const ScalarField& u, const FieldMeta& meta);
ScalarField read_field(const std::string& stem, FieldMeta* meta = nullptr);

nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const GroundStateResult& r);
// Scalars, classification and trace; the field itself is written separately.
nlohmann::json to_json(const SolveReport& r);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace fgpe
