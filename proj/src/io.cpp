#include "fgpe/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <variant>

#include "fgpe/errors.hpp"

namespace fgpe {

using nlohmann::json;

namespace {

std::uint64_t to_little_endian(std::uint64_t x) {
    if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(x);
    return x;
}

}  // namespace

void write_field(const std::string& stem, const ScalarField& u, const FieldMeta& meta) {
    std::ofstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw ConfigError("cannot write " + stem + ".bin");
    for (double v : u.values) {
        const std::uint64_t raw = to_little_endian(std::bit_cast<std::uint64_t>(v));
        char bytes[8];
        std::memcpy(bytes, &raw, 8);
        bin.write(bytes, 8);
    }
    if (!bin) throw NumericalError("write failed for " + stem + ".bin");
    write_json(stem + ".json", json{{"n", u.grid.n()},
                                    {"L", u.grid.extent()},
                                    {"s", meta.s},
                                    {"N", meta.N},
                                    {"kind", meta.kind}});
}

ScalarField read_field(const std::string& stem, FieldMeta* meta) {
    const json j = read_json(stem + ".json");
    const Grid2D g = make_grid(j.at("L").get<double>(), j.at("n").get<std::size_t>());
    if (meta) {
        meta->s = j.at("s").get<double>();
        meta->N = j.at("N").get<double>();
        meta->kind = j.at("kind").get<std::string>();
    }
    std::ifstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw ConfigError("cannot read " + stem + ".bin");
    ScalarField u(g);
    for (double& v : u.values) {
        char bytes[8];
        if (!bin.read(bytes, 8)) throw ConfigError(stem + ".bin is shorter than n*n values");
        std::uint64_t raw;
        std::memcpy(&raw, bytes, 8);
        v = std::bit_cast<double>(to_little_endian(raw));
    }
    if (bin.peek() != std::char_traits<char>::eof()) throw ConfigError(stem + ".bin is longer than n*n values");
    return u;
}

json to_json(const EnergyBreakdown& e) {
    return json{{"mass", e.mass},         {"kinetic", e.kinetic}, {"potential", e.potential},
                {"quartic", e.quartic},   {"energy", e.total},    {"multiplier", e.multiplier},
                {"virial", e.virial}};
}

json to_json(const GroundStateResult& r) {
    return json{{"s", r.s},
                {"Ns_star", r.ns_star},
                {"kinetic", r.kinetic},
                {"quartic", r.quartic},
                {"second_moment", r.second_moment},
                {"iterations", r.iterations},
                {"residual", r.residual},
                {"outer_mass", r.outer_mass},
                {"asymmetry", r.asymmetry},
                {"n", r.Q.grid.n()},
                {"L", r.Q.grid.extent()}};
}

json to_json(const SolveReport& r) {
    json j{{"s", r.s},
           {"N", r.N},
           {"Ns_star", r.ns_star},
           {"breakdown", to_json(r.breakdown)},
           {"el_residual", r.el_residual},
           {"el_residual_scaled", r.el_residual_scaled},
           {"inside_ball", r.inside_ball},
           {"classification", to_string(r.classification)},
           {"message", r.message},
           {"frame_scale", r.frame_scale},
           {"n", r.solution.grid.n()},
           {"L", r.solution.grid.extent()}};
    if (const double* ts = std::get_if<double>(&r.t_s))
        j["t_s"] = *ts;
    else
        j["t_s"] = nullptr;
    j["crossing_iteration"] = r.crossing_iteration ? json(*r.crossing_iteration) : json(nullptr);
    json tr = json::array();
    for (const TraceEntry& t : r.trace) tr.push_back({t.iter, t.energy, t.kinetic, t.virial});
    j["trace_columns"] = {"iter", "energy", "kinetic", "virial"};
    j["trace"] = tr;
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << j.dump(2) << '\n';
    if (!f) throw NumericalError("write failed for " + path);
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace fgpe
