#include "fgpe/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fgpe/errors.hpp"

namespace fgpe {

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x > xs.back())
        throw ConfigError("potential table ends at r = " + std::to_string(xs.back()) +
                          " but r = " + std::to_string(x) + " was requested");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return (1.0 - w) * ys[lo] + w * ys[hi];
}

}  // namespace

RadialTable read_potential_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential file " + path);
    RadialTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double r = 0.0, v = 0.0, rv = 0.0;
        if (!(row >> r >> v >> rv)) {
            if (lineno == 1) continue;  // header
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected r, V, rVprime");
        }
        t.r.push_back(r);
        t.value.push_back(v);
        t.r_dvdr.push_back(rv);
    }
    return t;
}

Potential Potential::harmonic() { return Potential{}; }

Potential Potential::from_table(RadialTable table) {
    const std::size_t m = table.r.size();
    if (m < 2 || table.value.size() != m || table.r_dvdr.size() != m)
        throw ConfigError("potential table needs at least two complete rows of (r, V, rVprime)");
    if (table.r.front() != 0.0) throw ConfigError("potential table must start at r = 0");
    for (std::size_t k = 1; k < m; ++k)
        if (!(table.r[k] > table.r[k - 1])) throw ConfigError("potential radii must increase strictly");
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::isfinite(table.value[k]) || !std::isfinite(table.r_dvdr[k]))
            throw ConfigError("potential table has non-finite entries");
        if (table.value[k] < 0.0) throw ConfigError("potential must be nonnegative");
    }
    Potential p;
    p.kind_ = Kind::Table;
    p.table_ = std::move(table);
    return p;
}

double Potential::max_radius() const noexcept {
    return is_harmonic() ? std::numeric_limits<double>::infinity() : table_.r.back();
}

double Potential::value(double r) const {
    return is_harmonic() ? r * r : interpolate(table_.r, table_.value, r);
}

double Potential::r_dvdr(double r) const {
    return is_harmonic() ? 2.0 * r * r : interpolate(table_.r, table_.r_dvdr, r);
}

std::string Potential::describe() const {
    return is_harmonic() ? "harmonic" : "table(" + std::to_string(table_.r.size()) + " rows)";
}

SampledPotential sample_potential(const Potential& pot, const Grid2D& grid, double b, double c_v) {
    SampledPotential out;
    out.value.resize(grid.size());
    out.x_grad.resize(grid.size());
    const std::size_t n = grid.n();
    double growth = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double r = std::sqrt(grid.radius_sq(i, j)) / b;
            const double v = pot.value(r);
            const double xg = pot.r_dvdr(r);
            if (v < 0.0) throw ConfigError("sampled potential is negative");
            growth = std::max(growth, std::abs(xg) / (1.0 + v));
            out.value[i * n + j] = c_v * v;
            out.x_grad[i * n + j] = c_v * xg;
        }
    out.growth_constant = growth;
    return out;
}

}  // namespace fgpe
