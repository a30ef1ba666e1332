#include "fgpe/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "fgpe/errors.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

namespace {

// Squared node distance from the origin node, in units of h^2.
long long shell_key(std::size_t i, std::size_t j, std::size_t n) {
    const long long a = static_cast<long long>(i) - static_cast<long long>(n / 2);
    const long long b = static_cast<long long>(j) - static_cast<long long>(n / 2);
    return a * a + b * b;
}

std::vector<std::size_t> cells_by_radius(std::size_t n) {
    std::vector<long long> key(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) key[i * n + j] = shell_key(i, j, n);
    std::vector<std::size_t> order(n * n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return order;
}

}  // namespace

ScalarField schwarz_rearrange(const ScalarField& u) {
    require_finite(u, "schwarz_rearrange");
    if (!u.is_nonnegative()) throw ConfigError("rearrangement needs a nonnegative field");
    const std::size_t n = u.grid.n();
    std::vector<double> vals(u.values);
    for (double& v : vals) v = std::max(v, 0.0);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    const std::vector<std::size_t> order = cells_by_radius(n);
    ScalarField out(u.grid);
    std::size_t start = 0;
    while (start < order.size()) {
        const std::size_t c0 = order[start];
        const long long key = shell_key(c0 / n, c0 % n, n);
        std::size_t end = start;
        double sq = 0.0;
        while (end < order.size() && shell_key(order[end] / n, order[end] % n, n) == key) {
            sq += vals[end] * vals[end];
            ++end;
        }
        const double rms = std::sqrt(sq / static_cast<double>(end - start));
        for (std::size_t k = start; k < end; ++k) out.values[order[k]] = rms;
        start = end;
    }
    return out;
}

ModulusCheck modulus_seminorm_check(const ScalarField& u, double s) {
    const FractionalSymbol sym(u.grid, s);
    ScalarField a = u;
    for (double& v : a.values) v = std::abs(v);
    return ModulusCheck{frac_seminorm_sq(a, sym), frac_seminorm_sq(u, sym)};
}

std::vector<std::pair<double, double>> radial_profile(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    const std::vector<std::size_t> order = cells_by_radius(n);
    std::vector<std::pair<double, double>> out;
    std::size_t start = 0;
    const double h = u.grid.spacing();
    while (start < order.size()) {
        const long long key = shell_key(order[start] / n, order[start] % n, n);
        std::size_t end = start;
        double acc = 0.0;
        while (end < order.size() && shell_key(order[end] / n, order[end] % n, n) == key) {
            acc += u.values[order[end]];
            ++end;
        }
        out.emplace_back(h * std::sqrt(static_cast<double>(key)), acc / static_cast<double>(end - start));
        start = end;
    }
    return out;
}

bool radially_nonincreasing(const ScalarField& u, double tol) {
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    const auto n = static_cast<long long>(u.grid.n());
    const long long c = n / 2;
    // Compare each node inside the inscribed disc with its neighbour one step closer to the
    // origin along the discrete ray through it.
    for (long long a = -c + 1; a < c; ++a)
        for (long long b = -c + 1; b < c; ++b) {
            if (a == 0 && b == 0) continue;
            if (a * a + b * b >= c * c) continue;
            const long long big = std::max(std::abs(a), std::abs(b));
            const double shrink = static_cast<double>(big - 1) / static_cast<double>(big);
            const auto pa = static_cast<long long>(std::llround(static_cast<double>(a) * shrink));
            const auto pb = static_cast<long long>(std::llround(static_cast<double>(b) * shrink));
            const double here = u.at(static_cast<std::size_t>(c + a), static_cast<std::size_t>(c + b));
            const double parent = u.at(static_cast<std::size_t>(c + pa), static_cast<std::size_t>(c + pb));
            if (here > parent + tol * peak) return false;
        }
    return true;
}

ScalarField recenter(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    double mx = 0.0, my = 0.0, m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double w = u.at(i, j) * u.at(i, j);
            m += w;
            mx += w * u.grid.coordinate(i);
            my += w * u.grid.coordinate(j);
        }
    if (m == 0.0) return u;
    const double h = u.grid.spacing();
    const auto di = static_cast<long long>(std::llround(mx / m / h));
    const auto dj = static_cast<long long>(std::llround(my / m / h));
    if (di == 0 && dj == 0) return u;
    const auto nn = static_cast<long long>(n);
    ScalarField out(u.grid);
    for (long long i = 0; i < nn; ++i)
        for (long long j = 0; j < nn; ++j) {
            const auto si = static_cast<std::size_t>(((i + di) % nn + nn) % nn);
            const auto sj = static_cast<std::size_t>(((j + dj) % nn + nn) % nn);
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = u.at(si, sj);
        }
    return out;
}

}  // namespace fgpe
