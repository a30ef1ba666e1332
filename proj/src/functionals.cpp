#include "fgpe/functionals.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fgpe/errors.hpp"
#include "operators.hpp"

namespace fgpe {

void ProblemParams::validate() const {
    if (!(s > 0.5 && s <= 1.0)) throw ConfigError("order s must lie in (1/2, 1], got " + std::to_string(s));
    if (!(N > 0.0) || !std::isfinite(N)) throw ConfigError("mass N must be positive, got " + std::to_string(N));
}

Discretization discretize(const ProblemParams& p, const Grid2D& grid) {
    p.validate();
    return Discretization{grid, p.s, FractionalSymbol(grid, p.s), sample_potential(p.potential, grid)};
}

EnergyBreakdown energy(const ScalarField& u, const Discretization& d) {
    require_finite(u, "energy");
    if (u.grid != d.grid) throw NumericalError("field and discretization grids differ");
    EnergyBreakdown e;
    e.kinetic = frac_seminorm_sq(u, d.symbol);
    double pot = 0.0, xg = 0.0, m = 0.0, q = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double v2 = u.values[k] * u.values[k];
        m += v2;
        q += v2 * v2;
        pot += d.potential.value[k] * v2;
        xg += d.potential.x_grad[k] * v2;
    }
    const double h2 = u.grid.cell_area();
    e.mass = m * h2;
    e.quartic = q * h2;
    e.potential = pot * h2;
    e.total = 0.5 * (e.kinetic + e.potential) - 0.25 * e.quartic;
    e.multiplier = e.mass > 0.0 ? (e.kinetic + e.potential - e.quartic) / e.mass : 0.0;
    e.virial = d.s * e.kinetic - 0.5 * xg * h2 - 0.5 * e.quartic;
    return e;
}

EnergyBreakdown energy(const ScalarField& u, const ProblemParams& p) {
    return energy(u, discretize(p, u.grid));
}

double virial(const ScalarField& u, const ProblemParams& p) { return energy(u, p).virial; }

ScalarField euler_lagrange_residual(const ScalarField& u, const Discretization& d, double mu) {
    ScalarField r = frac_laplacian(u, d.symbol);
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const double v = u.values[k];
        r.values[k] += (d.potential.value[k] - v * v - mu) * v;
    }
    return r;
}

double el_residual_norm(const ScalarField& u, const Discretization& d, double mu) {
    const double nu = std::sqrt(mass(u));
    if (nu == 0.0) throw NumericalError("residual of the zero field is undefined");
    return std::sqrt(mass(euler_lagrange_residual(u, d, mu))) / nu;
}

double gn_quotient(const ScalarField& u, double s) {
    const double m = mass(u);
    if (m == 0.0) throw NumericalError("Gagliardo-Nirenberg quotient of the zero field");
    const double k = frac_seminorm_sq(u, FractionalSymbol(u.grid, s));
    return l4_quartic(u) / (std::pow(k, 1.0 / s) * std::pow(m, 2.0 - 1.0 / s));
}

InterpolationCheck interpolation_check(const ScalarField& u, double s) {
    if (!(s > 0.75 && s <= 1.0)) throw ConfigError("interpolation check needs s in (3/4, 1]");
    const double theta = 3.0 / (4.0 * s);
    InterpolationCheck c;
    c.lhs = frac_seminorm_sq(u, FractionalSymbol(u.grid, 0.75));
    c.rhs = std::pow(frac_seminorm_sq(u, FractionalSymbol(u.grid, s)), theta) * std::pow(mass(u), 1.0 - theta);
    return c;
}

double gn_constant(double s, double ns_star) {
    if (!(s > 0.5 && s <= 1.0)) throw ConfigError("gn_constant needs s in (1/2, 1]");
    if (!(ns_star > 0.0)) throw ConfigError("gn_constant needs a positive critical mass");
    return 2.0 * s / (std::pow(2.0 * s - 1.0, 1.0 - 1.0 / s) * ns_star);
}

KineticRadius kinetic_radius(const ProblemParams& p, double ns_star) {
    p.validate();
    if (p.s == 1.0) return UndefinedAtUnitOrder{};
    const double s = p.s;
    return std::exp(std::log(p.N / (2.0 * s - 1.0)) + s / (1.0 - s) * std::log(ns_star / p.N));
}

double boundary_curve(double t, double s, double N, double ns_star) {
    const double log_lambda = std::log(s) - (1.0 - 1.0 / s) * std::log(2.0 * s - 1.0);
    // t * (1 - lambda N^{2-1/s} t^{1/s-1} / Ns*) keeps large t^{1/s} out of range issues.
    const double log_ratio =
        log_lambda + (2.0 - 1.0 / s) * std::log(N) + (1.0 / s - 1.0) * std::log(t) - std::log(ns_star);
    return t * (1.0 - std::exp(log_ratio));
}

std::variant<BoundaryGap, UndefinedAtUnitOrder> boundary_gap(const ProblemParams& p, double ns_star,
                                                             std::size_t samples) {
    const KineticRadius radius = kinetic_radius(p, ns_star);
    const double* ts = std::get_if<double>(&radius);
    if (!ts) return UndefinedAtUnitOrder{};
    BoundaryGap out;
    out.t_s = *ts;
    out.gap = 0.5 * (1.0 - p.s) * out.t_s;
    const std::size_t m = std::max<std::size_t>(samples, 2);
    for (std::size_t k = 0; k < m; ++k) {
        const double e = -3.0 + 6.0 * static_cast<double>(k) / static_cast<double>(m - 1);
        const double t = out.t_s * std::pow(10.0, e);
        out.curve.emplace_back(t, boundary_curve(t, p.s, p.N, ns_star));
    }
    return out;
}

NonexistenceGap nonexistence_gap(const ProblemParams& p, double ns_star) {
    p.validate();
    if (p.s == 1.0) throw ConfigError("nonexistence_gap is undefined at s = 1");
    const double s = p.s, N = p.N;
    const double log_lhs = -s * std::log(4.0) + s * std::log(s) + s * std::log(N / (2.0 * s - 1.0)) +
                           s * s / (1.0 - s) * std::log(ns_star / N) - 2.0 * std::log(1.0 - s) +
                           (1.0 - s) * std::log(N);
    const double a = 1.0 - std::exp(-1.0);
    const double b = 2.0 * std::numbers::e;
    return NonexistenceGap{std::exp(log_lhs), a * a / (b * b)};
}

namespace {

// Lanczos coefficients for g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos(double x) {
    x -= 1.0;
    double a = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (x + static_cast<double>(k));
    const double t = x + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0 && x <= 2.0)) throw ConfigError("gamma_fn is only provided on (0, 2]");
    if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
    return lanczos(x);
}

double hardy_constant(double s) {
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("hardy_constant needs s in (0, 1)");
    const double ratio = gamma_fn(0.5 * (1.0 + s)) / gamma_fn(0.5 * (1.0 - s));
    return std::pow(4.0, s) * ratio * ratio;
}

double principal_eigenvalue(const Discretization& d, double tol) {
    const Grid2D& g = d.grid;
    const Vec none;
    ScalarField u = sample(g, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
    Vec x = u.values;
    const detail::SplitPreconditioner precond(d, 1.0);
    auto A = [&](const Vec& in, Vec& out) { detail::apply_operator(d, none, 0.0, in, out); };
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double nx = std::sqrt(dot(x, x));
        for (double& v : x) v /= nx;
        Vec ax;
        A(x, ax);
        const double next = dot(x, ax);
        if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
        lambda = next;
        Vec y = x;
        pcg(A, precond, x, y, 1e-13, 2000);
        x = std::move(y);
    }
    throw SolverError(SolverFailure::NonConvergence, "principal eigenvalue inverse iteration stalled");
}

}  // namespace fgpe
