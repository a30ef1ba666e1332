#include "fgpe/groundstate.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "fgpe/errors.hpp"
#include "fgpe/resample.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

GroundStateResult solve_ground_state(double s, const Grid2D& grid, const GroundStateOptions& opt,
                                     const ScalarField* warm_start) {
    if (!(s > 0.5 && s <= 1.0)) throw ConfigError("ground state needs s in (1/2, 1]");
    const FractionalSymbol sym(grid, s);
    const std::vector<double>& m = sym.table();
    std::vector<double> resolvent(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) resolvent[k] = 1.0 / (1.0 + m[k]);

    ScalarField u(grid);
    if (!warm_start && opt.coarse_n != 0 && opt.coarse_n < grid.n()) {
        GroundStateOptions coarse_opt = opt;
        coarse_opt.coarse_n = opt.coarse_n >= 1024 ? opt.coarse_n / 2 : 0;
        const GroundStateResult coarse =
            solve_ground_state(s, make_grid(grid.extent(), opt.coarse_n), coarse_opt);
        u = refine(coarse.Q, grid.n());
    } else if (warm_start) {
        if (warm_start->grid != grid) throw NumericalError("warm start lives on a different grid");
        u = *warm_start;
    } else {
        u = sample(grid, [](double x, double y) { return 2.0 * std::exp(-0.5 * (x * x + y * y)); });
    }

    std::vector<double> mplus(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) mplus[k] = 1.0 + m[k];

    GroundStateResult res{ScalarField(grid)};
    res.s = s;
    const double h2 = grid.cell_area();
    for (int it = 0; it <= opt.max_iter; ++it) {
        Spectrum uh = forward(u);
        const double lin = spectral_quadratic(uh, &mplus);
        ScalarField cube(grid);
        double nl = 0.0;
        for (std::size_t k = 0; k < u.values.size(); ++k) {
            const double v = u.values[k];
            cube.values[k] = v * v * v;
            nl += v * v * v * v;
        }
        nl *= h2;
        if (!(nl > 0.0) || !std::isfinite(lin))
            throw SolverError(SolverFailure::Collapse, "ground-state iterate collapsed to zero");
        const double S = lin / nl;
        if (S < 1e-8 || S > 1e8)
            throw SolverError(SolverFailure::Collapse, "stabilization factor drifted to " + std::to_string(S));

        // Residual (1 + L) u - u^3 from the spectrum already at hand.
        Spectrum lu = uh;
        for (std::size_t k = 0; k < lu.coeffs.size(); ++k) lu.coeffs[k] *= mplus[k];
        ScalarField r = inverse(lu);
        for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] -= cube.values[k];
        res.residual = std::sqrt(mass(r) / mass(u));
        res.iterations = it;
        if (res.residual <= opt.tol) break;
        if (it == opt.max_iter)
            throw SolverError(SolverFailure::NonConvergence,
                              "ground state did not converge, residual " + std::to_string(res.residual));

        ScalarField next = apply_multiplier(cube, resolvent);
        const double scale = std::pow(S, 1.5);
        for (double& v : next.values) v *= scale;
        u = std::move(next);
    }

    res.outer_mass = outer_mass_fraction(u);
    if (res.outer_mass > opt.decay_guard)
        throw SolverError(SolverFailure::BoxTooSmall,
                          "box too small: outer annulus holds a mass fraction " + std::to_string(res.outer_mass));
    res.asymmetry = asymmetry(u);
    if (res.asymmetry > opt.symmetry_tol)
        throw NumericalError("ground state lost radial symmetry: " + std::to_string(res.asymmetry));
    res.ns_star = mass(u);
    res.kinetic = frac_seminorm_sq(u, sym);
    res.quartic = l4_quartic(u);
    double m2 = 0.0;
    const std::size_t n = grid.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m2 += grid.radius_sq(i, j) * u.at(i, j) * u.at(i, j);
    res.second_moment = m2 * h2;
    res.Q = std::move(u);
    return res;
}

std::vector<NStarEntry> n_star_curve(const std::vector<double>& s_list, const Grid2D& grid,
                                     const GroundStateOptions& opt, bool warm_start) {
    std::vector<NStarEntry> out;
    out.reserve(s_list.size());
    const ScalarField* previous = nullptr;
    for (double s : s_list) {
        NStarEntry e;
        e.s = s;
        try {
            e.result = solve_ground_state(s, grid, opt, warm_start ? previous : nullptr);
            e.status = "ok";
        } catch (const SolverError& err) {
            e.status = to_string(err.kind());
        } catch (const ConfigError&) {
            e.status = "invalid_order";
        }
        out.push_back(std::move(e));
        previous = out.back().result ? &out.back().result->Q : nullptr;
    }
    return out;
}

void write_n_star_csv(const std::string& path, const std::vector<NStarEntry>& entries) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "s,Ns_star,kinetic,quartic,residual,iterations\n";
    f << std::setprecision(17);
    for (const auto& e : entries) {
        f << e.s << ',';
        if (e.result)
            f << e.result->ns_star << ',' << e.result->kinetic << ',' << e.result->quartic << ','
              << e.result->residual << ',' << e.result->iterations << '\n';
        else
            f << ",,,,\n";
    }
}

}  // namespace fgpe
