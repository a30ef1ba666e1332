#include "fgpe/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fgpe/errors.hpp"
#include "fgpe/resample.hpp"
#include "fgpe/spectral.hpp"
#include "operators.hpp"

namespace fgpe {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::LocalMin: return "local_min";
        case Classification::Saddle: return "saddle";
        case Classification::Escaped: return "escaped";
        case Classification::Failed: return "failed";
    }
    return "unknown";
}

namespace {

void set_mass(ScalarField& u, double N) {
    const double m = mass(u);
    if (!(m > 0.0)) throw ConfigError("initial field has zero mass");
    const double c = std::sqrt(N / m);
    for (double& v : u.values) v *= c;
}

void orient_positive(ScalarField& u) {
    if (integrate(u) < 0.0)
        for (double& v : u.values) v = -v;
}

class TraceRecorder {
public:
    TraceRecorder(SolveReport& rep, const KineticRadius& ts) : rep_(rep), ts_(std::get_if<double>(&ts)) {}

    // Returns true once any recorded iterate has reached the kinetic radius.
    bool record(int iter, const EnergyBreakdown& e) {
        rep_.trace.push_back({iter, e.total, e.kinetic, e.virial});
        if (ts_ && e.kinetic >= *ts_ && !rep_.crossing_iteration) rep_.crossing_iteration = iter;
        return rep_.crossing_iteration.has_value();
    }

private:
    SolveReport& rep_;
    const double* ts_;
};

bool energy_increased(double next, double prev) {
    return next > prev + 1e-12 * std::max(1.0, std::abs(prev));
}

void finalize_local_min(SolveReport& rep, ScalarField u, const EnergyBreakdown& e, double el,
                        const LocalMinOptions& opt) {
    orient_positive(u);
    rep.solution = std::move(u);
    rep.breakdown = e;
    rep.el_residual = el;
    rep.el_residual_scaled = el / std::max(1.0, std::abs(e.multiplier));
    const double* ts = std::get_if<double>(&rep.t_s);
    rep.inside_ball = ts ? e.kinetic < *ts : true;
    if (rep.crossing_iteration) {
        rep.classification = Classification::Escaped;
        rep.message = "kinetic energy reached t_s at iterate " + std::to_string(*rep.crossing_iteration);
        return;
    }
    if (el > opt.tol) {
        rep.classification = Classification::Failed;
        rep.message = "no convergence: residual " + std::to_string(el);
        return;
    }
    if (std::abs(e.virial) > opt.pohozaev_tol * e.kinetic) {
        rep.classification = Classification::Failed;
        rep.message = "Pohozaev check failed: |P|/K = " + std::to_string(std::abs(e.virial) / e.kinetic);
        return;
    }
    rep.classification = rep.inside_ball ? Classification::LocalMin : Classification::Failed;
    rep.message = rep.inside_ball ? "converged" : "converged outside the kinetic ball";
}

}  // namespace

ScalarField default_local_min_init(const ProblemParams& p, const Grid2D& grid) {
    ScalarField u = sample(grid, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
    set_mass(u, p.N);
    return u;
}

ScalarField seeded_initial_field(const Grid2D& grid, double N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double width = 0.5 + 1.5 * uni(rng);
    const double cx = uni(rng) - 0.5;
    const double cy = uni(rng) - 0.5;
    struct Mode { double kx, ky, phase, amp; };
    std::vector<Mode> modes(8);
    const double k0 = 2.0 * std::numbers::pi / grid.extent();
    for (auto& m : modes) {
        m.kx = k0 * std::floor(1.0 + 6.0 * uni(rng));
        m.ky = k0 * std::floor(1.0 + 6.0 * uni(rng));
        m.phase = 2.0 * std::numbers::pi * uni(rng);
        m.amp = 0.05 * uni(rng);
    }
    ScalarField u = sample(grid, [&](double x, double y) {
        const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        double noise = 1.0;
        for (const auto& m : modes) noise += m.amp * std::cos(m.kx * x + m.ky * y + m.phase);
        return std::exp(-0.5 * r2 / (width * width)) * std::abs(noise);
    });
    set_mass(u, N);
    return u;
}

SolveReport solve_local_min(const ProblemParams& p, double ns_star, const Grid2D& grid,
                            const LocalMinOptions& opt, const ScalarField* init) {
    const Discretization d = discretize(p, grid);
    SolveReport rep(grid);
    rep.s = p.s;
    rep.N = p.N;
    rep.ns_star = ns_star;
    rep.t_s = kinetic_radius(p, ns_star);
    TraceRecorder trace(rep, rep.t_s);

    ScalarField u = init ? *init : default_local_min_init(p, grid);
    if (u.grid != grid) throw ConfigError("initial field lives on a different grid");
    require_finite(u, "solve_local_min");
    set_mass(u, p.N);
    EnergyBreakdown e = energy(u, d);
    int it = 0;
    double el = el_residual_norm(u, d, e.multiplier);
    if (trace.record(it, e)) {
        finalize_local_min(rep, std::move(u), e, el, opt);
        return rep;
    }

    // Flow: u <- u - dt D^{-1/2} (1 + dt m)^{-1} D^{-1/2} r with D = 1 + dt V, projected to the
    // tangent space and renormalized. Fixed points are exact critical points.
    double dt = opt.dt;
    std::vector<double> resolvent, dscale;
    auto build_preconditioner = [&](double step) {
        resolvent = d.symbol.table();
        for (double& m : resolvent) m = 1.0 / (1.0 + step * m);
        dscale.resize(grid.size());
        for (std::size_t k = 0; k < dscale.size(); ++k)
            dscale[k] = 1.0 / std::sqrt(1.0 + step * d.potential.value[k]);
    };
    build_preconditioner(dt);
    int flow_steps = 0;
    while (el > opt.newton_switch && el > opt.tol) {
        if (flow_steps >= opt.max_flow_iter) {
            finalize_local_min(rep, std::move(u), e, el, opt);
            return rep;
        }
        ScalarField r = euler_lagrange_residual(u, d, e.multiplier);
        for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] *= dscale[k];
        ScalarField dir = apply_multiplier(r, resolvent);
        for (std::size_t k = 0; k < dir.values.size(); ++k) dir.values[k] *= dscale[k];
        const double proj = inner(u, dir) / mass(u);
        ScalarField trial = u;
        for (std::size_t k = 0; k < trial.values.size(); ++k)
            trial.values[k] -= dt * (dir.values[k] - proj * u.values[k]);
        set_mass(trial, p.N);
        const EnergyBreakdown et = energy(trial, d);
        if (energy_increased(et.total, e.total)) {
            dt *= 0.5;
            if (dt < 1e-14) break;
            build_preconditioner(dt);
            continue;
        }
        u = std::move(trial);
        e = et;
        ++flow_steps;
        ++it;
        if (it % 100 == 0) {
            u = recenter(u);
            e = energy(u, d);
        }
        if (trace.record(it, e)) {
            finalize_local_min(rep, std::move(u), e, el, opt);
            return rep;
        }
        el = el_residual_norm(u, d, e.multiplier);
    }

    // Projected Newton on the tangent space {phi : <u, phi> = 0}.
    const detail::SplitPreconditioner precond(d, 1.0);
    for (int k = 0; k < opt.max_newton_iter && el > opt.tol; ++k) {
        const ScalarField r = euler_lagrange_residual(u, d, e.multiplier);
        Vec rhs(r.values.size());
        for (std::size_t q = 0; q < rhs.size(); ++q) rhs[q] = -r.values[q];
        Vec diag(u.values.size());
        for (std::size_t q = 0; q < diag.size(); ++q) diag[q] = -3.0 * u.values[q] * u.values[q];
        const double shift = -e.multiplier;
        auto A = [&](const Vec& in, Vec& out) { detail::apply_operator(d, diag, shift, in, out); };
        auto P = [&](const Vec& in, Vec& out) { precond(in, out); };
        Vec step(rhs.size(), 0.0);
        pcg(A, P, rhs, step, std::min(1e-2, el), 1000, &u.values);
        bool accepted = false;
        double alpha = 1.0;
        for (int ls = 0; ls < 30 && !accepted; ++ls, alpha *= 0.5) {
            ScalarField trial = u;
            for (std::size_t q = 0; q < trial.values.size(); ++q) trial.values[q] += alpha * step[q];
            set_mass(trial, p.N);
            const EnergyBreakdown et = energy(trial, d);
            if (energy_increased(et.total, e.total)) continue;
            u = std::move(trial);
            e = et;
            accepted = true;
        }
        if (!accepted) break;
        ++it;
        if (trace.record(it, e)) break;
        el = el_residual_norm(u, d, e.multiplier);
    }
    finalize_local_min(rep, std::move(u), e, el, opt);
    return rep;
}

DilationSample dilation_path_closed(const GroundStateResult& Q, const ProblemParams& p, double t) {
    const double s = p.s;
    DilationSample smp;
    smp.t = t;
    smp.energy = std::numeric_limits<double>::quiet_NaN();
    smp.kinetic = std::numeric_limits<double>::quiet_NaN();
    smp.kinetic_closed = p.N * std::pow(t, 2.0 * s) / (2.0 * s - 1.0);
    if (p.potential.is_harmonic()) {
        smp.energy_closed = 0.5 * smp.kinetic_closed + 0.5 * (p.N / Q.ns_star) * Q.second_moment / (t * t) -
                            0.25 * t * t * 2.0 * s * p.N * p.N / ((2.0 * s - 1.0) * Q.ns_star);
    } else {
        smp.energy_closed = std::numeric_limits<double>::quiet_NaN();
    }
    return smp;
}

std::vector<DilationSample> dilation_path_profile(const GroundStateResult& Q, const ProblemParams& p,
                                                  const std::vector<double>& t_grid) {
    const Discretization d = discretize(p, Q.Q.grid);
    const double a = std::sqrt(p.N / Q.ns_star);
    ScalarField phi = Q.Q;
    for (double& v : phi.values) v *= a;
    std::vector<DilationSample> out;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw ConfigError("dilation parameters must be positive");
        const EnergyBreakdown e = energy(dilate(phi, t), d);
        DilationSample smp = dilation_path_closed(Q, p, t);
        smp.energy = e.total;
        smp.kinetic = e.kinetic;
        out.push_back(smp);
    }
    return out;
}

double dilation_path_function(double rho, double s, double N, double ns_star, double m2) {
    return ns_star * std::pow(rho, 2.0 * s) + (2.0 * s - 1.0) * m2 / (rho * rho) - s * N * rho * rho;
}

MountainPassBracket mountain_pass_bracket(const GroundStateResult& Q, const ProblemParams& p) {
    p.validate();
    const double s = p.s, N = p.N, ns = Q.ns_star;
    if (s >= 1.0) throw ConfigError("mountain-pass bracket needs s < 1");
    if (!(N < ns)) throw ConfigError("mountain-pass bracket needs N below the critical mass");
    MountainPassBracket b;
    const double log_ratio = std::log(ns / N);
    b.rho1 = std::exp(log_ratio / (2.0 * (1.0 - s)));
    b.h_at_rho1 = ns * (1.0 - s) * std::exp(s / (1.0 - s) * log_ratio);
    b.reference = N * (1.0 - s) / (2.0 * (2.0 * s - 1.0)) * std::exp(s / (1.0 - s) * log_ratio);
    const KineticRadius ts = kinetic_radius(p, ns);
    b.lower = 0.5 * (1.0 - s) * std::get<double>(ts);

    // f decreases beyond rho1, so the search over [1, tau2] stops at min(tau2, rho1).
    const double log_tau2 = std::log(2.0) / ((1.0 - s) * (1.0 - s));
    const double hi = std::min(log_tau2, std::log(b.rho1));
    auto f = [&](double lr) { return dilation_path_function(std::exp(lr), s, N, ns, Q.second_moment); };
    const int samples = 4000;
    double best_lr = 0.0, best = f(0.0);
    for (int k = 1; k <= samples; ++k) {
        const double lr = hi * k / samples;
        const double v = f(lr);
        if (v > best) { best = v; best_lr = lr; }
    }
    double lo_lr = std::max(0.0, best_lr - hi / samples), hi_lr = std::min(hi, best_lr + hi / samples);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < 200 && hi_lr - lo_lr > 1e-15 * std::max(1.0, hi_lr); ++k) {
        const double x1 = hi_lr - g * (hi_lr - lo_lr);
        const double x2 = lo_lr + g * (hi_lr - lo_lr);
        if (f(x1) < f(x2)) lo_lr = x1; else hi_lr = x2;
    }
    const double lr = 0.5 * (lo_lr + hi_lr);
    if (f(lr) > best) { best = f(lr); best_lr = lr; }
    b.rho0 = std::exp(best_lr);
    b.upper = N / (2.0 * (2.0 * s - 1.0) * ns) * best;
    // Near s = 1 the two bounds agree to within the rounding of f's cancelling terms.
    if (b.lower - b.upper > 1e-12 * std::abs(b.upper))
        throw NumericalError("mountain-pass bracket inverted: lower " + std::to_string(b.lower) +
                             " > upper " + std::to_string(b.upper));
    return b;
}

namespace {

// One grid level of the frame problem (-Delta)^s w + W w + beta w = w^3 with mass(w) = target.
class FrameSolver {
public:
    FrameSolver(const ProblemParams& p, const Grid2D& g, double b, const MountainPassOptions& opt)
        : s_(p.s),
          g_(g),
          sym_(g, p.s),
          W_(sample_potential(p.potential, g, b, std::pow(b, -2.0 * p.s))),
          target_(p.N * std::pow(b, 2.0 - 2.0 * p.s)),
          theta_(std::pow(b, 4.0 * p.s - 2.0)),
          opt_(opt) {}

    // Adjusts log_beta by secant steps on log mass until the mass constraint holds.
    // Records the mass-normalized state after each step; returns true on convergence.
    bool solve(ScalarField& w, double& log_beta, TraceRecorder& trace, int& counter) const {
        const double slope_guess = 1.0 - 1.0 / s_;  // d log mass / d log beta when W = 0
        const double inner_tol = 0.1 * opt_.tol;
        double prev_lb = 0.0, prev_lm = 0.0;
        bool have_prev = false;
        for (int step = 0; step < opt_.max_mass_steps; ++step) {
            const double res = inner_solve(w, std::exp(log_beta), inner_tol);
            const double m = mass(w);
            const double lm = std::log(m);
            trace.record(counter++, normalized_breakdown(w));
            if (std::abs(m / target_ - 1.0) <= opt_.mass_tol && res <= inner_tol) return true;
            double slope = slope_guess;
            if (have_prev && log_beta != prev_lb) {
                const double sec = (lm - prev_lm) / (log_beta - prev_lb);
                if (sec < 0.0 && std::isfinite(sec)) slope = sec;
            }
            prev_lb = log_beta;
            prev_lm = lm;
            have_prev = true;
            log_beta += (std::log(target_) - lm) / slope;
        }
        return false;
    }

    double target() const noexcept { return target_; }

private:
    // Petviashvili iteration at fixed beta; returns the residual scaled by 1/beta.
    double inner_solve(ScalarField& w, double beta, double tol) const {
        const double h2 = g_.cell_area();
        std::vector<double> shifted = sym_.table();
        for (double& m : shifted) m += beta;
        std::vector<double> resolvent(shifted.size());
        for (std::size_t k = 0; k < shifted.size(); ++k) resolvent[k] = 1.0 / shifted[k];
        double res = 0.0;
        for (int it = 0; it <= opt_.max_inner_iter; ++it) {
            const Spectrum wh = forward(w);
            double pot = 0.0, quart = 0.0;
            for (std::size_t k = 0; k < w.values.size(); ++k) {
                const double v2 = w.values[k] * w.values[k];
                pot += W_.value[k] * v2;
                quart += v2 * v2;
            }
            const double lin = spectral_quadratic(wh, &shifted) + pot * h2;
            const double S = lin / (quart * h2);
            if (!(S > 1e-8 && S < 1e8)) throw SolverError(SolverFailure::Collapse, "saddle iterate collapsed");
            Spectrum lw = wh;
            for (std::size_t k = 0; k < lw.coeffs.size(); ++k) lw.coeffs[k] *= shifted[k];
            ScalarField r = inverse(lw);
            for (std::size_t k = 0; k < r.values.size(); ++k) {
                const double v = w.values[k];
                r.values[k] += (W_.value[k] - v * v) * v;
            }
            res = std::sqrt(mass(r) / mass(w)) / beta;
            if (res <= tol) return res;
            ScalarField rhs(g_);
            const double gain = std::pow(S, 1.5);
            for (std::size_t k = 0; k < rhs.values.size(); ++k) {
                const double v = w.values[k];
                rhs.values[k] = gain * v * v * v - W_.value[k] * v;
            }
            w = apply_multiplier(rhs, resolvent);
        }
        return res;
    }

    // Physical energy, kinetic energy and virial of w rescaled to the target mass.
    EnergyBreakdown normalized_breakdown(const ScalarField& w) const {
        const double h2 = g_.cell_area();
        const double c2 = target_ / mass(w);
        const double K = c2 * frac_seminorm_sq(w, sym_);
        double pot = 0.0, xg = 0.0, quart = 0.0;
        for (std::size_t k = 0; k < w.values.size(); ++k) {
            const double v2 = c2 * w.values[k] * w.values[k];
            pot += W_.value[k] * v2;
            xg += W_.x_grad[k] * v2;
            quart += v2 * v2;
        }
        EnergyBreakdown fe;
        fe.kinetic = theta_ * K;
        fe.total = theta_ * (0.5 * (K + pot * h2) - 0.25 * quart * h2);
        fe.virial = theta_ * (s_ * K - 0.5 * xg * h2 - 0.5 * quart * h2);
        return fe;
    }

    double s_;
    Grid2D g_;
    FractionalSymbol sym_;
    SampledPotential W_;
    double target_;
    double theta_;
    MountainPassOptions opt_;
};

ScalarField subsample(const ScalarField& u, std::size_t n_coarse) {
    const std::size_t n = u.grid.n();
    const std::size_t stride = n / n_coarse;
    ScalarField out(make_grid(u.grid.extent(), n_coarse));
    for (std::size_t i = 0; i < n_coarse; ++i)
        for (std::size_t j = 0; j < n_coarse; ++j) out.at(i, j) = u.at(i * stride, j * stride);
    return out;
}

}  // namespace

SolveReport solve_mountain_pass(const ProblemParams& p, const GroundStateResult& Q,
                                const MountainPassOptions& opt) {
    p.validate();
    const double s = p.s;
    const Grid2D& g = Q.Q.grid;
    const MountainPassBracket br = mountain_pass_bracket(Q, p);
    const double b = br.rho0;

    SolveReport rep(g);
    rep.s = s;
    rep.N = p.N;
    rep.ns_star = Q.ns_star;
    rep.t_s = kinetic_radius(p, Q.ns_star);
    rep.frame_scale = b;
    const double ts = std::get<double>(rep.t_s);

    // Dilation-path point phi^{rho0} expressed in the frame: a multiple of Q.
    ScalarField w = Q.Q;
    const double a0 = std::pow(b, 1.0 - s) * std::sqrt(p.N / Q.ns_star);
    for (double& v : w.values) v *= a0;
    double log_beta = 2.0 * s * std::log(br.rho1 / b);

    TraceRecorder trace(rep, rep.t_s);
    int counter = 0;
    if (opt.coarse_n != 0 && opt.coarse_n < g.n()) {
        if (g.n() % opt.coarse_n != 0 || !is_power_of_two(opt.coarse_n))
            throw ConfigError("coarse level must divide the frame grid");
        // Coarse levels only supply a starting point; their accuracy is capped by the grid.
        MountainPassOptions coarse_opt = opt;
        coarse_opt.tol = std::max(opt.tol, 1e-8);
        coarse_opt.mass_tol = std::max(opt.mass_tol, 1e-8);
        ScalarField wc = subsample(w, opt.coarse_n);
        for (std::size_t nc = opt.coarse_n; nc < g.n(); nc *= 2) {
            if (nc != opt.coarse_n) wc = refine(wc, nc);
            const FrameSolver coarse(p, wc.grid, b, coarse_opt);
            coarse.solve(wc, log_beta, trace, counter);
        }
        w = refine(wc, g.n());
    }
    const FrameSolver fine(p, g, b, opt);
    const bool converged = fine.solve(w, log_beta, trace, counter);
    {
        const double m = mass(w);
        for (double& v : w.values) v *= std::sqrt(fine.target() / m);
    }

    // Physical field v(x) = b^s w(b x) on the box of extent L / b.
    const Grid2D phys = make_grid(g.extent() / b, g.n());
    ScalarField v(phys, w.values);
    const double amp = std::pow(b, s);
    for (double& x : v.values) x *= amp;
    orient_positive(v);
    const Discretization d = discretize(p, phys);
    rep.breakdown = energy(v, d);
    rep.el_residual = el_residual_norm(v, d, rep.breakdown.multiplier);
    rep.el_residual_scaled = rep.el_residual / std::max(1.0, std::abs(rep.breakdown.multiplier));
    rep.inside_ball = rep.breakdown.kinetic < ts;
    rep.solution = std::move(v);
    const auto& e = rep.breakdown;
    if (!converged || rep.el_residual_scaled > opt.tol) {
        rep.classification = Classification::Failed;
        rep.message = "no convergence: scaled residual " + std::to_string(rep.el_residual_scaled);
    } else if (e.kinetic < 0.5 * ts) {
        rep.classification = Classification::Failed;
        rep.message = "fell_to_min: converged deep inside the kinetic ball";
    } else if (std::abs(e.virial) > opt.pohozaev_tol * e.kinetic) {
        rep.classification = Classification::Failed;
        rep.message = "Pohozaev check failed: |P|/K = " + std::to_string(std::abs(e.virial) / e.kinetic);
    } else {
        rep.classification = Classification::Saddle;
        rep.message = "converged";
    }
    return rep;
}

}  // namespace fgpe
