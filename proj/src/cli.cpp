#include "fgpe/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "fgpe/asymptotics.hpp"
#include "fgpe/constrained.hpp"
#include "fgpe/errors.hpp"
#include "fgpe/groundstate.hpp"
#include "fgpe/io.hpp"
#include "fgpe/resample.hpp"
#include "fgpe/spectral.hpp"

namespace fgpe {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands{"groundstate", "minimize", "saddle", "sweep", "verify"};

std::string order_tag(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%.4g", s);
    return buf;
}

std::string num(double x) {
    if (!std::isfinite(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Potential load_potential(const RunConfig& c) {
    if (c.potential == "harmonic") return Potential::harmonic();
    return Potential::from_table(read_potential_csv(c.potential));
}

GroundStateOptions gs_options(const RunConfig& c, const Grid2D& g) {
    GroundStateOptions o;
    if (c.tol) o.tol = *c.tol;
    if (g.n() >= 1024) o.coarse_n = g.n() / 2;
    return o;
}

int exit_for(SolverFailure kind) {
    switch (kind) {
        case SolverFailure::BoxTooSmall:
        case SolverFailure::Aliasing:
        case SolverFailure::UnderResolved: return kExitResolution;
        default: return kExitNonConvergence;
    }
}

struct MassResolution {
    double N = 0.0;
    double n1_star = std::numeric_limits<double>::quiet_NaN();
};

MassResolution resolve_mass(const RunConfig& c, const Grid2D& g, std::ostream& log) {
    const MassSpec m = parse_mass(c.N);
    MassResolution r;
    if (!m.relative) {
        r.N = m.value;
        return r;
    }
    r.n1_star = solve_ground_state(1.0, g, gs_options(c, g)).ns_star;
    r.N = m.value * r.n1_star;
    log << "N1* = " << num(r.n1_star) << ", N = " << num(r.N) << '\n';
    return r;
}

int run_groundstate(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
    const Grid2D g = make_grid(*c.L, *c.n);
    const auto entries = n_star_curve(c.s_list, g, gs_options(c, g));
    write_n_star_csv((out / "n_star.csv").string(), entries);
    int code = kExitOk;
    for (const NStarEntry& e : entries) {
        if (!e.result) {
            log << order_tag(e.s) << ": " << e.status << '\n';
            code = e.status == "box_too_small" ? kExitResolution : kExitNonConvergence;
            continue;
        }
        const GroundStateResult& r = *e.result;
        const double a = r.kinetic, b = r.quartic / (2.0 * r.s), d = r.ns_star / (2.0 * r.s - 1.0);
        const double dev = std::max({std::abs(a / b - 1.0), std::abs(a / d - 1.0), std::abs(b / d - 1.0)});
        const bool ok = dev <= 2e-4;
        json j = to_json(r);
        j["identities"] = {{"kinetic", a}, {"quartic_over_2s", b}, {"ns_over_2s_minus_1", d},
                           {"max_relative_deviation", dev}, {"pass", ok}};
        j["gn_quotient"] = gn_quotient(r.Q, r.s);
        j["gn_constant"] = gn_constant(r.s, r.ns_star);
        write_json((out / ("groundstate_" + order_tag(r.s) + ".json")).string(), j);
        write_field((out / ("Q_" + order_tag(r.s))).string(), r.Q, FieldMeta{r.s, r.ns_star, "ground_state"});
        log << order_tag(r.s) << ": Ns* = " << num(r.ns_star) << ", identities " << (ok ? "pass" : "FAIL")
            << " (max deviation " << dev << ")\n";
        if (!ok && code == kExitOk) code = kExitCheckFailed;
    }
    return code;
}

int run_minimize(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
    const Grid2D g = make_grid(*c.L, *c.n);
    const MassResolution m = resolve_mass(c, g, log);
    ProblemParams p{*c.s, m.N, load_potential(c)};
    p.validate();
    const GroundStateResult Q = solve_ground_state(p.s, g, gs_options(c, g));
    LocalMinOptions opt;
    if (c.tol) opt.tol = *c.tol;
    if (c.dt) opt.dt = *c.dt;
    const ScalarField init = c.seed ? seeded_initial_field(g, p.N, *c.seed) : default_local_min_init(p, g);
    const SolveReport rep = solve_local_min(p, Q.ns_star, g, opt, &init);

    json j = to_json(rep);
    j["N1_star"] = std::isfinite(m.n1_star) ? json(m.n1_star) : json(nullptr);
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["potential"] = p.potential.describe();
    if (p.s < 1.0) {
        const NonexistenceGap ng = nonexistence_gap(p, Q.ns_star);
        j["nonexistence_gap"] = {{"lhs", ng.lhs}, {"rhs", ng.rhs}, {"certified", ng.certified()}};
        const auto gap = boundary_gap(p, Q.ns_star);
        if (const auto* bg = std::get_if<BoundaryGap>(&gap)) {
            j["boundary_gap"] = bg->gap;
            std::ofstream f(out / "boundary_gap.csv");
            f << "t,f\n";
            for (const auto& [t, v] : bg->curve) f << num(t) << ',' << num(v) << '\n';
        }
    }
    write_json((out / "report.json").string(), j);
    write_field((out / "u").string(), rep.solution, FieldMeta{p.s, p.N, "local_min"});
    log << "classification: " << to_string(rep.classification) << " (" << rep.message << ")\n";
    switch (rep.classification) {
        case Classification::LocalMin: return kExitOk;
        case Classification::Escaped: return kExitEscaped;
        default: return kExitNonConvergence;
    }
}

void write_dilation_path(const std::filesystem::path& path, const ProblemParams& p, const GroundStateResult& Qc,
                         double t_max) {
    // Sampled columns come from a 64/512 ground state and stop at t = 4, beyond which that grid
    // cannot carry the dilated field.
    const int count = 60;
    const double lo = std::log(0.25), hi = std::log(std::max(t_max, 1.0));
    std::ofstream f(path);
    f << "t,energy,energy_closed,kinetic,kinetic_closed\n";
    for (int k = 0; k < count; ++k) {
        const double t = std::exp(lo + (hi - lo) * k / (count - 1));
        DilationSample smp = dilation_path_closed(Qc, p, t);
        if (t <= 4.0) {
            try {
                smp = dilation_path_profile(Qc, p, {t}).front();
            } catch (const SolverError&) {
            }
        }
        f << num(t) << ',' << num(smp.energy) << ',' << num(smp.energy_closed) << ',' << num(smp.kinetic) << ','
          << num(smp.kinetic_closed) << '\n';
    }
}

int run_saddle(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
    const Grid2D g = make_grid(*c.L, *c.n);
    const MassResolution m = resolve_mass(c, make_grid(64.0, 512), log);
    ProblemParams p{*c.s, m.N, load_potential(c)};
    p.validate();
    const GroundStateResult Q = solve_ground_state(p.s, g, gs_options(c, g));
    const MountainPassBracket br = mountain_pass_bracket(Q, p);
    MountainPassOptions opt;
    if (c.tol) opt.tol = *c.tol;
    if (g.n() >= 1024) opt.coarse_n = g.n() / 2;
    const SolveReport rep = solve_mountain_pass(p, Q, opt);

    const double eps = std::pow(rep.breakdown.kinetic, -1.0 / (2.0 * p.s));
    const double h = rep.solution.grid.spacing();
    json j = to_json(rep);
    j["N1_star"] = std::isfinite(m.n1_star) ? json(m.n1_star) : json(nullptr);
    j["potential"] = p.potential.describe();
    j["bracket"] = {{"lower", br.lower}, {"upper", br.upper}, {"rho0", br.rho0}, {"rho1", br.rho1}};
    j["eps"] = eps;
    j["eps_over_h"] = eps / h;
    write_json((out / "report.json").string(), j);
    write_field((out / "v").string(), rep.solution, FieldMeta{p.s, p.N, "saddle"});
    const GroundStateResult Qc = solve_ground_state(p.s, make_grid(64.0, 512));
    write_dilation_path(out / "dilation_path.csv", p, Qc, 2.0 * br.rho1);
    log << "classification: " << to_string(rep.classification) << " (" << rep.message << ")\n";
    if (rep.classification != Classification::Saddle) return kExitNonConvergence;
    if (eps < 4.0 * h) {
        log << "under-resolved: eps / h = " << eps / h << '\n';
        return kExitResolution;
    }
    return kExitOk;
}

int run_sweep(const RunConfig& c, const std::filesystem::path& out, std::ostream& log) {
    SweepOptions opt;
    opt.frame_grid = make_grid(*c.L, *c.n);
    opt.frame_coarse_n = opt.frame_grid.n() >= 1024 ? opt.frame_grid.n() / 2 : 0;
    if (c.tol) {
        opt.groundstate.tol = *c.tol;
        opt.local_min.tol = *c.tol;
        opt.mountain_pass.tol = *c.tol;
    }
    if (c.dt) opt.local_min.dt = *c.dt;
    const MassResolution m = resolve_mass(c, opt.min_grid, log);
    ProblemParams p{1.0, m.N, load_potential(c)};
    const SweepResult res = sweep(p, c.s_list, opt);
    write_sweep_csv((out / "sweep.csv").string(), res);
    write_sweep_summary((out / "sweep_summary.json").string(), res);
    int code = kExitOk;
    for (const SweepRecord& r : res.records) {
        log << order_tag(r.s) << ": " << r.status << (r.message.empty() ? "" : " (" + r.message + ")") << '\n';
        if (r.values) write_profile_csv((out / ("profile_" + order_tag(r.s) + ".csv")).string(), *r.values);
        if (r.status == "under-resolved" && code == kExitOk) code = kExitResolution;
        if (r.status != "ok" && r.status != "under-resolved") code = kExitNonConvergence;
    }
    return code;
}

int run_verify(const RunConfig& c, std::ostream& log) {
    const Grid2D g = make_grid(*c.L, *c.n);
    bool all = true;
    auto check = [&](const std::string& name, double value, double expected, double tol) {
        const double dev = std::abs(value - expected) / std::max(1.0, std::abs(expected));
        const bool ok = dev <= tol;
        all = all && ok;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s %s: %.12g vs %.12g (deviation %.2e, tolerance %.1e)\n", ok ? "PASS" : "FAIL",
                      name.c_str(), value, expected, dev, tol);
        log << buf;
    };
    const double pi = std::numbers::pi;
    const ScalarField gauss = sample(g, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
    const EnergyBreakdown e = energy(gauss, ProblemParams{1.0, 1.0, Potential::harmonic()});
    check("gaussian mass", e.mass, pi, 1e-10);
    check("gaussian kinetic", e.kinetic, pi, 1e-10);
    check("gaussian potential", e.potential, pi, 1e-10);
    check("gaussian quartic", e.quartic, pi / 2.0, 1e-10);
    check("gaussian virial", e.virial, -pi / 4.0, 1e-10);
    check("plancherel", spectral_quadratic(forward(gauss), nullptr), e.mass, 1e-12);
    // |xi|^{2s} has a cusp at the origin, so the Fourier-side sum converges like (2 pi / L)^{2 + 2s}.
    for (double s : {0.6, 0.75, 0.9}) {
        char name[48];
        std::snprintf(name, sizeof name, "gaussian seminorm s=%.2f", s);
        check(name, frac_seminorm_sq(gauss, FractionalSymbol(g, s)), pi * std::tgamma(s + 1.0),
              std::pow(2.0 * pi / g.extent(), 2.0 + 2.0 * s));
    }
    for (double x : {0.3, 0.5, 1.0, 1.5, 2.0}) {
        char name[32];
        std::snprintf(name, sizeof name, "gamma(%.1f)", x);
        check(name, gamma_fn(x), std::tgamma(x), 1e-13);
    }
    for (double s : c.s_list) {
        const GroundStateResult r = solve_ground_state(s, g, gs_options(c, g));
        const std::string tag = order_tag(s);
        check(tag + " kinetic = quartic/(2s)", r.kinetic, r.quartic / (2.0 * s), 2e-4);
        check(tag + " kinetic = Ns*/(2s-1)", r.kinetic, r.ns_star / (2.0 * s - 1.0), 2e-4);
        check(tag + " GN quotient = GN constant", gn_quotient(r.Q, s), gn_constant(s, r.ns_star), 1e-5);
    }
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

MassSpec parse_mass(const std::string& text) {
    MassSpec m;
    std::string body = text;
    if (!body.empty() && (body.back() == 'x' || body.back() == 'X')) {
        m.relative = true;
        body.pop_back();
    }
    std::size_t used = 0;
    try {
        m.value = std::stod(body, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse mass '" + text + "'");
    }
    if (used != body.size()) throw ConfigError("cannot parse mass '" + text + "'");
    if (!(m.value > 0.0) || !std::isfinite(m.value)) throw ConfigError("mass must be positive, got '" + text + "'");
    return m;
}

RunConfig RunConfig::resolve() const {
    RunConfig r = *this;
    if (!kCommands.count(r.command)) throw ConfigError("unknown command '" + r.command + "'");
    const bool frame = r.command == "saddle" || r.command == "sweep";
    if (!r.L) r.L = frame ? 128.0 : 64.0;
    if (!r.n) r.n = frame ? 2048 : 512;
    make_grid(*r.L, *r.n);
    if (r.s && !r.s_list.empty()) throw ConfigError("give either --s or --s-list, not both");
    if (r.command == "groundstate" || r.command == "verify") {
        if (r.s) r.s_list = {*r.s};
        if (r.s_list.empty()) r.s_list = {1.0};
        r.s.reset();
    } else if (r.command == "sweep") {
        if (r.s) throw ConfigError("sweep takes --s-list");
        if (r.s_list.empty()) r.s_list = {0.90, 0.93, 0.95, 0.97, 0.98};
        for (std::size_t k = 0; k < r.s_list.size(); ++k) {
            if (!(r.s_list[k] > 0.5 && r.s_list[k] < 1.0)) throw ConfigError("sweep orders must lie in (1/2, 1)");
            if (k > 0 && !(r.s_list[k] > r.s_list[k - 1])) throw ConfigError("sweep orders must be ascending");
        }
    } else {
        if (!r.s) throw ConfigError(r.command + " needs --s");
        if (!r.s_list.empty()) throw ConfigError(r.command + " takes a single --s");
    }
    for (double s : r.s_list)
        if (!(s > 0.5 && s <= 1.0)) throw ConfigError("order s must lie in (1/2, 1], got " + num(s));
    if (r.s && !(*r.s > 0.5 && *r.s <= 1.0)) throw ConfigError("order s must lie in (1/2, 1], got " + num(*r.s));
    if (r.command == "saddle" && *r.s >= 1.0) throw ConfigError("saddle needs s < 1");
    parse_mass(r.N);
    if (r.tol && !(*r.tol > 0.0)) throw ConfigError("tolerance must be positive");
    if (r.dt && !(*r.dt > 0.0)) throw ConfigError("time step must be positive");
    if (r.out.empty()) throw ConfigError("output directory must not be empty");
    if (r.potential != "harmonic" && !std::filesystem::exists(r.potential))
        throw ConfigError("potential must be 'harmonic' or an existing CSV file");
    return r;
}

RunConfig config_from_json(const json& j) {
    static const std::set<std::string> known{"command", "L", "n", "s", "s_list", "N", "tol", "dt", "out", "seed", "potential"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    RunConfig c;
    try {
        if (j.contains("command")) c.command = j.at("command").get<std::string>();
        if (j.contains("L")) c.L = j.at("L").get<double>();
        if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
        if (j.contains("s")) c.s = j.at("s").get<double>();
        if (j.contains("s_list")) c.s_list = j.at("s_list").get<std::vector<double>>();
        if (j.contains("N")) c.N = j.at("N").is_string() ? j.at("N").get<std::string>() : num(j.at("N").get<double>());
        if (j.contains("tol")) c.tol = j.at("tol").get<double>();
        if (j.contains("dt")) c.dt = j.at("dt").get<double>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("potential")) c.potential = j.at("potential").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

json to_json(const RunConfig& c) {
    json j{{"command", c.command}, {"N", c.N}, {"out", c.out}, {"potential", c.potential}, {"s_list", c.s_list}};
    if (c.L) j["L"] = *c.L;
    if (c.n) j["n"] = *c.n;
    if (c.s) j["s"] = *c.s;
    if (c.tol) j["tol"] = *c.tol;
    if (c.dt) j["dt"] = *c.dt;
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

int run(const RunConfig& config, std::ostream& log) {
    try {
        const RunConfig c = config.resolve();
        if (c.command == "verify") return run_verify(c, log);
        const std::filesystem::path out(c.out);
        std::filesystem::create_directories(out);
        write_json((out / "config.json").string(), to_json(c));
        if (c.command == "groundstate") return run_groundstate(c, out, log);
        if (c.command == "minimize") return run_minimize(c, out, log);
        if (c.command == "saddle") return run_saddle(c, out, log);
        return run_sweep(c, out, log);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        log << "solver error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_for(e.kind());
    } catch (const NumericalError& e) {
        log << "numerical error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::filesystem::filesystem_error& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace fgpe
