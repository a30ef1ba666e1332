#include "fgpe/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "fgpe/errors.hpp"
#include "fgpe/rearrangement.hpp"
#include "fgpe/resample.hpp"
#include "fgpe/spectral.hpp"
#include "json.hpp"

namespace fgpe {

namespace {

double second_moment(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = u.at(i, j);
            acc += u.grid.radius_sq(i, j) * v * v;
        }
    return acc * u.grid.cell_area();
}

template <class F>
bool strictly_monotone(const std::vector<double>& xs, F&& before) {
    if (xs.size() < 2) return false;
    for (std::size_t k = 1; k < xs.size(); ++k)
        if (!before(xs[k - 1], xs[k])) return false;
    return true;
}

bool decreasing(const std::vector<double>& xs) {
    return strictly_monotone(xs, [](double a, double b) { return b < a; });
}

bool increasing(const std::vector<double>& xs) {
    return strictly_monotone(xs, [](double a, double b) { return b > a; });
}

std::vector<const SweepRecord*> ok_records(const SweepResult& r) {
    std::vector<const SweepRecord*> out;
    for (const SweepRecord& rec : r.records)
        if (rec.values) out.push_back(&rec);
    return out;
}

template <class F>
std::vector<double> column(const std::vector<const SweepRecord*>& recs, F&& get) {
    std::vector<double> out;
    out.reserve(recs.size());
    for (const SweepRecord* r : recs) out.push_back(get(*r->values));
    return out;
}

std::string failure_status(const SolveReport& rep) {
    if (rep.classification == Classification::Escaped) return "escaped";
    return "failed";
}

}  // namespace

ScalarField rescaled_profile(const ScalarField& v, double s) {
    require_finite(v, "rescaled_profile");
    const double K = frac_seminorm_sq(v, FractionalSymbol(v.grid, s));
    if (!(K > 0.0)) throw ConfigError("rescaled_profile needs a nonzero field");
    const double eps = std::pow(K, -1.0 / (2.0 * s));
    ScalarField out(make_grid(v.grid.extent() / eps, v.grid.n()), v.values);
    for (double& x : out.values) x *= eps;
    return out;
}

ScalarField limit_profile(const GroundStateResult& Q1, double N, const Grid2D& target) {
    if (Q1.s != 1.0) throw ConfigError("limit profile needs the s = 1 ground state");
    return resample(Q1.Q, target, 1.0 / std::sqrt(N), 1.0 / std::sqrt(Q1.ns_star));
}

double rescale_error(const ScalarField& v, double s, const GroundStateResult& Q1, double N) {
    const ScalarField w = rescaled_profile(v, s);
    return l2_distance(w, limit_profile(Q1, N, w.grid));
}

ScalarField radial_average(const ScalarField& u) {
    const std::size_t n = u.grid.n();
    const auto c = static_cast<long long>(n / 2);
    std::map<long long, std::pair<double, std::size_t>> shells;
    auto key = [&](std::size_t i, std::size_t j) {
        const long long a = static_cast<long long>(i) - c;
        const long long b = static_cast<long long>(j) - c;
        return a * a + b * b;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto& sh = shells[key(i, j)];
            sh.first += u.at(i, j);
            ++sh.second;
        }
    ScalarField out(u.grid);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& sh = shells[key(i, j)];
            out.at(i, j) = sh.first / static_cast<double>(sh.second);
        }
    return out;
}

double min_profile_error(const ScalarField& u, const ScalarField& ref) {
    require_same_grid(u, ref);
    return l2_distance(radial_average(recenter(u)), radial_average(recenter(ref)));
}

SweepResult sweep(const ProblemParams& p_base, const std::vector<double>& s_list, const SweepOptions& opt) {
    if (s_list.empty()) throw ConfigError("sweep needs at least one order");
    for (std::size_t k = 0; k < s_list.size(); ++k) {
        if (!(s_list[k] > 0.5 && s_list[k] < 1.0)) throw ConfigError("sweep orders must lie in (1/2, 1)");
        if (k > 0 && !(s_list[k] > s_list[k - 1])) throw ConfigError("sweep orders must be sorted ascending");
    }
    ProblemParams p1 = p_base;
    p1.s = 1.0;
    p1.validate();

    SweepResult out;
    out.N = p_base.N;
    const GroundStateResult Q1 = solve_ground_state(1.0, opt.min_grid, opt.groundstate);
    out.reference_ns_star = Q1.ns_star;
    if (!(p_base.N < Q1.ns_star)) throw ConfigError("sweep needs N below the critical mass N1*");
    const SolveReport u1 = solve_local_min(p1, Q1.ns_star, opt.min_grid, opt.local_min);
    if (u1.classification != Classification::LocalMin)
        throw SolverError(SolverFailure::NonConvergence, "s = 1 reference minimizer: " + u1.message);
    out.reference_energy = u1.breakdown.total;

    GroundStateOptions gs_opt = opt.groundstate;
    gs_opt.coarse_n = opt.frame_coarse_n;
    MountainPassOptions mp_opt = opt.mountain_pass;
    mp_opt.coarse_n = opt.frame_coarse_n;

    std::optional<ScalarField> q_prev;
    std::optional<ScalarField> u_prev;
    for (double s : s_list) {
        SweepRecord rec;
        rec.s = s;
        ProblemParams p = p_base;
        p.s = s;
        try {
            const GroundStateResult Q = solve_ground_state(s, opt.frame_grid, gs_opt, q_prev ? &*q_prev : nullptr);
            q_prev = Q.Q;
            const SolveReport um = solve_local_min(p, Q.ns_star, opt.min_grid, opt.local_min, u_prev ? &*u_prev : nullptr);
            if (um.classification != Classification::LocalMin) {
                rec.status = failure_status(um);
                rec.message = "local minimizer: " + um.message;
                out.records.push_back(std::move(rec));
                continue;
            }
            u_prev = um.solution;
            const MountainPassBracket br = mountain_pass_bracket(Q, p);
            const SolveReport sv = solve_mountain_pass(p, Q, mp_opt);
            if (sv.classification != Classification::Saddle) {
                rec.status = failure_status(sv);
                rec.message = "saddle: " + sv.message;
                out.records.push_back(std::move(rec));
                continue;
            }
            SweepValues v;
            v.ns_star = Q.ns_star;
            v.t_s = std::get<double>(sv.t_s);
            v.e_min = um.breakdown.total;
            v.kin_min = um.breakdown.kinetic;
            v.pot_min = um.breakdown.potential;
            v.mu_min = um.breakdown.multiplier;
            v.kin_saddle = sv.breakdown.kinetic;
            v.quartic_saddle = sv.breakdown.quartic;
            v.moment_saddle = second_moment(sv.solution);
            v.mu_saddle = sv.breakdown.multiplier;
            v.energy_saddle = sv.breakdown.total;
            v.c_lo = br.lower;
            v.c_hi = br.upper;
            v.eps = std::pow(v.kin_saddle, -1.0 / (2.0 * s));
            v.saddle_spacing = sv.solution.grid.spacing();
            if (v.eps < opt.resolution_factor * v.saddle_spacing) {
                rec.status = "under-resolved";
                char buf[96];
                std::snprintf(buf, sizeof buf, "eps / h = %.3f", v.eps / v.saddle_spacing);
                rec.message = buf;
                out.records.push_back(std::move(rec));
                continue;
            }
            {
                const ScalarField w = rescaled_profile(sv.solution, s);
                const ScalarField lim = limit_profile(Q1, p.N, w.grid);
                v.rescale_err = l2_distance(w, lim);
                const std::size_t n = w.grid.n();
                for (std::size_t i = n / 2; i < n; ++i) {
                    v.profile_x.push_back(w.grid.coordinate(i));
                    v.profile_rescaled.push_back(w.at(i, n / 2));
                    v.profile_limit.push_back(lim.at(i, n / 2));
                }
            }
            v.min_err = min_profile_error(um.solution, u1.solution);
            rec.status = "ok";
            rec.values = v;
        } catch (const SolverError& e) {
            rec.status = to_string(e.kind());
            rec.message = e.what();
        } catch (const NumericalError& e) {
            rec.status = "failed";
            rec.message = e.what();
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

MultiplierReport multiplier_limit_check(const SweepResult& result, double delta) {
    const auto recs = ok_records(result);
    if (recs.size() < 3) throw ConfigError("multiplier check needs at least three successful records");
    MultiplierReport rep;
    rep.target = -1.0 / result.N;
    rep.lower_bound = -2.0 / result.reference_ns_star * (1.0 + delta);
    rep.all_negative = true;
    rep.above_lower_bound = true;
    std::vector<double> dist, ratio;
    for (const SweepRecord* r : recs) {
        const SweepValues& v = *r->values;
        MultiplierPoint pt{r->s, v.mu_saddle / v.kin_saddle, v.quartic_saddle / v.kin_saddle};
        rep.all_negative = rep.all_negative && pt.mu_eps < 0.0;
        rep.above_lower_bound = rep.above_lower_bound && pt.mu_eps >= rep.lower_bound;
        dist.push_back(std::abs(pt.mu_eps - rep.target));
        ratio.push_back(pt.quartic_ratio);
        rep.points.push_back(pt);
    }
    rep.approaching_target = decreasing(dist);
    rep.ratio_increasing = increasing(ratio);
    return rep;
}

SweepVerdicts sweep_verdicts(const SweepResult& result) {
    const auto recs = ok_records(result);
    SweepVerdicts v;
    v.ok_records = recs.size();
    if (recs.empty()) return v;
    const double N = result.N;
    v.min_err_decreasing = decreasing(column(recs, [](const SweepValues& x) { return x.min_err; }));
    v.kin_saddle_increasing = increasing(column(recs, [](const SweepValues& x) { return x.kin_saddle; }));
    v.rescale_err_decreasing = decreasing(column(recs, [](const SweepValues& x) { return x.rescale_err; }));
    v.moment_decreasing = decreasing(column(recs, [](const SweepValues& x) { return x.moment_saddle; }));
    const auto ratio = column(recs, [](const SweepValues& x) { return x.quartic_saddle / x.kin_saddle; });
    v.quartic_ratio_to_two = increasing(ratio) && ratio.back() >= 1.8;
    v.scaled_kinetic_in_band = true;
    for (const SweepRecord* r : recs) {
        const double s = r->s;
        const SweepValues& x = *r->values;
        const double scaled = std::exp(std::log(x.kin_saddle) - s / (1.0 - s) * std::log(x.ns_star / N));
        const double lo = N * (1.0 - s) / (2.0 * s - 1.0);
        if (!(scaled >= lo && scaled <= 2.0 * N)) v.scaled_kinetic_in_band = false;
    }
    const SweepValues& first = *recs.front()->values;
    v.min_bounds_uniform = true;
    for (const SweepRecord* r : recs) {
        if (r->values->kin_min > 2.0 * first.kin_min || r->values->pot_min > 2.0 * first.pot_min)
            v.min_bounds_uniform = false;
    }
    return v;
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "s,Ns_star,t_s,eN,kin_min,kin_saddle,c_lo,c_hi,eps,rescale_err,min_err,mu_min,mu_saddle,status\n";
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const SweepRecord& r : result.records) {
        f << num(r.s);
        if (r.values) {
            const SweepValues& v = *r.values;
            for (double x : {v.ns_star, v.t_s, v.e_min, v.kin_min, v.kin_saddle, v.c_lo, v.c_hi, v.eps,
                             v.rescale_err, v.min_err, v.mu_min, v.mu_saddle})
                f << ',' << num(x);
        } else {
            f << std::string(12, ',');
        }
        f << ',' << r.status << '\n';
    }
    if (!f) throw NumericalError("write failed for " + path);
}

void write_profile_csv(const std::string& path, const SweepValues& values) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "x,rescaled,limit\n";
    char buf[96];
    for (std::size_t k = 0; k < values.profile_x.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", values.profile_x[k], values.profile_rescaled[k],
                      values.profile_limit[k]);
        f << buf;
    }
}

void write_sweep_summary(const std::string& path, const SweepResult& result) {
    using nlohmann::json;
    json j;
    j["N"] = result.N;
    j["reference_ns_star"] = result.reference_ns_star;
    j["reference_energy"] = result.reference_energy;
    json entries = json::array();
    for (const SweepRecord& r : result.records) {
        json e{{"s", r.s}, {"status", r.status}, {"message", r.message}};
        if (r.values) {
            const SweepValues& v = *r.values;
            e["quartic_saddle"] = v.quartic_saddle;
            e["moment_saddle"] = v.moment_saddle;
            e["energy_saddle"] = v.energy_saddle;
            e["pot_min"] = v.pot_min;
            e["saddle_spacing"] = v.saddle_spacing;
            // Bracket width times (Ns*/N)^{1/(1-s)}; only boundedness is expected.
            e["bracket_gap_scaled"] = (v.c_hi - v.c_lo) * std::pow(v.ns_star / result.N, 1.0 / (1.0 - r.s));
        }
        entries.push_back(e);
    }
    j["entries"] = entries;
    const SweepVerdicts v = sweep_verdicts(result);
    j["verdicts"] = {{"ok_records", v.ok_records},
                     {"min_err_decreasing", v.min_err_decreasing},
                     {"kin_saddle_increasing", v.kin_saddle_increasing},
                     {"scaled_kinetic_in_band", v.scaled_kinetic_in_band},
                     {"rescale_err_decreasing", v.rescale_err_decreasing},
                     {"moment_decreasing", v.moment_decreasing},
                     {"quartic_ratio_to_two", v.quartic_ratio_to_two},
                     {"min_bounds_uniform", v.min_bounds_uniform}};
    if (v.ok_records >= 3) {
        const MultiplierReport m = multiplier_limit_check(result);
        json pts = json::array();
        for (const auto& pt : m.points)
            pts.push_back({{"s", pt.s}, {"mu_eps", pt.mu_eps}, {"quartic_ratio", pt.quartic_ratio}});
        j["multiplier"] = {{"points", pts},
                           {"target", m.target},
                           {"lower_bound", m.lower_bound},
                           {"all_negative", m.all_negative},
                           {"above_lower_bound", m.above_lower_bound},
                           {"approaching_target", m.approaching_target},
                           {"ratio_increasing", m.ratio_increasing}};
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << j.dump(2) << '\n';
}

}  // namespace fgpe
