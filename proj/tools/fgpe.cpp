#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fgpe/cli.hpp"
#include "fgpe/errors.hpp"
#include "fgpe/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Ground states, local minimizers and mountain-pass solutions of the 2D fractional GP equation"};
    app.require_subcommand(1);

    std::string config_path;
    double L = 0.0, s = 0.0, tol = 0.0, dt = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> s_list;
    std::string N, out, potential;

    std::vector<CLI::App*> subs;
    for (const char* name : {"groundstate", "minimize", "saddle", "sweep", "verify"}) subs.push_back(app.add_subcommand(name));
    subs[0]->description("Solve for Q_s, write N_s* and the virial identities");
    subs[1]->description("Local minimizer on the mass sphere inside the kinetic ball");
    subs[2]->description("Mountain-pass solution outside the kinetic ball");
    subs[3]->description("Sweep s toward 1 and write the trend CSV and summary");
    subs[4]->description("Run the invariant suite and print PASS/FAIL per check");

    for (CLI::App* sub : subs) {
        sub->add_option("--config", config_path, "JSON config; flags override its values")->check(CLI::ExistingFile);
        sub->add_option("--s", s, "Order s in (1/2, 1]");
        sub->add_option("--s-list", s_list, "Orders, ascending")->delimiter(',');
        sub->add_option("--N", N, "Mass, or a multiple of N1* such as 0.5x");
        sub->add_option("--L", L, "Box extent");
        sub->add_option("--n", n, "Points per axis (power of two)");
        sub->add_option("--tol", tol, "Solver tolerance");
        sub->add_option("--dt", dt, "Initial gradient-flow step");
        sub->add_option("--out", out, "Output directory");
        sub->add_option("--seed", seed, "Seed for the initial field");
        sub->add_option("--potential", potential, "harmonic, or a CSV of r, V, rV'");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fgpe::kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    fgpe::RunConfig c;
    try {
        if (!config_path.empty()) c = fgpe::config_from_json(fgpe::read_json(config_path));
    } catch (const fgpe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return fgpe::kExitConfig;
    }
    c.command = sub->get_name();
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--s")) {
        c.s = s;
        c.s_list.clear();
    }
    if (given("--s-list")) {
        c.s_list = s_list;
        c.s.reset();
    }
    if (given("--N")) c.N = N;
    if (given("--L")) c.L = L;
    if (given("--n")) c.n = n;
    if (given("--tol")) c.tol = tol;
    if (given("--dt")) c.dt = dt;
    if (given("--out")) c.out = out;
    if (given("--seed")) c.seed = seed;
    if (given("--potential")) c.potential = potential;
    return fgpe::run(c, std::cout);
}
