#include <iostream>
#include <map>
#include <set>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace diejen::cli;

namespace {

struct Bound {
    std::map<std::string, CLI::Option*> options;  // config key -> option
    std::string t_text;
    std::string config_path;
};

void add_common(CLI::App* sub, RunConfig& cfg, Bound& b) {
    b.options["n"] = sub->add_option("--n", cfg.n, "number of particles");
    b.options["mu"] = sub->add_option("--mu", cfg.mu, "coupling mu");
    b.options["nu"] = sub->add_option("--nu", cfg.nu, "coupling nu");
    b.options["seed"] = sub->add_option("--seed", cfg.seed, "run seed");
    b.options["points"] = sub->add_option("--points", cfg.points, "number of sampled points or specs");
    b.options["out"] = sub->add_option("--out", cfg.out, "output file (default stdout)");
    b.options["format"] = sub->add_option("--format", cfg.format, "csv or json");
    b.options["tol_scale"] = sub->add_option("--tol-scale", cfg.tol_scale, "multiplier on every check tolerance");
    b.options["t"] = sub->add_option("--t", b.t_text, "time grid, start:step:stop or a,b,c");
    sub->add_option("--config", b.config_path, "JSON config file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diejen: numerical experiments on the hyperbolic van Diejen system"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::map<std::string, Bound> bound;

    const std::map<std::string, std::string> commands = {
        {"lax-check", "Lax matrix structure and commutation relation"},
        {"duality", "duality map, dual Lax matrix and the relations obeyed by z_hat"},
        {"flow", "projection and Runge-Kutta propagation with conservation checks"},
        {"scatter", "asymptotic data, wave maps, scattering map and residual decay"},
        {"brackets", "finite-difference Poisson brackets of the action-angle variables"},
        {"asymptotics", "eigenvalue asymptotics of M exp(tD) and M + tD"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        Bound& b = bound[name];
        add_common(sub, cfg, b);
        if (name == "flow") b.options["method"] = sub->add_option("--method", cfg.method, "projection, rk or both");
        if (name == "duality") b.options["dump_frame"] = sub->add_flag("--dump-frame", cfg.dump_frame, "emit the full dual frame");
        if (name == "brackets") b.options["step"] = sub->add_option("--step", cfg.step, "finite-difference step");
        if (name == "asymptotics") {
            b.options["kind"] = sub->add_option("--kind", cfg.kind, "exponential or linear");
            b.options["N"] = sub->add_option("--N", cfg.N, "matrix size");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    for (auto& [name, b] : bound) {
        if (!app.got_subcommand(name)) continue;
        cfg.command = name;
        try {
            std::set<std::string> given;
            for (const auto& [key, opt] : b.options)
                if (opt->count() > 0) given.insert(key);
            if (!b.config_path.empty()) load_config_file(cfg, b.config_path, given);
            if (!b.t_text.empty()) cfg.t_grid = parse_t_grid(b.t_text);
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_config;
        }
        return run_command(cfg);
    }
    return exit_config;
}
