// gave: certify, solve and probe generalized absolute value equations.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "gave/error.hpp"
#include "gave/report.hpp"

namespace {

int fail(std::string_view kind, std::string_view detail) {
    std::cout << gave::error_json(kind, detail);
    return 1;
}

void set_threads(std::optional<int> flag) {
    int threads = 0;
    if (flag) {
        threads = *flag;
    } else if (const char* env = std::getenv("GAVE_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            throw gave::Error(gave::ErrorKind::InvalidArgument, std::string("GAVE_THREADS is not an integer: ") + env);
        }
    }
    if (threads < 0) throw gave::Error(gave::ErrorKind::InvalidArgument, "thread count must be positive");
    if (threads > 0) omp_set_num_threads(threads);
}

gave::RunConfig replay_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gave::Error(gave::ErrorKind::ParseError, path + ": cannot open report");
    gave::Json j;
    try {
        j = gave::Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw gave::Error(gave::ErrorKind::ParseError, path + ": " + e.what());
    }
    return gave::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniqueness certificates and solvers for Ax + B|x| = b"};
    app.set_version_flag("--version", std::string(gave::kVersion));
    app.require_subcommand(0, 1);

    gave::RunConfig cfg;
    std::optional<int> threads;
    std::string method = "enumerate";
    std::string ensemble = "GAUSSIAN";
    std::string replay;
    app.add_option("--threads", threads, "Worker threads (default: GAVE_THREADS or all cores)");
    app.add_option("--config", replay, "Replay the config echoed in an earlier report");

    const auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--A", cfg.a_path, "Matrix Market file for A");
        sub->add_option("--B", cfg.b_path, "Matrix Market file for B");
        sub->add_flag("--ave", cfg.ave, "Use B = I");
        sub->add_option("--b", cfg.rhs_path, "Right-hand side (n x 1)");
        sub->add_option("--tol", cfg.tol);
        sub->add_option("--n-cap-vertex", cfg.n_cap_vertex);
        sub->add_option("--n-cap-minor", cfg.n_cap_minor);
    };
    const auto add_probe = [&](CLI::App* sub) {
        sub->add_option("--ensemble", ensemble, "GAUSSIAN, DIAGONAL_DOMINANT, SCALED_CONTRACTION or DIAGONAL");
        sub->add_option("--n", cfg.n);
        sub->add_option("--target", cfg.target);
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--samples", cfg.samples);
        sub->add_option("--tol", cfg.tol);
        sub->add_option("--n-cap-vertex", cfg.n_cap_vertex);
        sub->add_option("--n-cap-minor", cfg.n_cap_minor);
    };

    CLI::App* check = app.add_subcommand("check", "Run every uniqueness certificate");
    add_instance(check);
    check->add_option("--samples", cfg.samples);
    check->add_option("--seed", cfg.seed);

    CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
    add_instance(solve);
    solve->add_option("--method", method, "enumerate, picard or newton");
    solve->add_option("--max-iter", cfg.max_iter);

    CLI::App* compare = app.add_subcommand("compare", "Search for an instance separating two conditions");
    add_probe(compare);
    compare->add_option("--hold", cfg.hold)->required();
    compare->add_option("--fail", cfg.fail)->required();
    compare->add_option("--budget", cfg.budget);

    CLI::App* fuzz = app.add_subcommand("fuzz", "Cross-check certificates against the enumeration oracle");
    add_probe(fuzz);
    fuzz->add_option("--instances", cfg.instances);
    fuzz->add_option("--rhs", cfg.rhs_per_instance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("InvalidArgument", e.what());
    }

    try {
        set_threads(threads);
        if (!replay.empty()) {
            cfg = replay_config(replay);
        } else {
            if (check->parsed()) cfg.command = gave::Command::check;
            else if (solve->parsed()) cfg.command = gave::Command::solve;
            else if (compare->parsed()) cfg.command = gave::Command::compare;
            else if (fuzz->parsed()) cfg.command = gave::Command::fuzz;
            else throw gave::Error(gave::ErrorKind::InvalidArgument, "a subcommand or --config is required");
            const auto m = gave::parse_method(method);
            if (!m) throw gave::Error(gave::ErrorKind::InvalidArgument, "unknown method '" + method + "'");
            cfg.method = *m;
            const auto e = gave::parse_ensemble(ensemble);
            if (!e) throw gave::Error(gave::ErrorKind::InvalidArgument, "unknown ensemble '" + ensemble + "'");
            cfg.ensemble = *e;
        }
        std::cout << gave::run_command(cfg);
    } catch (const gave::Error& e) {
        return fail(gave::to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        return fail("InternalError", e.what());
    }
    return 0;
}
