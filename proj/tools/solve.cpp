// Command-line front-end: loads a problem file, checks the objective's
// structural assumptions, runs the selected solver and prints the
// report. Exit codes: 0 success, 1 infeasible instance, 2 assumption
// or consistency failure, 3 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <snk/snk.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Solver for the symmetric nonlinear continuous knapsack: "
                 "maximize sum f(x_i) with sum x_i = M, x in [0,1]^n"};

    std::string file;
    std::string algorithm;
    std::string format = "json";
    std::string plot_path;
    double tol = 0.0;
    double step = 0.0;
    bool check = false;
    std::int64_t seed = 0;

    app.add_option("--file", file, "problem file (required)")->required();
    app.add_option("--algorithm", algorithm,
                   "constant | enumerate | oracle (default from file, else constant)")
        ->check(CLI::IsMember({"constant", "enumerate", "oracle"}));
    auto* tol_opt =
        app.add_option("--tol", tol, "bisection tolerance (default 1e-10)");
    auto* step_opt =
        app.add_option("--step", step, "grid spacing for the oracle algorithm");
    app.add_option("--format", format, "report format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--check", check,
                 "also run the O(n^2) enumeration and require agreement");
    app.add_option("--plot-data", plot_path,
                   "write tab-separated curve and gradient-field data to PATH");
    app.add_option("--seed", seed,
                   "accepted for harness compatibility; the solvers are "
                   "deterministic and ignore it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3; // help/version exit 0, any parse error is usage
    }

    try {
        snk::ProblemConfig cfg = snk::load_problem_file(file);
        if (!algorithm.empty()) cfg.algorithm = *snk::algorithm_from_name(algorithm);
        if (tol_opt->count() > 0) cfg.tol = tol;
        if (step_opt->count() > 0) cfg.step = step;
        if (!(cfg.tol > 0.0)) throw snk::parameter_error("tol must be positive");

        const snk::ProblemInstance inst = snk::build_instance(cfg);

        const snk::ValidationReport validation =
            snk::validate_assumptions(inst.objective());
        if (!validation.all_pass()) {
            const snk::AssumptionCheck* bad = validation.first_failure();
            std::cerr << "assumption validation failed: " << bad->name
                      << " (worst residual " << bad->worst_residual << " at x = "
                      << bad->worst_x << ")\n";
            return 2;
        }

        const snk::Tangency tang = snk::preprocess(inst.objective(), cfg.tol);

        snk::SolveReport rep;
        switch (cfg.algorithm) {
        case snk::Algorithm::constant:
            rep = snk::solve_integer(inst, tang);
            break;
        case snk::Algorithm::enumerate_all:
            rep = snk::enumerate_partitions(inst, tang);
            break;
        case snk::Algorithm::oracle:
            rep = snk::solve_with_oracle(inst, tang, cfg.step);
            break;
        }

        if (check && cfg.algorithm != snk::Algorithm::enumerate_all) {
            const snk::SolveReport ref = snk::enumerate_partitions(inst, tang);
            const double gap = rep.chosen.objective - ref.chosen.objective;
            // the oracle may legitimately sit below the integer optimum
            // by its grid error; constant mode must agree tightly
            const bool ok = (cfg.algorithm == snk::Algorithm::oracle)
                                ? rep.chosen.objective <=
                                      ref.chosen.objective + 1e-9
                                : std::abs(gap) <= 1e-9;
            if (!ok) {
                std::cerr << "cross-check failed: " << snk::algorithm_name(cfg.algorithm)
                          << " objective " << rep.chosen.objective
                          << " vs enumeration " << ref.chosen.objective << "\n";
                return 2;
            }
        }

        if (!plot_path.empty()) {
            std::ofstream out(plot_path);
            if (!out)
                throw snk::parameter_error("cannot write plot data to " + plot_path);
            out << snk::emit_plot_data(inst, tang, 101);
        }

        if (format == "json")
            std::cout << snk::report_to_json(rep).dump(2) << "\n";
        else
            std::cout << snk::report_to_csv(rep);
        return 0;
    } catch (const snk::infeasible_error& e) {
        std::cerr << "infeasible instance: " << e.what() << "\n";
        return 1;
    } catch (const snk::assumption_error& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return 2;
    } catch (const snk::internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 2;
    } catch (const snk::oracle_error& e) {
        std::cerr << "objective oracle failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
