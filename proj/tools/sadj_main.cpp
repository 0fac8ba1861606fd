/** \file sadj_main.cpp
    \brief Command-line front end: solve, check-ibc, error-representation, all.
*/
#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "sadj/cli.hpp"
#include "sadj/config.hpp"
#include "sadj/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"adjoint-based error estimation for steady balance laws with shocks"};
    app.set_version_flag("--version", std::string("sadj ") + sadj::sadj_version);
    app.require_subcommand(1);
    app.fallthrough();  // allow --config after the subcommand name

    std::string config_path, out_override;
    bool verbose = false;
    app.add_option("--config", config_path, "experiment configuration file")->required();
    app.add_option("--out", out_override, "override the configured output directory");
    app.add_flag("--verbose", verbose, "print per-stage progress");

    CLI::App* cmd_solve = app.add_subcommand("solve", "viscous primal/adjoint sweep");
    CLI::App* cmd_ibc = app.add_subcommand("check-ibc", "interior-condition residual sweep");
    CLI::App* cmd_rep =
        app.add_subcommand("error-representation", "perturbation-family error budgets");
    CLI::App* cmd_all = app.add_subcommand("all", "run every stage in order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help/--version exit cleanly, usage errors are config errors
    }

    sadj::experiment_config cfg;
    try {
        cfg = sadj::parse_config_file(config_path);
        if (!out_override.empty()) cfg.output_dir = out_override;
    } catch (const std::exception& e) {
        std::cerr << "sadj: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& warning : cfg.warnings)
        std::cerr << "warning: " << warning << "\n";

    if (cmd_solve->parsed()) return sadj::run_solve(cfg, verbose);
    if (cmd_ibc->parsed()) return sadj::run_check_ibc(cfg, verbose);
    if (cmd_rep->parsed()) return sadj::run_error_representation(cfg, verbose);
    if (cmd_all->parsed()) return sadj::run_all(cfg, verbose);
    return 2;
}
