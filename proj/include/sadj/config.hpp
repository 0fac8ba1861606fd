/** \file config.hpp
    \brief Experiment configuration: key = value files with [section] headers.
*/
#pragma once

#include <string>
#include <vector>

namespace sadj {

struct experiment_config {
    // model
    std::string model = "scalar";
    double gamma = 1.4;
    double alpha0 = 1.0;
    double alpha1 = 0.0;
    double area_quad = 0.8;
    double area_center = 0.5;
    double area_base = 1.0;
    double left_value = 1.2;
    double right_value = -1.4;
    double inflow_entropy = 0.0;
    double inflow_enthalpy = 3.5;
    double outflow_pressure = 0.0;  // 0 selects the benchmark value

    // sweeps
    std::vector<double> eps_list;  // defaulted per model when empty
    std::vector<double> nu_list;
    double coupling = 0.5;  // alpha_bar = coupling * nu

    // grid policy
    double kappa = 8.0;
    int max_nodes = 200000;

    // analysis
    double theta = 0.05;
    std::string bc_policy;  // defaulted per model when empty

    // output / run
    std::string output_dir = "out";
    unsigned long seed = 12345;
    int workers = 0;  // 0 = hardware concurrency

    std::vector<std::string> warnings;  // collected during validation
};

// Parses and validates; unknown keys and malformed values are errors. Soft
// violations (kappa < 5) land in warnings.
experiment_config parse_config_text(const std::string& text);
experiment_config parse_config_file(const std::string& path);

// Fills model-dependent defaults (sweep lists, bc policy) and runs validation.
void finalize_config(experiment_config& cfg);

}  // namespace sadj
