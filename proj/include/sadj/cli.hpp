/** \file cli.hpp
    \brief Command implementations behind the sadj executable.

    Exit codes: 0 success, 2 configuration error (raised by the caller), 3
    solver failure, 4 post-run consistency violation.
*/
#pragma once

#include "sadj/config.hpp"
#include "sadj/model.hpp"

namespace sadj {

model_spec build_model(const experiment_config& cfg);

int run_solve(const experiment_config& cfg, bool verbose);
int run_check_ibc(const experiment_config& cfg, bool verbose);
int run_error_representation(const experiment_config& cfg, bool verbose);
int run_all(const experiment_config& cfg, bool verbose);

}  // namespace sadj
