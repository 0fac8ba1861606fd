/** \file manifest.hpp
    \brief Run manifests: config echo, stage records, output-file hashes.
*/
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sadj/config.hpp"

namespace sadj {

std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

struct stage_record {
    std::string name;
    bool converged = true;
    double epsilon = 0.0;
    int newton_iterations = 0;
    double residual_norm = 0.0;
    double wall_ms = 0.0;
};

struct run_manifest {
    std::string command;
    experiment_config config;
    int workers_used = 1;
    bool workers_env_override = false;
    std::vector<stage_record> stages;
    std::vector<std::string> files;  // hashed at write time
    std::vector<std::string> warnings;
};

void write_manifest(const std::string& path, const run_manifest& m);

}  // namespace sadj
