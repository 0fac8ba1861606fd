#include "sadj/manifest.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "sadj/version.hpp"

namespace sadj {

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot hash missing file: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[8192];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        std::streamsize n = f.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!f) break;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

void write_manifest(const std::string& path, const run_manifest& m) {
    nlohmann::json j;
    j["tool_version"] = std::string("sadj ") + sadj_version;
    j["command"] = m.command;

    nlohmann::json cfg;
    cfg["model.name"] = m.config.model;
    cfg["model.gamma"] = m.config.gamma;
    cfg["model.alpha0"] = m.config.alpha0;
    cfg["model.alpha1"] = m.config.alpha1;
    cfg["model.area_quad"] = m.config.area_quad;
    cfg["model.area_center"] = m.config.area_center;
    cfg["model.area_base"] = m.config.area_base;
    cfg["model.left_value"] = m.config.left_value;
    cfg["model.right_value"] = m.config.right_value;
    cfg["model.inflow_entropy"] = m.config.inflow_entropy;
    cfg["model.inflow_enthalpy"] = m.config.inflow_enthalpy;
    cfg["model.outflow_pressure"] = m.config.outflow_pressure;
    cfg["sweep.eps_list"] = m.config.eps_list;
    cfg["sweep.nu_list"] = m.config.nu_list;
    cfg["sweep.coupling"] = m.config.coupling;
    cfg["grid.kappa"] = m.config.kappa;
    cfg["grid.max_nodes"] = m.config.max_nodes;
    cfg["analysis.theta"] = m.config.theta;
    cfg["analysis.bc_policy"] = m.config.bc_policy;
    cfg["output.directory"] = m.config.output_dir;
    cfg["run.seed"] = m.config.seed;
    cfg["run.workers"] = m.config.workers;
    j["config"] = cfg;

    j["workers_used"] = m.workers_used;
    j["workers_env_override"] = m.workers_env_override;

    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : m.stages) {
        nlohmann::json e;
        e["name"] = s.name;
        e["converged"] = s.converged;
        e["epsilon"] = s.epsilon;
        e["newton_iterations"] = s.newton_iterations;
        e["residual_norm"] = s.residual_norm;
        e["wall_ms"] = s.wall_ms;
        stages.push_back(e);
    }
    j["stages"] = stages;

    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : m.files) {
        nlohmann::json e;
        e["path"] = p;
        e["fnv1a64"] = hex64(fnv1a64_file(p));
        files.push_back(e);
    }
    j["files"] = files;
    j["warnings"] = m.warnings;

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error("write failure on " + path);
}

}  // namespace sadj
