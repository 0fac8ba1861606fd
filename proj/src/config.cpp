#include "sadj/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sadj {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::runtime_error("config: trailing characters in value for " + key + ": '" + v + "'");
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    double x = parse_double(key, v);
    long n = static_cast<long>(x);
    if (static_cast<double>(n) != x)
        throw std::runtime_error("config: value for " + key + " must be an integer");
    return n;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::runtime_error("config: empty entry in list for " + key);
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw std::runtime_error("config: empty list for " + key);
    return out;
}

void check_decreasing(const std::string& key, const std::vector<double>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!(v[k] > 0.0))
            throw std::runtime_error("config: " + key + " entries must be positive");
        if (k > 0 && !(v[k] < v[k - 1]))
            throw std::runtime_error("config: " + key + " must be strictly decreasing");
    }
}

}  // namespace

experiment_config parse_config_text(const std::string& text) {
    experiment_config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section header at line " +
                                         std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " +
                                     std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::string full = section.empty() ? key : section + "." + key;

        if (full == "model.name") cfg.model = value;
        else if (full == "model.gamma") cfg.gamma = parse_double(full, value);
        else if (full == "model.alpha0") cfg.alpha0 = parse_double(full, value);
        else if (full == "model.alpha1") cfg.alpha1 = parse_double(full, value);
        else if (full == "model.area_quad") cfg.area_quad = parse_double(full, value);
        else if (full == "model.area_center") cfg.area_center = parse_double(full, value);
        else if (full == "model.area_base") cfg.area_base = parse_double(full, value);
        else if (full == "model.left_value") cfg.left_value = parse_double(full, value);
        else if (full == "model.right_value") cfg.right_value = parse_double(full, value);
        else if (full == "model.inflow_entropy") cfg.inflow_entropy = parse_double(full, value);
        else if (full == "model.inflow_enthalpy") cfg.inflow_enthalpy = parse_double(full, value);
        else if (full == "model.outflow_pressure") cfg.outflow_pressure = parse_double(full, value);
        else if (full == "sweep.eps_list") cfg.eps_list = parse_list(full, value);
        else if (full == "sweep.nu_list") cfg.nu_list = parse_list(full, value);
        else if (full == "sweep.coupling") cfg.coupling = parse_double(full, value);
        else if (full == "grid.kappa") cfg.kappa = parse_double(full, value);
        else if (full == "grid.max_nodes") cfg.max_nodes = static_cast<int>(parse_long(full, value));
        else if (full == "analysis.theta") cfg.theta = parse_double(full, value);
        else if (full == "analysis.bc_policy") cfg.bc_policy = value;
        else if (full == "output.directory") cfg.output_dir = value;
        else if (full == "run.seed") cfg.seed = static_cast<unsigned long>(parse_long(full, value));
        else if (full == "run.workers") cfg.workers = static_cast<int>(parse_long(full, value));
        else throw std::runtime_error("config: unknown key '" + full + "' at line " +
                                      std::to_string(lineno));
    }
    finalize_config(cfg);
    return cfg;
}

experiment_config parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void finalize_config(experiment_config& cfg) {
    if (cfg.model != "scalar" && cfg.model != "euler-nozzle")
        throw std::runtime_error("config: model.name must be 'scalar' or 'euler-nozzle'");
    if (cfg.eps_list.empty()) {
        // smallest default viscosity keeps the residual rounding floor
        // (~kappa^2/eps * 1e-16) an order below the Newton tolerance
        double e0 = cfg.model == "scalar" ? 0.05 : 0.0125;
        int count = cfg.model == "scalar" ? 7 : 5;
        for (int k = 0; k < count; ++k) cfg.eps_list.push_back(e0 / (1 << k));
    }
    if (cfg.nu_list.empty())
        for (int k = 0; k < 6; ++k) cfg.nu_list.push_back(1e-2 / (1 << k));
    if (cfg.bc_policy.empty())
        cfg.bc_policy = cfg.model == "scalar" ? "dirichlet-zero" : "linearized-characteristic";
    if (cfg.bc_policy != "dirichlet-zero" && cfg.bc_policy != "linearized-characteristic")
        throw std::runtime_error(
            "config: analysis.bc_policy must be 'dirichlet-zero' or 'linearized-characteristic'");
    check_decreasing("sweep.eps_list", cfg.eps_list);
    check_decreasing("sweep.nu_list", cfg.nu_list);
    if (!(cfg.coupling > 0.0)) throw std::runtime_error("config: sweep.coupling must be positive");
    if (!(cfg.kappa > 0.0)) throw std::runtime_error("config: grid.kappa must be positive");
    if (cfg.kappa < 5.0)
        cfg.warnings.push_back("layer under-resolved: grid.kappa = " + std::to_string(cfg.kappa) +
                               " is below 5 cells per viscosity length");
    if (cfg.max_nodes < 16) throw std::runtime_error("config: grid.max_nodes too small");
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
        throw std::runtime_error("config: analysis.theta must lie in (0,1)");
    if (cfg.workers < 0) throw std::runtime_error("config: run.workers must be >= 0");
    if (cfg.model == "euler-nozzle" && cfg.outflow_pressure < 0.0)
        throw std::runtime_error("config: model.outflow_pressure must be positive (or 0 for the benchmark)");
}

}  // namespace sadj
