#include "sadj/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sadj/adjoint.hpp"
#include "sadj/checkpoint.hpp"
#include "sadj/csvio.hpp"
#include "sadj/error_rep.hpp"
#include "sadj/manifest.hpp"
#include "sadj/piecewise.hpp"
#include "sadj/transform.hpp"
#include "sadj/viscous.hpp"

namespace sadj {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int resolve_workers(const experiment_config& cfg, bool& env_override) {
    env_override = false;
    int n = cfg.workers;
    if (const char* env = std::getenv("SADJ_WORKERS")) {
        n = std::atoi(env);
        env_override = true;
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(n, 1);
}

// index-parallel loop with deterministic slot assignment
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(workers, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bc_policy policy_from(const experiment_config& cfg) {
    return cfg.bc_policy == "dirichlet-zero" ? bc_policy::dirichlet_zero
                                             : bc_policy::characteristic;
}

std::string sweep_checkpoint_path(const experiment_config& cfg, std::size_t k) {
    return cfg.output_dir + "/primal_" + std::to_string(k) + ".sadj";
}

// Loads the sweep from checkpoints when every entry matches the config;
// otherwise recomputes it by continuation.
std::vector<field_solution> obtain_sweep(const experiment_config& cfg, const model_spec& model,
                                         run_manifest& man) {
    grid_policy pol{cfg.kappa, cfg.max_nodes};
    std::vector<field_solution> sweep;
    bool all_loaded = true;
    for (std::size_t k = 0; k < cfg.eps_list.size(); ++k) {
        std::string path = sweep_checkpoint_path(cfg, k);
        if (!fs::exists(path)) {
            all_loaded = false;
            break;
        }
        field_solution sol = load_checkpoint(path);
        if (sol.epsilon != cfg.eps_list[k] || sol.d != model.d ||
            sol.g.nodes() != cells_for(pol, cfg.eps_list[k]) + 1) {
            all_loaded = false;
            break;
        }
        sweep.push_back(std::move(sol));
    }
    if (all_loaded && sweep.size() == cfg.eps_list.size()) {
        stage_record s;
        s.name = "sweep loaded from checkpoints";
        man.stages.push_back(s);
        return sweep;
    }
    auto t0 = clock_type::now();
    sweep = continuation_sweep(model, pol, cfg.eps_list);
    for (const auto& sol : sweep) {
        stage_record s;
        s.name = "primal solve";
        s.epsilon = sol.epsilon;
        s.converged = sol.converged;
        s.newton_iterations = sol.newton_iterations;
        s.residual_norm = sol.residual_norm;
        man.stages.push_back(s);
    }
    man.stages.back().wall_ms = ms_since(t0);
    return sweep;
}

void note_resolution_warnings(const experiment_config& cfg, run_manifest& man) {
    man.warnings = cfg.warnings;
    grid_policy pol{cfg.kappa, cfg.max_nodes};
    for (double eps : cfg.eps_list) {
        double h = 1.0 / cells_for(pol, eps);
        if (h > eps / 5.0)
            man.warnings.push_back("layer under-resolved at epsilon = " + format_full(eps) +
                                   " (h = " + format_full(h) + ")");
    }
}

void write_fit_csv(const std::string& path,
                   const std::vector<std::pair<std::string, fit_result>>& fits) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "quantity,slope,intercept,r_squared,points\n";
    for (const auto& [name, fit] : fits)
        f << name << "," << format_full(fit.slope) << "," << format_full(fit.intercept) << ","
          << format_full(fit.r_squared) << "," << fit.points_used << "\n";
    if (!f) throw std::runtime_error("write failure on " + path);
}

}  // namespace

model_spec build_model(const experiment_config& cfg) {
    boundary_data bd;
    bd.left_value = cfg.left_value;
    bd.right_value = cfg.right_value;
    bd.inflow_entropy = cfg.inflow_entropy;
    bd.inflow_enthalpy = cfg.inflow_enthalpy;
    bd.outflow_pressure = cfg.outflow_pressure;
    if (cfg.model == "scalar") return scalar_model(bd);
    euler_params par;
    par.gamma = cfg.gamma;
    par.alpha0 = cfg.alpha0;
    par.alpha1 = cfg.alpha1;
    return euler_model(make_quadratic_nozzle(cfg.area_quad, cfg.area_center, cfg.area_base), bd,
                       par);
}

int run_solve(const experiment_config& cfg, bool verbose) {
    run_manifest man;
    man.command = "solve";
    man.config = cfg;
    bool env_override = false;
    man.workers_used = resolve_workers(cfg, env_override);
    man.workers_env_override = env_override;
    note_resolution_warnings(cfg, man);
    fs::create_directories(cfg.output_dir);

    try {
        model_spec model = build_model(cfg);
        grid_policy pol{cfg.kappa, cfg.max_nodes};
        auto t0 = clock_type::now();
        std::vector<field_solution> sweep = continuation_sweep(model, pol, cfg.eps_list);
        double sweep_ms = ms_since(t0);

        bool all_converged = true;
        for (std::size_t k = 0; k < sweep.size(); ++k) {
            const field_solution& sol = sweep[k];
            stage_record s;
            s.name = "primal solve";
            s.epsilon = sol.epsilon;
            s.converged = sol.converged;
            s.newton_iterations = sol.newton_iterations;
            s.residual_norm = sol.residual_norm;
            s.wall_ms = k + 1 == sweep.size() ? sweep_ms : 0.0;
            man.stages.push_back(s);
            if (!sol.converged) {
                all_converged = false;
                continue;
            }

            std::vector<std::string> header{"x"};
            for (int c = 0; c < model.d; ++c) header.push_back("w" + std::to_string(c));
            std::vector<std::vector<double>> rows;
            rows.reserve(static_cast<std::size_t>(sol.g.nodes()));
            for (int i = 0; i < sol.g.nodes(); ++i) {
                std::vector<double> row{sol.g.x[i]};
                for (int c = 0; c < model.d; ++c)
                    row.push_back(sol.values[static_cast<std::size_t>(i) * model.d + c]);
                rows.push_back(std::move(row));
            }
            std::string primal_csv = cfg.output_dir + "/primal_" + std::to_string(k) + ".csv";
            write_csv(primal_csv, header, rows);
            man.files.push_back(primal_csv);

            std::string ckpt = sweep_checkpoint_path(cfg, k);
            save_checkpoint(ckpt, sol);
            man.files.push_back(ckpt);

            auto ta = clock_type::now();
            adjoint_solution adj = solve_viscous_adjoint(model, sol, policy_from(cfg));
            stage_record sa;
            sa.name = "adjoint solve";
            sa.epsilon = sol.epsilon;
            sa.residual_norm = adj.residual_norm;
            sa.wall_ms = ms_since(ta);
            man.stages.push_back(sa);

            std::vector<std::string> zheader{"x"};
            for (int c = 0; c < model.d; ++c) zheader.push_back("z" + std::to_string(c));
            std::vector<std::vector<double>> zrows;
            zrows.reserve(static_cast<std::size_t>(adj.g.nodes()));
            for (int i = 0; i < adj.g.nodes(); ++i) {
                std::vector<double> row{adj.g.x[i]};
                for (int c = 0; c < model.d; ++c)
                    row.push_back(adj.values[static_cast<std::size_t>(i) * model.d + c]);
                zrows.push_back(std::move(row));
            }
            std::string adj_csv = cfg.output_dir + "/adjoint_" + std::to_string(k) + ".csv";
            write_csv(adj_csv, zheader, zrows);
            man.files.push_back(adj_csv);

            if (verbose)
                std::cout << "epsilon " << format_full(sol.epsilon) << ": converged in "
                          << sol.newton_iterations << " iterations, residual "
                          << format_full(sol.residual_norm) << "\n";
        }
        write_manifest(cfg.output_dir + "/manifest_solve.json", man);
        if (!all_converged) {
            std::cerr << "solve: sweep truncated by a non-converged entry\n";
            return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "solve: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_check_ibc(const experiment_config& cfg, bool verbose) {
    run_manifest man;
    man.command = "check-ibc";
    man.config = cfg;
    bool env_override = false;
    man.workers_used = resolve_workers(cfg, env_override);
    man.workers_env_override = env_override;
    note_resolution_warnings(cfg, man);
    fs::create_directories(cfg.output_dir);

    const std::vector<double> thetas{0.01, 0.05, 0.1};
    try {
        model_spec model = build_model(cfg);
        std::vector<field_solution> sweep = obtain_sweep(cfg, model, man);

        std::vector<std::string> header{"epsilon", "viscous_residual", "endpoint_form", "gap"};
        for (double th : thetas) {
            char label[32];
            std::snprintf(label, sizeof(label), "vr_theta_%g", th);
            header.push_back(label);
        }
        bool euler = model.d == 3;
        if (euler) header.push_back("z2_gap");

        std::vector<std::vector<double>> rows;
        std::vector<std::pair<double, double>> vr_points, ef_points;
        std::vector<double> smallest_eps_vrs;
        for (const auto& sol : sweep) {
            if (!sol.converged) continue;
            // a sweep entry whose profile has no usable interior layer (e.g. a
            // smooth shock-free branch at large viscosity) is reported and
            // skipped; the fit runs over the remaining entries
            try {
                adjoint_solution adj = solve_viscous_adjoint(model, sol, policy_from(cfg));
                transition_region region = detect_transition_region_farfield(sol, cfg.theta);
                ibc_report rep = viscous_ibc_residual(sol, adj, region, model);
                std::vector<double> row{rep.epsilon, rep.viscous_residual, rep.endpoint_form,
                                        rep.gap};
                std::vector<double> theta_vrs;
                for (double th : thetas) {
                    transition_region rtheta = detect_transition_region_farfield(sol, th);
                    ibc_report rth = viscous_ibc_residual(sol, adj, rtheta, model);
                    row.push_back(rth.viscous_residual);
                    theta_vrs.push_back(rth.viscous_residual);
                }
                if (euler) row.push_back(rep.z2_gap);
                rows.push_back(row);
                vr_points.emplace_back(rep.epsilon, rep.viscous_residual);
                ef_points.emplace_back(rep.epsilon, rep.endpoint_form);
                smallest_eps_vrs = theta_vrs;
                if (verbose)
                    std::cout << "epsilon " << format_full(rep.epsilon) << ": interior residual "
                              << format_full(rep.viscous_residual) << ", endpoint form "
                              << format_full(rep.endpoint_form) << "\n";
            } catch (const std::exception& ex) {
                std::string note = "epsilon " + format_full(sol.epsilon) +
                                   " skipped in interior-condition sweep: " + ex.what();
                std::cerr << "check-ibc: " << note << "\n";
                man.warnings.push_back(note);
            }
        }
        if (rows.size() < 3)
            throw std::runtime_error("interior-condition sweep needs at least 3 converged points, got " +
                                     std::to_string(rows.size()));

        std::string sweep_csv = cfg.output_dir + "/ibc_sweep.csv";
        write_csv(sweep_csv, header, rows);
        man.files.push_back(sweep_csv);

        std::vector<std::pair<std::string, fit_result>> fits;
        fits.emplace_back("viscous_residual", fit_convergence_rate(vr_points));
        fits.emplace_back("endpoint_form", fit_convergence_rate(ef_points));
        std::string fit_csv = cfg.output_dir + "/fit.csv";
        write_fit_csv(fit_csv, fits);
        man.files.push_back(fit_csv);
        if (verbose)
            std::cout << "interior residual decay rate: " << format_full(fits[0].second.slope)
                      << " (r^2 = " << format_full(fits[0].second.r_squared) << ")\n";

        write_manifest(cfg.output_dir + "/manifest_check_ibc.json", man);

        // post-check: threshold choice must not matter at the smallest viscosity
        double vmin = std::abs(smallest_eps_vrs[0]), vmax = vmin;
        for (double v : smallest_eps_vrs) {
            vmin = std::min(vmin, std::abs(v));
            vmax = std::max(vmax, std::abs(v));
        }
        if (!(vmin > 0.0) || (vmax - vmin) / vmax > 0.2) {
            std::cerr << "check-ibc: interior residual is threshold-sensitive at the smallest "
                         "viscosity (spread "
                      << format_full(vmax - vmin) << ")\n";
            return 4;
        }
    } catch (const std::exception& e) {
        std::cerr << "check-ibc: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_error_representation(const experiment_config& cfg, bool verbose) {
    run_manifest man;
    man.command = "error-representation";
    man.config = cfg;
    bool env_override = false;
    int workers = resolve_workers(cfg, env_override);
    man.workers_used = workers;
    man.workers_env_override = env_override;
    note_resolution_warnings(cfg, man);
    fs::create_directories(cfg.output_dir);

    try {
        model_spec model = build_model(cfg);
        const piecewise_solution& w = *model.exact;

        weight_function weight;
        if (model.d == 1) {
            // anchor the weight at the value forced by the interior condition
            double fx_jump = (model.flux_jacobian(w.trace_plus()) * w.right_dx(w.alpha))[0] -
                             (model.flux_jacobian(w.trace_minus()) * w.left_dx(w.alpha))[0];
            double p_jump = model.target_integrand(w.trace_plus()) -
                            model.target_integrand(w.trace_minus());
            double z_anchor = -p_jump / fx_jump;
            weight = as_weight(scalar_inviscid_adjoint_oracle(model, w, {w.alpha, z_anchor}));
            man.warnings.push_back("weight function: characteristic-integrated inviscid adjoint");
        } else {
            std::vector<field_solution> sweep = obtain_sweep(cfg, model, man);
            const field_solution* finest = nullptr;
            for (const auto& sol : sweep)
                if (sol.converged) finest = &sol;
            if (!finest) throw std::runtime_error("no converged viscous solution for the weight");
            adjoint_solution adj = solve_viscous_adjoint(model, *finest, policy_from(cfg));
            weight = as_weight(adj);
            man.warnings.push_back("weight function: viscous adjoint at epsilon = " +
                                   format_full(finest->epsilon));
        }

        const std::size_t n = cfg.nu_list.size();
        std::vector<error_budget> budgets(n);
        auto t0 = clock_type::now();
        parallel_for(static_cast<int>(n), workers, [&](int i) {
            double nu = cfg.nu_list[static_cast<std::size_t>(i)];
            perturbation_family fam = generate_perturbation(w, nu, cfg.coupling * nu);
            budgets[static_cast<std::size_t>(i)] = verify_error_representation(fam, weight, model);
        });
        stage_record s;
        s.name = "error budgets";
        s.wall_ms = ms_since(t0);
        man.stages.push_back(s);

        std::vector<std::string> header{
            "nu",         "alpha_bar",      "j_exact",        "j_approx",
            "modified_gap", "residual_term", "singular_term", "internal_term",
            "defect",     "defect_over_nu", "defect_over_nu2", "defect_no_internal",
            "defect_no_internal_over_nu",   "effectivity_residual", "effectivity_total"};
        std::vector<std::vector<double>> rows;
        for (const error_budget& b : budgets) {
            double no_internal = b.modified_gap - b.residual_term;
            rows.push_back({b.nu, b.alpha_bar, b.j_exact, b.j_approx, b.modified_gap,
                            b.residual_term, b.singular_term, b.internal_term, b.defect,
                            b.defect / b.nu, b.defect / (b.nu * b.nu), no_internal,
                            no_internal / b.nu, b.residual_term / b.modified_gap,
                            (b.residual_term + b.alpha_bar * b.internal_term) / b.modified_gap});
            if (verbose)
                std::cout << "nu " << format_full(b.nu) << ": defect " << format_full(b.defect)
                          << ", defect/nu " << format_full(b.defect / b.nu) << "\n";
        }
        std::string budget_csv = cfg.output_dir + "/budget.csv";
        write_csv(budget_csv, header, rows);
        man.files.push_back(budget_csv);
        write_manifest(cfg.output_dir + "/manifest_error_representation.json", man);
    } catch (const std::exception& e) {
        std::cerr << "error-representation: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_all(const experiment_config& cfg, bool verbose) {
    if (int rc = run_solve(cfg, verbose)) return rc;
    if (int rc = run_check_ibc(cfg, verbose)) return rc;
    return run_error_representation(cfg, verbose);
}

}  // namespace sadj
