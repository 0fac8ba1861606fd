#include "sadj/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "sadj/banded.hpp"
#include "sadj/piecewise.hpp"

namespace sadj {

namespace {

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// residual norm of a trial iterate; inadmissible states reject the trial
double try_residual_norm(const model_spec& model, const grid& g, double epsilon,
                         const std::vector<double>& w, std::vector<double>& scratch) {
    try {
        viscous_residual_vector(model, g, epsilon, w, scratch);
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
    return max_norm(scratch);
}

}  // namespace

void viscous_residual_vector(const model_spec& model, const grid& g, double epsilon,
                             const std::vector<double>& w, std::vector<double>& out) {
    const int d = model.d, nn = g.nodes();
    const double h = g.h;
    out.assign(static_cast<std::size_t>(nn) * d, 0.0);
    auto node = [&](int i) {
        state s = state::zero(d);
        for (int c = 0; c < d; ++c) s[c] = w[static_cast<std::size_t>(i) * d + c];
        return s;
    };
    std::vector<state> fw(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) fw[i] = model.flux(node(i));
    for (int c = 0; c < d; ++c) {
        out[c] = w[c] - model.dirichlet_left[c];
        out[static_cast<std::size_t>(nn - 1) * d + c] =
            w[static_cast<std::size_t>(nn - 1) * d + c] - model.dirichlet_right[c];
    }
    for (int i = 1; i < nn - 1; ++i) {
        state wi = node(i);
        state src = model.source(g.x[i], wi);
        for (int c = 0; c < d; ++c) {
            double conv = (fw[i + 1][c] - fw[i - 1][c]) / (2.0 * h);
            double diff = (w[static_cast<std::size_t>(i + 1) * d + c] - 2.0 * wi[c] +
                           w[static_cast<std::size_t>(i - 1) * d + c]) /
                          (h * h);
            out[static_cast<std::size_t>(i) * d + c] = conv + src[c] - epsilon * diff;
        }
    }
}

field_solution mollified_initial_guess(const model_spec& model, const grid& g, double epsilon) {
    if (!model.exact) throw std::runtime_error("model carries no exact reference solution");
    const piecewise_solution& ex = *model.exact;
    field_solution f;
    f.g = g;
    f.d = model.d;
    f.epsilon = epsilon;
    f.values.resize(static_cast<std::size_t>(g.nodes()) * model.d);
    for (int i = 0; i < g.nodes(); ++i) {
        double x = g.x[i];
        double blend = 0.5 * (1.0 + std::tanh((x - ex.alpha) / (5.0 * epsilon)));
        state wl = ex.left(x), wr = ex.right(x);
        f.set(i, wl + blend * (wr - wl));
    }
    return f;
}

field_solution solve_viscous_primal(const model_spec& model, const grid& g, double epsilon,
                                    const field_solution* init) {
    if (!(epsilon > 0.0)) throw std::runtime_error("viscosity must be positive");
    if (g.h > epsilon / 5.0)
        std::cerr << "warning: layer under-resolved (h = " << g.h << " > epsilon/5 = "
                  << epsilon / 5.0 << ")\n";
    const int d = model.d, nn = g.nodes();
    const double h = g.h;

    field_solution sol;
    if (init) {
        if (init->d != d || init->g.nodes() != nn)
            throw std::runtime_error("initial guess does not match grid/model dimensions");
        sol = *init;
    } else {
        sol = mollified_initial_guess(model, g, epsilon);
    }
    sol.g = g;
    sol.d = d;
    sol.epsilon = epsilon;
    sol.converged = false;
    sol.newton_iterations = 0;

    std::vector<double> res, trial_res, trial(sol.values.size());
    viscous_residual_vector(model, g, epsilon, sol.values, res);
    double rn = max_norm(res);

    const int kd = 2 * d - 1;
    for (int it = 0; it < newton_max_iterations; ++it) {
        if (rn <= newton_tolerance) {
            sol.converged = true;
            break;
        }
        banded_matrix jac(nn * d, kd, kd);
        for (int c = 0; c < d; ++c) {
            jac.at(c, c) = 1.0;
            jac.at((nn - 1) * d + c, (nn - 1) * d + c) = 1.0;
        }
        for (int i = 1; i < nn - 1; ++i) {
            state wi = sol.at(i);
            dmat fl = model.flux_jacobian(sol.at(i - 1));
            dmat fr = model.flux_jacobian(sol.at(i + 1));
            dmat sj = model.source_jacobian(g.x[i], wi);
            for (int r = 0; r < d; ++r) {
                int row = i * d + r;
                for (int c = 0; c < d; ++c) {
                    jac.at(row, (i - 1) * d + c) = -fl(r, c) / (2.0 * h);
                    jac.at(row, i * d + c) = sj(r, c);
                    jac.at(row, (i + 1) * d + c) = fr(r, c) / (2.0 * h);
                }
                jac.at(row, (i - 1) * d + r) += -epsilon / (h * h);
                jac.at(row, i * d + r) += 2.0 * epsilon / (h * h);
                jac.at(row, (i + 1) * d + r) += -epsilon / (h * h);
            }
        }
        std::vector<double> rhs(res.size());
        for (std::size_t k = 0; k < res.size(); ++k) rhs[k] = -res[k];
        std::vector<double> delta = solve_banded(jac, rhs);

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= newton_max_halvings; ++halving) {
            for (std::size_t k = 0; k < trial.size(); ++k)
                trial[k] = sol.values[k] + lambda * delta[k];
            double tn = try_residual_norm(model, g, epsilon, trial, trial_res);
            if (tn < rn) {
                sol.values = trial;
                res = trial_res;
                rn = tn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        ++sol.newton_iterations;
        if (!accepted) break;  // stalled: report converged=false with the last residual
    }
    if (!sol.converged && rn <= newton_tolerance) sol.converged = true;
    sol.residual_norm = rn;
    return sol;
}

int cells_for(const grid_policy& policy, double epsilon) {
    if (!(policy.kappa > 0.0)) throw std::runtime_error("grid policy: kappa must be positive");
    long long n = std::llround(policy.kappa / epsilon);
    n = std::min<long long>(n, policy.max_nodes);
    n = std::max<long long>(n, 16);
    return static_cast<int>(n);
}

field_solution interpolate_onto(const field_solution& src, const grid& g) {
    field_solution out;
    out.g = g;
    out.d = src.d;
    out.epsilon = src.epsilon;
    out.values.resize(static_cast<std::size_t>(g.nodes()) * src.d);
    for (int i = 0; i < g.nodes(); ++i) {
        double x = g.x[i];
        double t = x / src.g.h;
        int j = std::min(static_cast<int>(t), src.g.n - 1);
        double loc = t - j;
        for (int c = 0; c < src.d; ++c) {
            double a = src.values[static_cast<std::size_t>(j) * src.d + c];
            double b = src.values[static_cast<std::size_t>(j + 1) * src.d + c];
            out.values[static_cast<std::size_t>(i) * src.d + c] = a + loc * (b - a);
        }
    }
    return out;
}

std::vector<field_solution> continuation_sweep(const model_spec& model, const grid_policy& policy,
                                               const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw std::runtime_error("continuation sweep: empty epsilon list");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0))
            throw std::runtime_error("continuation sweep: epsilon values must be positive");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
            throw std::runtime_error("continuation sweep: epsilon list must be strictly decreasing");
    }
    std::vector<field_solution> out;
    out.reserve(eps_list.size());
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        grid g = make_uniform_grid(cells_for(policy, eps_list[k]));
        field_solution sol;
        if (k == 0) {
            sol = solve_viscous_primal(model, g, eps_list[k]);
            if (!sol.converged)
                throw std::runtime_error("continuation sweep: cold start failed at epsilon = " +
                                         std::to_string(eps_list[k]) + " (residual " +
                                         std::to_string(sol.residual_norm) + ")");
        } else {
            field_solution warm = interpolate_onto(out.back(), g);
            sol = solve_viscous_primal(model, g, eps_list[k], &warm);
        }
        bool ok = sol.converged;
        out.push_back(std::move(sol));
        if (!ok) {
            std::cerr << "continuation sweep truncated: Newton stalled at epsilon = "
                      << eps_list[k] << " (residual " << out.back().residual_norm << ")\n";
            break;
        }
    }
    return out;
}

namespace {

// nodal |w_x| by central differences; systems are tracked through the first
// component (density for the nozzle), whose layer is not masked by the
// boundary layers of the other fields
std::vector<double> gradient_norms(const field_solution& sol) {
    const int nn = sol.g.nodes();
    std::vector<double> gnorm(static_cast<std::size_t>(nn), 0.0);
    for (int i = 1; i < nn - 1; ++i) {
        double dc = (sol.values[static_cast<std::size_t>(i + 1) * sol.d] -
                     sol.values[static_cast<std::size_t>(i - 1) * sol.d]) /
                    (2.0 * sol.g.h);
        gnorm[i] = std::abs(dc);
    }
    return gnorm;
}

transition_region grow_region(const field_solution& sol, const std::vector<double>& gnorm,
                              int i_peak, double threshold) {
    const int nn = sol.g.nodes();
    int lo = i_peak, hi = i_peak;
    while (lo > 0 && gnorm[lo] >= threshold) --lo;
    while (hi < nn - 1 && gnorm[hi] >= threshold) ++hi;
    if (lo == 0 || hi == nn - 1)
        throw std::runtime_error("transition region reaches the domain boundary");
    transition_region r;
    r.i_peak = i_peak;
    r.i_minus = lo;
    r.i_plus = hi;
    r.alpha_hat = sol.g.x[i_peak];
    r.x_minus = sol.g.x[lo];
    r.x_plus = sol.g.x[hi];
    r.max_gradient = gnorm[i_peak];
    r.edge_scale = threshold;
    return r;
}

int peak_index(const field_solution& sol, const std::vector<double>& gnorm) {
    const int nn = sol.g.nodes();
    int i_peak = 1;
    for (int i = 2; i < nn - 1; ++i)
        if (gnorm[i] > gnorm[i_peak]) i_peak = i;
    if (i_peak <= 1 || i_peak >= nn - 2)
        throw std::runtime_error("no interior transition layer: max gradient at the domain boundary");
    return i_peak;
}

}  // namespace

transition_region detect_transition_region(const field_solution& sol, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::runtime_error("transition threshold must lie in (0,1)");
    std::vector<double> gnorm = gradient_norms(sol);
    int i_peak = peak_index(sol, gnorm);
    return grow_region(sol, gnorm, i_peak, theta * gnorm[i_peak]);
}

transition_region detect_transition_region_farfield(const field_solution& sol, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::runtime_error("transition threshold must lie in (0,1)");
    std::vector<double> gnorm = gradient_norms(sol);
    int i_peak = peak_index(sol, gnorm);
    double alpha_hat = sol.g.x[i_peak];
    double g_out = 0.0;
    for (int i = 1; i < sol.g.nodes() - 1; ++i)
        if (std::abs(sol.g.x[i] - alpha_hat) >= 0.25) g_out = std::max(g_out, gnorm[i]);
    if (!(g_out > 0.0) || g_out >= gnorm[i_peak])
        throw std::runtime_error("no scale separation between the layer and the far field");
    return grow_region(sol, gnorm, i_peak, (1.0 + theta) * g_out);
}

double smooth_jump(const grid& g, const std::vector<double>& q, double x_minus, double x_plus) {
    if (!(x_minus < x_plus) || x_minus < 0.0 || x_plus > 1.0)
        throw std::runtime_error("smooth jump: invalid interval");
    auto interp = [&](double x) {
        double t = x / g.h;
        int j = std::min(static_cast<int>(t), g.n - 1);
        double loc = t - j;
        return q[j] + loc * (q[j + 1] - q[j]);
    };
    // integral of the interpolant derivative: partial end cells + full faces
    double t0 = x_minus / g.h, t1 = x_plus / g.h;
    int j0 = std::min(static_cast<int>(t0), g.n - 1);
    int j1 = std::min(static_cast<int>(t1), g.n - 1);
    double integral = 0.0;
    if (j0 == j1) {
        integral = (q[j0 + 1] - q[j0]) * (t1 - t0);
    } else {
        integral += (q[j0 + 1] - q[j0]) * (j0 + 1 - t0);
        for (int j = j0 + 1; j < j1; ++j) integral += q[j + 1] - q[j];
        integral += (q[j1 + 1] - q[j1]) * (t1 - j1);
    }
    double endpoint = interp(x_plus) - interp(x_minus);
    if (std::abs(integral - endpoint) > 1e-10 * std::max(1.0, std::abs(endpoint)))
        throw std::runtime_error("smooth jump: integral and endpoint forms disagree");
    return endpoint;
}

double conservation_drift(const model_spec& model, const field_solution& sol) {
    const int d = sol.d, nn = sol.g.nodes();
    const double h = sol.g.h;
    std::vector<state> fw(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) fw[i] = model.flux(sol.at(i));
    double drift = 0.0;
    state acc = state::zero(d);    // h * sum of interior sources
    state phi0 = state::zero(d);
    for (int j = 0; j + 1 < nn; ++j) {
        if (j >= 1) acc += h * model.source(sol.g.x[j], sol.at(j));
        state phi = 0.5 * (fw[j + 1] + fw[j]) + acc;
        for (int c = 0; c < d; ++c)
            phi[c] -= sol.epsilon *
                      (sol.values[static_cast<std::size_t>(j + 1) * d + c] -
                       sol.values[static_cast<std::size_t>(j) * d + c]) /
                      h;
        if (j == 0) phi0 = phi;
        else drift = std::max(drift, max_abs(phi - phi0));
    }
    return drift;
}

}  // namespace sadj
