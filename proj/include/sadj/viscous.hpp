/** \file viscous.hpp
    \brief Damped-Newton solver for the viscous regularization
           f(w)_x + S(x,w) = eps * w_xx with Dirichlet data from the exact
           inviscid traces, plus layer detection and smooth-jump extraction.
*/
#pragma once

#include <functional>
#include <vector>

#include "sadj/grid.hpp"
#include "sadj/model.hpp"
#include "sadj/state.hpp"

namespace sadj {

struct field_solution {
    grid g;
    int d = 1;
    double epsilon = 0.0;
    std::vector<double> values;  // node-major, values[i*d + c]
    bool converged = false;
    int newton_iterations = 0;
    double residual_norm = 0.0;

    state at(int i) const {
        state s = state::zero(d);
        for (int c = 0; c < d; ++c) s[c] = values[static_cast<std::size_t>(i) * d + c];
        return s;
    }
    void set(int i, const state& s) {
        for (int c = 0; c < d; ++c) values[static_cast<std::size_t>(i) * d + c] = s[c];
    }
    std::vector<double> component(int c) const {
        std::vector<double> q(static_cast<std::size_t>(g.nodes()));
        for (int i = 0; i < g.nodes(); ++i) q[i] = values[static_cast<std::size_t>(i) * d + c];
        return q;
    }
};

constexpr double newton_tolerance = 1e-10;
constexpr int newton_max_iterations = 50;
constexpr int newton_max_halvings = 20;

// Discrete steady residual (Dirichlet rows at both ends, second-order central
// differences inside); max-norm reported by solve_viscous_primal.
void viscous_residual_vector(const model_spec& model, const grid& g, double epsilon,
                             const std::vector<double>& w, std::vector<double>& out);

// Tanh-mollified exact inviscid solution (transition width 5*eps).
field_solution mollified_initial_guess(const model_spec& model, const grid& g, double epsilon);

// init = nullptr selects the mollified default. Divergence is reported via
// converged=false; a singular Jacobian throws.
field_solution solve_viscous_primal(const model_spec& model, const grid& g, double epsilon,
                                    const field_solution* init = nullptr);

struct grid_policy {
    double kappa = 8.0;  // cells per epsilon: h = epsilon / kappa
    int max_nodes = 200000;
};

int cells_for(const grid_policy& policy, double epsilon);

// Linear interpolation onto a new grid (used for warm starts).
field_solution interpolate_onto(const field_solution& src, const grid& g);

// Solves the list in order, warm-starting each epsilon from the previous
// solution. A first-entry failure throws; a later failure returns the list
// truncated after the failed entry (converged flags tell the caller).
std::vector<field_solution> continuation_sweep(const model_spec& model, const grid_policy& policy,
                                               const std::vector<double>& eps_list);

struct transition_region {
    int i_peak = 0;
    int i_minus = 0;
    int i_plus = 0;
    double alpha_hat = 0.0;
    double x_minus = 0.0;
    double x_plus = 0.0;
    double max_gradient = 0.0;
    double edge_scale = 0.0;  // gradient threshold the edges were grown to
};

// Region grown from the max-gradient node until |w_x| < theta * max|w_x|.
transition_region detect_transition_region(const field_solution& sol, double theta);

// Same peak, but edges grown to an epsilon-independent scale: |w_x| below
// (1+theta) times the far-field gradient max (nodes at least 0.25 from the
// peak). This is the rule the interior-condition sweep uses, since the
// relative rule's threshold scales with 1/eps and pins the edges inside the
// layer.
transition_region detect_transition_region_farfield(const field_solution& sol, double theta);

// Jump of the nodal field q across [x_minus, x_plus], computed both as the
// integral of the interpolant's derivative (telescoping face sum) and as the
// endpoint difference; throws if the two disagree beyond 1e-10.
double smooth_jump(const grid& g, const std::vector<double>& q, double x_minus, double x_plus);

inline double smooth_jump(const field_solution& sol, const std::vector<double>& q,
                          const transition_region& r) {
    return smooth_jump(sol.g, q, r.x_minus, r.x_plus);
}

// Max over nodes/components of the drift of the discrete flux balance
// (F_{j+1}+F_j)/2 + h*sum S_i - eps*(W_{j+1}-W_j)/h; bounded by the Newton
// tolerance for converged solutions.
double conservation_drift(const model_spec& model, const field_solution& sol);

}  // namespace sadj
