/** \file error_rep.hpp
    \brief Shock-aware error representation: modified target functional,
           residual pairing, internal shock term, and the interior-condition
           residual in both inviscid and viscous forms.
*/
#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "sadj/adjoint.hpp"
#include "sadj/model.hpp"
#include "sadj/piecewise.hpp"
#include "sadj/transform.hpp"
#include "sadj/viscous.hpp"

namespace sadj {

using weight_function = std::function<state(double)>;

// wraps a scalar-valued adjoint into a weight function
weight_function as_weight(const std::function<double(double)>& z);
weight_function as_weight(const adjoint_solution& z);

// Target functional J(w) = integral of p(w): branch-wise adaptive quadrature
// for exact solutions, trapezoid for discrete fields.
double functional_value(const piecewise_solution& w, const model_spec& model);
double functional_value(const field_solution& w, const model_spec& model);

// Shock-corrected functional J(w) - z_alpha^T [f(w)].
double modified_functional(const piecewise_solution& w, const state& z_alpha,
                           const model_spec& model);
double modified_functional(const field_solution& w, const transition_region& region,
                           const state& z_alpha, const model_spec& model);

// integral z^T (f(v)_x + S(x,v)) split into the smooth part (probe-grid
// trapezoid excluding a width-2h window at v's shock) and the singular shock
// contribution z(beta)^T [f(v)]
struct pairing_result {
    double smooth = 0.0;
    double singular = 0.0;
    double total() const { return smooth + singular; }
};

pairing_result residual_pairing(const weight_function& z, const piecewise_solution& v,
                                const model_spec& model);

// I(z,w) = -z(alpha)^T [f(w)_x] - [p(w)] with one-sided analytic derivatives
double internal_term(const state& z_alpha, const piecewise_solution& w, const model_spec& model);
double internal_term(const weight_function& z, const piecewise_solution& w,
                     const model_spec& model);

// z(alpha)^T [f(w)_x] + [p(w)]: vanishes exactly when the interior condition
// holds (the negative of internal_term by construction)
double interior_bc_residual(const state& z_alpha, const piecewise_solution& w,
                            const model_spec& model);
double interior_bc_residual(const weight_function& z, const piecewise_solution& w,
                            const model_spec& model);

struct error_budget {
    double nu = 0.0;
    double alpha_bar = 0.0;
    double j_exact = 0.0;        // target functional at the base solution
    double j_approx = 0.0;       // target functional at the perturbed solution
    double modified_gap = 0.0;   // shock-corrected functional difference
    double residual_term = 0.0;  // smooth residual pairing
    double singular_term = 0.0;  // shock contribution of the pairing (reported)
    double internal_term = 0.0;
    double defect = 0.0;         // modified_gap - residual_term - alpha_bar * internal_term
};

error_budget verify_error_representation(const perturbation_family& fam, const weight_function& z,
                                         const model_spec& model);

struct ibc_report {
    double epsilon = 0.0;
    double viscous_residual = 0.0;  // [p(w)] - [z^T S(w)] across the region
    double endpoint_form = 0.0;     // -eps [(z_x)^T (w_x)] between the edges
    double gap = 0.0;               // |viscous_residual - endpoint_form|
    double z2_gap = std::numeric_limits<double>::quiet_NaN();  // Euler only
};

ibc_report viscous_ibc_residual(const field_solution& primal, const adjoint_solution& adj,
                                const transition_region& region, const model_spec& model);

// z_2(alpha_hat) + A(alpha_hat)/A'(alpha_hat): the momentum adjoint value the
// interior condition forces, independent of boundary conditions
double euler_ibc_check(const adjoint_solution& adj, const transition_region& region,
                       const nozzle_geometry& geom);

struct fit_result {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// least-squares fit of log10|value| against log10(eps); zero values are
// excluded with a notice, fewer than 3 surviving points is an error
fit_result fit_convergence_rate(const std::vector<std::pair<double, double>>& eps_value);

}  // namespace sadj
