/** \file piecewise.hpp
    \brief Exact two-branch solutions with a single admissible shock.
*/
#pragma once

#include <functional>

#include "sadj/model.hpp"
#include "sadj/state.hpp"

namespace sadj {

// Two smooth branches separated by a discontinuity at alpha in (0,1). Branch
// callables remain evaluable slightly past alpha (smooth continuation), so
// one-sided traces and derivatives are exact.
struct piecewise_solution {
    int d = 1;
    double alpha = 0.5;
    std::function<state(double)> left;
    std::function<state(double)> right;
    std::function<state(double)> left_dx;
    std::function<state(double)> right_dx;

    state operator()(double x) const { return x < alpha ? left(x) : right(x); }
    state derivative(double x) const { return x < alpha ? left_dx(x) : right_dx(x); }
    state trace_minus() const { return left(alpha); }
    state trace_plus() const { return right(alpha); }
};

// f(w_plus) - f(w_minus); zero for an exact steady shock.
state rankine_hugoniot_residual(const state& w_minus, const state& w_plus,
                                const model_spec& model);

// Scalar benchmark: branches 1.2 - x and -0.4 - x with the shock at x = 0.4.
piecewise_solution manufactured_scalar_solution();

// Transonic nozzle flow: subsonic inflow, sonic throat, supersonic expansion,
// normal shock at the alpha matching the outflow pressure, subsonic outflow.
piecewise_solution nozzle_exact_solution(const nozzle_geometry& geom, const boundary_data& bd,
                                         const euler_params& par);

// Shock position for the given outflow pressure (bisection, |p_exit - target|
// driven below 1e-12); exposed for round-trip checks.
double nozzle_shock_position(const nozzle_geometry& geom, const boundary_data& bd,
                             const euler_params& par);

// Exit pressure produced by placing the shock at alpha.
double nozzle_exit_pressure(double alpha, const nozzle_geometry& geom, const boundary_data& bd,
                            const euler_params& par);

}  // namespace sadj
