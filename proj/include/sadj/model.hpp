/** \file model.hpp
    \brief Balance-law model descriptions: fluxes, sources, target integrand,
           boundary data, nozzle geometry.
*/
#pragma once

#include <functional>
#include <memory>
#include <string>

#include "sadj/state.hpp"

namespace sadj {

struct piecewise_solution;

// Thermodynamic constants for the Euler model; alpha0/alpha1 set the affine
// entropy scaling s = alpha0*log(p/rho^gamma) + alpha1.
struct euler_params {
    double gamma = 1.4;
    double alpha0 = 1.0;
    double alpha1 = 0.0;
};

// Duct cross-section A(x) > 0 with its derivative. area_second is optional;
// when absent it is recovered by Richardson extrapolation, which limits the
// accuracy of exact-solution derivatives right at the sonic point.
struct nozzle_geometry {
    std::function<double(double)> area;
    std::function<double(double)> area_derivative;
    std::function<double(double)> area_second;
};

nozzle_geometry make_quadratic_nozzle(double quad_coeff = 0.8, double center = 0.5,
                                      double base = 1.0);

// Checks positivity of A and consistency of the supplied derivative.
void validate_geometry(const nozzle_geometry& g);

// Boundary data for both models; the scalar law uses left/right values, the
// Euler model uses inflow entropy/enthalpy and outflow pressure.
struct boundary_data {
    double left_value = 1.2;
    double right_value = -1.4;
    double inflow_entropy = 0.0;
    double inflow_enthalpy = 3.5;
    double outflow_pressure = 0.0;
};

// Hyperbolic balance law f(w)_x + S(x,w) = 0 with target functional
// integrand p(w), plus the data the viscous solvers need (Dirichlet states
// from the exact inviscid traces, and the exact solution itself for
// initialization and reference).
struct model_spec {
    int d = 1;
    std::string name;
    std::function<state(const state&)> flux;
    std::function<dmat(const state&)> flux_jacobian;
    std::function<state(double, const state&)> source;
    std::function<dmat(double, const state&)> source_jacobian;
    std::function<double(const state&)> target_integrand;
    std::function<state(const state&)> target_gradient;
    boundary_data boundary;
    euler_params params;
    std::shared_ptr<const nozzle_geometry> geometry;   // null for the scalar law
    std::shared_ptr<const piecewise_solution> exact;   // exact inviscid reference
    state dirichlet_left;
    state dirichlet_right;
};

// Burgers-type scalar law: f = w^2/2, S = w, p = w^3/3, w(0)=1.2, w(1)=-1.4.
model_spec scalar_model();
// Same law with custom Dirichlet values (the exact solution has unit-slope
// branches and a shock at (left + right + 1)/2, which must be admissible).
model_spec scalar_model(const boundary_data& bd);

// Transonic quasi-1D Euler nozzle flow with a shock in the diverging section.
// Passing outflow_pressure = 0 selects the benchmark value (shock at 0.75 for
// the default quadratic nozzle).
model_spec euler_model(const nozzle_geometry& geom, boundary_data bd, euler_params par);
model_spec euler_model();

}  // namespace sadj
