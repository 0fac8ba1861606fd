/** \file euler.hpp
    \brief Pointwise quasi-1D Euler relations on conserved variables
           w = (rho, rho*u, E).
*/
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "sadj/model.hpp"
#include "sadj/state.hpp"

namespace sadj {

constexpr double admissibility_floor = 1e-12;

inline double euler_pressure(const state& w, const euler_params& par) {
    double rho = w[0];
    if (!(rho > admissibility_floor))
        throw std::domain_error("inadmissible state: density " + std::to_string(rho) +
                                " below positivity floor");
    double u = w[1] / rho;
    double p = (par.gamma - 1.0) * (w[2] - 0.5 * rho * u * u);
    if (!(p > admissibility_floor))
        throw std::domain_error("inadmissible state: pressure " + std::to_string(p) +
                                " below positivity floor");
    return p;
}

inline state euler_flux(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    double u = w[1] / w[0];
    return state(w[1], w[1] * u + p, u * (w[2] + p));
}

inline dmat euler_flux_jacobian(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    double g = par.gamma;
    double u = w[1] / w[0];
    double H = (w[2] + p) / w[0];
    dmat m(3);
    m(0, 0) = 0.0;
    m(0, 1) = 1.0;
    m(0, 2) = 0.0;
    m(1, 0) = 0.5 * (g - 3.0) * u * u;
    m(1, 1) = (3.0 - g) * u;
    m(1, 2) = g - 1.0;
    m(2, 0) = u * (0.5 * (g - 1.0) * u * u - H);
    m(2, 1) = H - (g - 1.0) * u * u;
    m(2, 2) = g * u;
    return m;
}

// Source of the quasi-1D balance form f(w)_x + S(x,w) = 0:
// S = (A'/A) * (rho*u, rho*u^2, u*(E+p)).
inline state euler_source(double x, const state& w, const nozzle_geometry& geom,
                          const euler_params& par) {
    double p = euler_pressure(w, par);
    double u = w[1] / w[0];
    double r = geom.area_derivative(x) / geom.area(x);
    return state(r * w[1], r * w[1] * u, r * u * (w[2] + p));
}

inline dmat euler_source_jacobian(double x, const state& w, const nozzle_geometry& geom,
                                  const euler_params& par) {
    // S = (A'/A)(f(w) - (0, p, 0)), so S' = (A'/A)(f'(w) - e2 * grad p^T).
    double r = geom.area_derivative(x) / geom.area(x);
    dmat m = euler_flux_jacobian(w, par);
    double g = par.gamma;
    double u = w[1] / w[0];
    m(1, 0) -= 0.5 * (g - 1.0) * u * u;
    m(1, 1) -= -(g - 1.0) * u;
    m(1, 2) -= g - 1.0;
    for (int i = 0; i < 9; ++i) m.a[i] *= r;
    return m;
}

// (specific entropy, specific total enthalpy)
inline std::pair<double, double> euler_entropy_enthalpy(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    double s = par.alpha0 * std::log(p / std::pow(w[0], par.gamma)) + par.alpha1;
    double h = (w[2] + p) / w[0];
    return {s, h};
}

// gradient of p(w) wrt conserved variables
inline state euler_pressure_gradient(const state& w, const euler_params& par) {
    double u = w[1] / w[0];
    return state(0.5 * (par.gamma - 1.0) * u * u, -(par.gamma - 1.0) * u, par.gamma - 1.0);
}

inline state euler_entropy_gradient(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    state gp = euler_pressure_gradient(w, par);
    state gs = (par.alpha0 / p) * gp;
    gs[0] -= par.alpha0 * par.gamma / w[0];
    return gs;
}

inline state euler_enthalpy_gradient(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    state gp = euler_pressure_gradient(w, par);
    state gh = (1.0 / w[0]) * gp;
    gh[0] += -(w[2] + p) / (w[0] * w[0]);
    gh[2] += 1.0 / w[0];
    return gh;
}

// Residual of the physical boundary conditions: entropy and total enthalpy at
// inflow, static pressure at outflow.
inline state euler_boundary_residual(const state& w_at_0, const state& w_at_1,
                                     const boundary_data& bd, const euler_params& par) {
    auto [s0, h0] = euler_entropy_enthalpy(w_at_0, par);
    double p1 = euler_pressure(w_at_1, par);
    return state(s0 - bd.inflow_entropy, h0 - bd.inflow_enthalpy, p1 - bd.outflow_pressure);
}

// Characteristic data at a state: speeds and right eigenvectors of f'(w).
struct euler_chars {
    double u, c, H;
    state r_minus;  // speed u - c
    state r_zero;   // speed u
    state r_plus;   // speed u + c
};

inline euler_chars euler_characteristics(const state& w, const euler_params& par) {
    double p = euler_pressure(w, par);
    euler_chars ch;
    ch.u = w[1] / w[0];
    ch.c = std::sqrt(par.gamma * p / w[0]);
    ch.H = (w[2] + p) / w[0];
    ch.r_minus = state(1.0, ch.u - ch.c, ch.H - ch.u * ch.c);
    ch.r_zero = state(1.0, ch.u, 0.5 * ch.u * ch.u);
    ch.r_plus = state(1.0, ch.u + ch.c, ch.H + ch.u * ch.c);
    return ch;
}

}  // namespace sadj
