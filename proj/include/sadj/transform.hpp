/** \file transform.hpp
    \brief Shock-aligning coordinate maps and controlled perturbation families.
*/
#pragma once

#include <functional>

#include "sadj/model.hpp"
#include "sadj/piecewise.hpp"

namespace sadj {

// Monotone quadratic xi(x) = c x^2 + b x fixing 0 and 1 and sending alpha to
// beta; reduces to the identity when beta = alpha.
struct coordinate_transform {
    double alpha = 0.5;
    double beta = 0.5;
    double c = 0.0;
    double b = 1.0;

    double xi(double x) const { return (c * x + b) * x; }
    double xi_derivative(double x) const { return 2.0 * c * x + b; }
    double xi_second_derivative() const { return 2.0 * c; }
    // stable quadratic inversion on [0,1]
    double inverse(double y) const;
};

coordinate_transform make_transform(double alpha, double beta);

// Approximation v(y) = w(x)(1 + nu sin(pi x)) with y = xi(x): the shock moves
// to beta = alpha + alpha_bar and every component picks up a smooth relative
// bump of size nu vanishing at the boundary.
struct perturbation_family {
    piecewise_solution base;
    piecewise_solution approx;
    coordinate_transform transform;
    double nu = 0.0;
    double alpha_bar = 0.0;
};

perturbation_family generate_perturbation(const piecewise_solution& w, double nu,
                                          double alpha_bar);

struct closeness_thresholds {
    double nu_max = 1e300;
    double xi_derivative_max = 1e300;
    double residual_max = 1e300;
};

struct closeness_report {
    double nu_measured = 0.0;             // sup branch-wise |w(x) - v(xi(x))|
    double xi_derivative_deviation = 0.0; // sup |xi'(x) - 1|
    double residual_sup = 0.0;            // sup off-shock |f(v)_x + S(x,v)|
    double xi_shift_sup = 0.0;            // sup |xi(x) - x|
    double outside_sup = 0.0;             // sup |v - w| outside the inter-shock interval
    double xi_second_sup = 0.0;           // |xi''| (constant for the quadratic map)
    bool passes = false;
};

closeness_report check_closeness(const piecewise_solution& w, const piecewise_solution& v,
                                 const coordinate_transform& t, const closeness_thresholds& thr,
                                 const model_spec& model);

}  // namespace sadj
