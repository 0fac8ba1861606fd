/** \file adjoint.hpp
    \brief Discrete adjoint of the viscous solver and an independent
           ODE-integrated inviscid adjoint for the scalar model.
*/
#pragma once

#include <functional>
#include <vector>

#include "sadj/model.hpp"
#include "sadj/piecewise.hpp"
#include "sadj/viscous.hpp"

namespace sadj {

enum class bc_policy { dirichlet_zero, characteristic };

struct adjoint_solution {
    grid g;
    int d = 1;
    double epsilon = 0.0;
    std::vector<double> values;  // node-major
    double residual_norm = 0.0;
    bc_policy policy = bc_policy::dirichlet_zero;

    state at(int i) const {
        state s = state::zero(d);
        for (int c = 0; c < d; ++c) s[c] = values[static_cast<std::size_t>(i) * d + c];
        return s;
    }
    std::vector<double> component(int c) const {
        std::vector<double> q(static_cast<std::size_t>(g.nodes()));
        for (int i = 0; i < g.nodes(); ++i) q[i] = values[static_cast<std::size_t>(i) * d + c];
        return q;
    }
    // linear interpolation
    state value(double x) const;
};

// Interior rows are the exact transpose of the frozen primal linearization
// (so the discrete integration-by-parts identity holds to rounding);
// boundary rows follow the policy. dirichlet_zero is the scalar default;
// characteristic imposes the inviscid dual conditions of the physical Euler
// boundary data plus zero-slope closures along outgoing fields.
adjoint_solution solve_viscous_adjoint(const model_spec& model, const field_solution& primal,
                                       bc_policy policy);

struct adjoint_anchor {
    double x = 0.0;
    double value = 0.0;
};

// Integrates the inviscid adjoint ODE f'(w) z_x = S'(w) z - p'(w) along both
// branches of w, anchored at (x, value) and extended across the shock by
// continuity; returns a cubic-Hermite interpolant of the dense table.
std::function<double(double)> scalar_inviscid_adjoint_oracle(const model_spec& model,
                                                             const piecewise_solution& w,
                                                             adjoint_anchor anchor);

}  // namespace sadj
