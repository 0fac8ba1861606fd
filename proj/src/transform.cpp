#include "sadj/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sadj {

double coordinate_transform::inverse(double y) const {
    if (c == 0.0) return y / b;
    double disc = b * b + 4.0 * c * y;
    if (!(disc > 0.0)) throw std::runtime_error("transform inversion: negative discriminant");
    return 2.0 * y / (b + std::sqrt(disc));
}

coordinate_transform make_transform(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw std::runtime_error("transform endpoints must lie in (0,1): alpha = " +
                                 std::to_string(alpha) + ", beta = " + std::to_string(beta));
    coordinate_transform t;
    t.alpha = alpha;
    t.beta = beta;
    t.c = (1.0 - beta / alpha) / (1.0 - alpha);
    t.b = beta / alpha - t.c * alpha;
    // xi' is linear in x, so checking the endpoints establishes monotonicity
    if (!(t.xi_derivative(0.0) > 0.0 && t.xi_derivative(1.0) > 0.0))
        throw std::runtime_error("transform not monotone on [0,1] for beta = " +
                                 std::to_string(beta));
    return t;
}

perturbation_family generate_perturbation(const piecewise_solution& w, double nu,
                                          double alpha_bar) {
    double beta = w.alpha + alpha_bar;
    if (!(beta > 0.0 && beta < 1.0))
        throw std::runtime_error("shock shift " + std::to_string(alpha_bar) +
                                 " pushes the discontinuity out of (0,1)");
    perturbation_family fam;
    fam.base = w;
    fam.nu = nu;
    fam.alpha_bar = alpha_bar;
    fam.transform = make_transform(w.alpha, beta);
    const coordinate_transform t = fam.transform;

    auto bump_branch = [nu, t](const std::function<state(double)>& val,
                               const std::function<state(double)>& der, bool want_derivative) {
        return [nu, t, val, der, want_derivative](double y) {
            double x = t.inverse(y);
            double s = std::sin(M_PI * x);
            state wx = val(x);
            if (!want_derivative) {
                state v = wx;
                for (int i = 0; i < v.d; ++i) v[i] *= 1.0 + nu * s;
                return v;
            }
            double sp = M_PI * std::cos(M_PI * x);
            state dv = der(x);
            for (int i = 0; i < dv.d; ++i)
                dv[i] = (dv[i] * (1.0 + nu * s) + wx[i] * nu * sp) / t.xi_derivative(x);
            return dv;
        };
    };

    fam.approx.d = w.d;
    fam.approx.alpha = beta;
    fam.approx.left = bump_branch(w.left, w.left_dx, false);
    fam.approx.right = bump_branch(w.right, w.right_dx, false);
    fam.approx.left_dx = bump_branch(w.left, w.left_dx, true);
    fam.approx.right_dx = bump_branch(w.right, w.right_dx, true);
    return fam;
}

closeness_report check_closeness(const piecewise_solution& w, const piecewise_solution& v,
                                 const coordinate_transform& t, const closeness_thresholds& thr,
                                 const model_spec& model) {
    closeness_report rep;
    rep.xi_second_sup = std::abs(t.xi_second_derivative());
    const int m = 10000;
    const double shock_window = 1e-9;
    double lo_shock = std::min(w.alpha, v.alpha), hi_shock = std::max(w.alpha, v.alpha);
    for (int i = 0; i <= m; ++i) {
        double x = static_cast<double>(i) / m;
        rep.xi_derivative_deviation =
            std::max(rep.xi_derivative_deviation, std::abs(t.xi_derivative(x) - 1.0));
        rep.xi_shift_sup = std::max(rep.xi_shift_sup, std::abs(t.xi(x) - x));
        if (std::abs(x - w.alpha) > shock_window) {
            // branch-wise comparison at matched points y = xi(x)
            double y = t.xi(x);
            state diff = x < w.alpha ? w.left(x) - v.left(y) : w.right(x) - v.right(y);
            rep.nu_measured = std::max(rep.nu_measured, max_abs(diff));
        }
        if (x < lo_shock - shock_window || x > hi_shock + shock_window) {
            state diff = x < lo_shock ? w.left(x) - v.left(x) : w.right(x) - v.right(x);
            rep.outside_sup = std::max(rep.outside_sup, max_abs(diff));
        }
        if (std::abs(x - v.alpha) > shock_window) {
            state r = model.flux_jacobian(v(x)) * v.derivative(x) + model.source(x, v(x));
            rep.residual_sup = std::max(rep.residual_sup, max_abs(r));
        }
    }
    rep.passes = rep.nu_measured <= thr.nu_max &&
                 rep.xi_derivative_deviation <= thr.xi_derivative_max &&
                 rep.residual_sup <= thr.residual_max;
    return rep;
}

}  // namespace sadj
