#include "sadj/model.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "sadj/euler.hpp"
#include "sadj/piecewise.hpp"

namespace sadj {

nozzle_geometry make_quadratic_nozzle(double quad_coeff, double center, double base) {
    nozzle_geometry g;
    g.area = [=](double x) { return base + quad_coeff * (x - center) * (x - center); };
    g.area_derivative = [=](double x) { return 2.0 * quad_coeff * (x - center); };
    g.area_second = [=](double) { return 2.0 * quad_coeff; };
    return g;
}

void validate_geometry(const nozzle_geometry& g) {
    if (!g.area || !g.area_derivative)
        throw std::runtime_error("nozzle geometry: area and area_derivative must be set");
    const int m = 201;
    for (int i = 0; i <= m; ++i) {
        double x = static_cast<double>(i) / m;
        double a = g.area(x);
        if (!(a > 0.0))
            throw std::runtime_error("nozzle geometry: area not positive at x = " +
                                     std::to_string(x));
        double fd_h = 1e-6;
        double xl = std::max(0.0, x - fd_h), xr = std::min(1.0, x + fd_h);
        double fd = (g.area(xr) - g.area(xl)) / (xr - xl);
        if (std::abs(fd - g.area_derivative(x)) > 1e-6 * (1.0 + std::abs(fd)))
            throw std::runtime_error("nozzle geometry: area_derivative inconsistent at x = " +
                                     std::to_string(x));
    }
}

model_spec scalar_model() { return scalar_model(boundary_data{}); }

model_spec scalar_model(const boundary_data& bd) {
    double alpha = 0.5 * (bd.left_value + bd.right_value + 1.0);
    if (!(alpha > 0.0 && alpha < 1.0 && bd.left_value - alpha > 0.0))
        throw std::runtime_error("scalar boundary values do not admit an interior shock");
    model_spec m;
    m.d = 1;
    m.name = "scalar";
    m.flux = [](const state& w) { return state(0.5 * w[0] * w[0]); };
    m.flux_jacobian = [](const state& w) {
        dmat j(1);
        j(0, 0) = w[0];
        return j;
    };
    m.source = [](double, const state& w) { return state(w[0]); };
    m.source_jacobian = [](double, const state&) {
        dmat j(1);
        j(0, 0) = 1.0;
        return j;
    };
    m.target_integrand = [](const state& w) { return w[0] * w[0] * w[0] / 3.0; };
    m.target_gradient = [](const state& w) { return state(w[0] * w[0]); };
    m.boundary = bd;
    if (bd.left_value == 1.2 && bd.right_value == -1.4) {
        m.exact = std::make_shared<piecewise_solution>(manufactured_scalar_solution());
    } else {
        piecewise_solution w;
        w.d = 1;
        w.alpha = alpha;
        double left_value = bd.left_value, right_value = bd.right_value;
        w.left = [left_value](double x) { return state(left_value - x); };
        w.right = [right_value](double x) { return state(right_value + 1.0 - x); };
        w.left_dx = [](double) { return state(-1.0); };
        w.right_dx = [](double) { return state(-1.0); };
        m.exact = std::make_shared<piecewise_solution>(w);
    }
    m.dirichlet_left = state(bd.left_value);
    m.dirichlet_right = state(bd.right_value);
    return m;
}

model_spec euler_model(const nozzle_geometry& geom, boundary_data bd, euler_params par) {
    validate_geometry(geom);
    model_spec m;
    m.d = 3;
    m.name = "euler-nozzle";
    m.params = par;
    m.geometry = std::make_shared<nozzle_geometry>(geom);
    if (bd.outflow_pressure == 0.0)
        bd.outflow_pressure = 0.7701993966615939;  // shock at 0.75 in the benchmark nozzle
    m.boundary = bd;
    auto gp = m.geometry;
    m.flux = [par](const state& w) { return euler_flux(w, par); };
    m.flux_jacobian = [par](const state& w) { return euler_flux_jacobian(w, par); };
    m.source = [gp, par](double x, const state& w) { return euler_source(x, w, *gp, par); };
    m.source_jacobian = [gp, par](double x, const state& w) {
        return euler_source_jacobian(x, w, *gp, par);
    };
    m.target_integrand = [par](const state& w) { return euler_pressure(w, par); };
    m.target_gradient = [par](const state& w) { return euler_pressure_gradient(w, par); };
    m.exact = std::make_shared<piecewise_solution>(nozzle_exact_solution(geom, bd, par));
    m.dirichlet_left = m.exact->left(0.0);
    m.dirichlet_right = m.exact->right(1.0);
    return m;
}

model_spec euler_model() { return euler_model(make_quadratic_nozzle(), boundary_data{}, euler_params{}); }

}  // namespace sadj
