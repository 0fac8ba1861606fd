#include "sadj/error_rep.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "sadj/quadrature.hpp"

namespace sadj {

weight_function as_weight(const std::function<double(double)>& z) {
    return [z](double x) { return state(z(x)); };
}

weight_function as_weight(const adjoint_solution& z) {
    adjoint_solution copy = z;
    return [copy](double x) { return copy.value(x); };
}

double functional_value(const piecewise_solution& w, const model_spec& model) {
    auto pl = [&](double x) { return model.target_integrand(w.left(x)); };
    auto pr = [&](double x) { return model.target_integrand(w.right(x)); };
    return integrate_segment(pl, 0.0, w.alpha) + integrate_segment(pr, w.alpha, 1.0);
}

double functional_value(const field_solution& w, const model_spec& model) {
    double s = 0.0;
    for (int i = 0; i < w.g.nodes(); ++i) {
        double weight = (i == 0 || i == w.g.n) ? 0.5 : 1.0;
        s += weight * model.target_integrand(w.at(i));
    }
    return s * w.g.h;
}

double modified_functional(const piecewise_solution& w, const state& z_alpha,
                           const model_spec& model) {
    state jump = model.flux(w.trace_plus()) - model.flux(w.trace_minus());
    return functional_value(w, model) - dot(z_alpha, jump);
}

double modified_functional(const field_solution& w, const transition_region& region,
                           const state& z_alpha, const model_spec& model) {
    double corr = 0.0;
    for (int c = 0; c < model.d; ++c) {
        std::vector<double> fc(static_cast<std::size_t>(w.g.nodes()));
        for (int i = 0; i < w.g.nodes(); ++i) fc[i] = model.flux(w.at(i))[c];
        corr += z_alpha[c] * smooth_jump(w, fc, region);
    }
    return functional_value(w, model) - corr;
}

pairing_result residual_pairing(const weight_function& z, const piecewise_solution& v,
                                const model_spec& model) {
    const int m = 100000;
    const double h = 1.0 / m;
    auto integrand = [&](double y) {
        state r = model.flux_jacobian(v(y)) * v.derivative(y) + model.source(y, v(y));
        return dot(z(y), r);
    };
    pairing_result out;
    double prev = integrand(0.0);
    for (int j = 0; j < m; ++j) {
        double y0 = j * h, y1 = (j + 1) * h;
        double cur = integrand(y1);
        // skip faces meeting the width-2h exclusion window around the shock
        if (!(y1 > v.alpha - h && y0 < v.alpha + h)) out.smooth += 0.5 * h * (prev + cur);
        prev = cur;
    }
    state jump = model.flux(v.trace_plus()) - model.flux(v.trace_minus());
    out.singular = dot(z(v.alpha), jump);
    return out;
}

double internal_term(const state& z_alpha, const piecewise_solution& w, const model_spec& model) {
    state fx_minus = model.flux_jacobian(w.trace_minus()) * w.left_dx(w.alpha);
    state fx_plus = model.flux_jacobian(w.trace_plus()) * w.right_dx(w.alpha);
    double p_jump = model.target_integrand(w.trace_plus()) - model.target_integrand(w.trace_minus());
    return -dot(z_alpha, fx_plus - fx_minus) - p_jump;
}

double internal_term(const weight_function& z, const piecewise_solution& w,
                     const model_spec& model) {
    return internal_term(z(w.alpha), w, model);
}

double interior_bc_residual(const state& z_alpha, const piecewise_solution& w,
                            const model_spec& model) {
    return -internal_term(z_alpha, w, model);
}

double interior_bc_residual(const weight_function& z, const piecewise_solution& w,
                            const model_spec& model) {
    return -internal_term(z(w.alpha), w, model);
}

error_budget verify_error_representation(const perturbation_family& fam, const weight_function& z,
                                         const model_spec& model) {
    const piecewise_solution& w = fam.base;
    const piecewise_solution& v = fam.approx;
    state z_alpha = z(w.alpha);

    error_budget b;
    b.nu = fam.nu;
    b.alpha_bar = fam.alpha_bar;
    b.j_exact = functional_value(w, model);
    b.j_approx = functional_value(v, model);
    double jw = modified_functional(w, z_alpha, model);
    double jv = modified_functional(v, z_alpha, model);
    b.modified_gap = jv - jw;
    pairing_result pr = residual_pairing(z, v, model);
    b.residual_term = pr.smooth;
    b.singular_term = pr.singular;
    b.internal_term = internal_term(z_alpha, w, model);
    b.defect = b.modified_gap - b.residual_term - b.alpha_bar * b.internal_term;
    return b;
}

ibc_report viscous_ibc_residual(const field_solution& primal, const adjoint_solution& adj,
                                const transition_region& region, const model_spec& model) {
    const int nn = primal.g.nodes();
    if (adj.g.nodes() != nn || adj.d != primal.d)
        throw std::runtime_error("primal and adjoint discretizations do not match");
    std::vector<double> pw(static_cast<std::size_t>(nn)), zs(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) {
        state wi = primal.at(i);
        pw[i] = model.target_integrand(wi);
        zs[i] = dot(adj.at(i), model.source(primal.g.x[i], wi));
    }
    ibc_report rep;
    rep.epsilon = primal.epsilon;
    rep.viscous_residual = smooth_jump(primal, pw, region) - smooth_jump(primal, zs, region);

    auto pairing_at = [&](int i) {
        double s = 0.0;
        for (int c = 0; c < primal.d; ++c) {
            double wx = (primal.values[static_cast<std::size_t>(i + 1) * primal.d + c] -
                         primal.values[static_cast<std::size_t>(i - 1) * primal.d + c]) /
                        (2.0 * primal.g.h);
            double zx = (adj.values[static_cast<std::size_t>(i + 1) * adj.d + c] -
                         adj.values[static_cast<std::size_t>(i - 1) * adj.d + c]) /
                        (2.0 * adj.g.h);
            s += zx * wx;
        }
        return s;
    };
    rep.endpoint_form = -primal.epsilon * (pairing_at(region.i_plus) - pairing_at(region.i_minus));
    rep.gap = std::abs(rep.viscous_residual - rep.endpoint_form);
    if (model.geometry) rep.z2_gap = euler_ibc_check(adj, region, *model.geometry);
    return rep;
}

double euler_ibc_check(const adjoint_solution& adj, const transition_region& region,
                       const nozzle_geometry& geom) {
    if (adj.d != 3) throw std::runtime_error("momentum-adjoint check requires the Euler model");
    double ap = geom.area_derivative(region.alpha_hat);
    if (std::abs(ap) < 1e-8)
        throw std::runtime_error("area derivative vanishes at the detected shock position");
    double z2 = adj.value(region.alpha_hat)[1];
    return z2 + geom.area(region.alpha_hat) / ap;
}

fit_result fit_convergence_rate(const std::vector<std::pair<double, double>>& eps_value) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [eps, val] : eps_value) {
        if (!(eps > 0.0)) throw std::runtime_error("convergence fit: epsilon must be positive");
        if (val == 0.0) {
            std::cerr << "note: excluding exactly-zero value at epsilon = " << eps
                      << " from the convergence fit\n";
            continue;
        }
        pts.emplace_back(std::log10(eps), std::log10(std::abs(val)));
    }
    if (pts.size() < 3)
        throw std::runtime_error("convergence fit needs at least 3 nonzero points, got " +
                                 std::to_string(pts.size()));
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    double n = static_cast<double>(pts.size());
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    fit_result f;
    f.points_used = static_cast<int>(pts.size());
    double vxx = sxx - sx * sx / n, vxy = sxy - sx * sy / n, vyy = syy - sy * sy / n;
    f.slope = vxy / vxx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return f;
}

}  // namespace sadj
