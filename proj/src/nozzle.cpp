/** \file nozzle.cpp
    \brief Exact transonic nozzle flow with a normal shock.

    The area-Mach relation is inverted through the sonic point in a
    square-root normal form sigma(y) = sign(y)*sqrt(AM(1+y)-1), whose slope is
    bounded away from zero at y = 0; near the throat AM(1+y)-1 is evaluated by
    a quartic Taylor polynomial to avoid cancellation. Branch derivatives are
    analytic (dw/dM times dM/dx), so exact-solution residuals are limited only
    by rounding.
*/
#include <cmath>
#include <stdexcept>
#include <string>

#include "sadj/euler.hpp"
#include "sadj/model.hpp"
#include "sadj/piecewise.hpp"
#include "sadj/state.hpp"

namespace sadj {
namespace {

// Taylor coefficients of AM(1+y) - 1 = y^2 (q2 + q3 y + q4 y^2 + q5 y^3) + O(y^6)
struct am_series {
    double q2, q3, q4, q5;
    explicit am_series(double g) {
        double gp = g + 1.0;
        q2 = 2.0 / gp;
        q3 = -2.0 * (5.0 * g - 3.0) / (3.0 * gp * gp);
        q4 = (9.0 * g * g - 10.0 * g + 13.0) / (2.0 * gp * gp * gp);
        q5 = -4.0 * (21.0 * g * g * g - 35.0 * g * g + 91.0 * g - 45.0) / (15.0 * gp * gp * gp * gp);
    }
};

double area_mach(double m, double g) {
    double e = 0.5 * (g + 1.0) / (g - 1.0);
    return (1.0 / m) * std::pow((2.0 / (g + 1.0)) * (1.0 + 0.5 * (g - 1.0) * m * m), e);
}

// AM(1+y) - 1, cancellation-safe near y = 0
double am_excess(double y, double g) {
    if (std::abs(y) < 1e-4) {
        am_series q(g);
        return y * y * (q.q2 + y * (q.q3 + y * (q.q4 + y * q.q5)));
    }
    return area_mach(1.0 + y, g) - 1.0;
}

// d/dy [AM(1+y) - 1]
double am_excess_derivative(double y, double g) {
    if (std::abs(y) < 1e-4) {
        am_series q(g);
        return y * (2.0 * q.q2 + y * (3.0 * q.q3 + y * (4.0 * q.q4 + y * 5.0 * q.q5)));
    }
    double m = 1.0 + y;
    double grow = 1.0 + 0.5 * (g - 1.0) * m * m;
    return area_mach(m, g) * (-1.0 / m + 0.5 * (g + 1.0) * m / grow);
}

double sigma(double y, double g) {
    if (std::abs(y) < 1e-4) {
        am_series q(g);
        return y * std::sqrt(q.q2 + y * (q.q3 + y * (q.q4 + y * q.q5)));
    }
    double e = am_excess(y, g);
    return (y < 0.0 ? -1.0 : 1.0) * std::sqrt(std::max(e, 0.0));
}

double sigma_derivative(double y, double g) {
    if (std::abs(y) < 1e-4) {
        am_series q(g);
        double poly = q.q2 + y * (q.q3 + y * (q.q4 + y * q.q5));
        double dpoly = q.q3 + y * (2.0 * q.q4 + y * 3.0 * q.q5);
        double s = std::sqrt(poly);
        return s + 0.5 * y * dpoly / s;
    }
    return 0.5 * am_excess_derivative(y, g) / sigma(y, g);
}

// Invert AM(M) = a on the requested branch; a is clamped to [1, inf).
double solve_mach(double a, bool supersonic, double g) {
    a = std::max(a, 1.0);
    am_series q(g);
    double t = (supersonic ? 1.0 : -1.0) * std::sqrt(a - 1.0);
    double lo, hi;
    if (supersonic) {
        lo = 0.0;
        hi = 0.5;
        while (sigma(hi, g) < t) {
            hi *= 2.0;
            if (hi > 1e6) throw std::runtime_error("area ratio out of range for Mach inversion");
        }
    } else {
        hi = 0.0;
        lo = -0.5;
        while (sigma(lo, g) > t) {
            lo = -1.0 + 0.5 * (1.0 + lo);
            if (1.0 + lo < 1e-12)
                throw std::runtime_error("area ratio out of range for Mach inversion");
        }
    }
    double y = t / std::sqrt(q.q2);
    y = std::min(std::max(y, lo), hi);
    for (int it = 0; it < 100; ++it) {
        double f = sigma(y, g) - t;
        if (f > 0.0) hi = y; else lo = y;
        if (std::abs(f) <= 1e-15 * (1.0 + std::abs(t))) break;
        double step = f / sigma_derivative(y, g);
        double ynew = y - step;
        if (!(ynew > lo && ynew < hi)) ynew = 0.5 * (lo + hi);
        if (ynew == y) break;
        y = ynew;
    }
    return 1.0 + y;
}

state state_from_mach(double m, double p0, double rho0, double g) {
    double grow = 1.0 + 0.5 * (g - 1.0) * m * m;
    double p = p0 * std::pow(grow, -g / (g - 1.0));
    double rho = rho0 * std::pow(grow, -1.0 / (g - 1.0));
    double c = std::sqrt(g * p / rho);
    double u = m * c;
    return state(rho, rho * u, p / (g - 1.0) + 0.5 * rho * u * u);
}

state dstate_dmach(double m, double p0, double rho0, double g) {
    double grow = 1.0 + 0.5 * (g - 1.0) * m * m;
    double p = p0 * std::pow(grow, -g / (g - 1.0));
    double rho = rho0 * std::pow(grow, -1.0 / (g - 1.0));
    double c = std::sqrt(g * p / rho);
    double u = m * c;
    double drho = -rho * m / grow;
    double du = c / grow;
    double dp = -g * p * m / grow;
    double de = dp / (g - 1.0) + 0.5 * u * u * drho + rho * u * du;
    return state(drho, rho * du + u * drho, de);
}

struct branch_params {
    double p0, rho0, astar;
    double x_throat;      // only the transonic branch crosses it
    bool transonic;
};

double mach_at(double x, const branch_params& bp, const nozzle_geometry& geom, double g) {
    bool supersonic = bp.transonic && x >= bp.x_throat;
    return solve_mach(geom.area(x) / bp.astar, supersonic, g);
}

double area_second_at(double x, const nozzle_geometry& geom) {
    if (geom.area_second) return geom.area_second(x);
    double d = std::min({1e-3, x > 0.0 ? x : 1e-3, x < 1.0 ? 1.0 - x : 1e-3});
    auto slope = [&](double dd) {
        return (geom.area_derivative(x + dd) - geom.area_derivative(x - dd)) / (2.0 * dd);
    };
    return (4.0 * slope(0.5 * d) - slope(d)) / 3.0;  // Richardson-extrapolated
}

state branch_derivative(double x, const branch_params& bp, const nozzle_geometry& geom, double g) {
    double m = mach_at(x, bp, geom, g);
    double y = m - 1.0;
    double dmdx;
    if (std::abs(y) < 1e-7) {
        am_series q(g);
        double a2 = area_second_at(x, geom) / bp.astar;
        dmdx = std::sqrt(std::max(a2, 0.0) / (2.0 * q.q2));
    } else {
        dmdx = (geom.area_derivative(x) / bp.astar) / am_excess_derivative(y, g);
    }
    return dmdx * dstate_dmach(m, bp.p0, bp.rho0, g);
}

struct nozzle_setup {
    double x_throat, astar1, p01, rho01, h0;
};

nozzle_setup compute_setup(const nozzle_geometry& geom, const boundary_data& bd,
                           const euler_params& par) {
    if (!(bd.inflow_enthalpy > 0.0))
        throw std::runtime_error("nozzle boundary data: inflow total enthalpy must be positive");
    // interior area minimum
    const int m = 2000;
    int imin = 1;
    double amin = 1e300;
    for (int i = 0; i <= m; ++i) {
        double a = geom.area(static_cast<double>(i) / m);
        if (a < amin) { amin = a; imin = i; }
    }
    if (imin == 0 || imin == m)
        throw std::runtime_error("nozzle geometry: no interior throat (area minimum on boundary)");
    double lo = static_cast<double>(imin - 1) / m, hi = static_cast<double>(imin + 1) / m;
    if (!(geom.area_derivative(lo) < 0.0 && geom.area_derivative(hi) > 0.0))
        throw std::runtime_error("nozzle geometry: throat is not a simple area minimum");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        (geom.area_derivative(mid) < 0.0 ? lo : hi) = mid;
    }
    nozzle_setup s;
    s.x_throat = 0.5 * (lo + hi);
    s.astar1 = geom.area(s.x_throat);
    s.h0 = bd.inflow_enthalpy;
    double g = par.gamma;
    double k = std::exp((bd.inflow_entropy - par.alpha1) / par.alpha0);  // p / rho^gamma
    s.rho01 = std::pow(s.h0 * (g - 1.0) / (g * k), 1.0 / (g - 1.0));
    s.p01 = k * std::pow(s.rho01, g);
    return s;
}

struct shock_state {
    double m1, m2, p02, rho02, astar2;
};

shock_state normal_shock(double alpha, const nozzle_setup& s, const nozzle_geometry& geom,
                         double g) {
    shock_state sh;
    sh.m1 = solve_mach(geom.area(alpha) / s.astar1, true, g);
    double m1sq = sh.m1 * sh.m1;
    sh.m2 = std::sqrt((1.0 + 0.5 * (g - 1.0) * m1sq) / (g * m1sq - 0.5 * (g - 1.0)));
    double r1 = ((g + 1.0) * m1sq) / ((g - 1.0) * m1sq + 2.0);
    double r2 = (g + 1.0) / (2.0 * g * m1sq - (g - 1.0));
    sh.p02 = s.p01 * std::pow(r1, g / (g - 1.0)) * std::pow(r2, 1.0 / (g - 1.0));
    sh.astar2 = s.astar1 * s.p01 / sh.p02;
    sh.rho02 = g * sh.p02 / ((g - 1.0) * s.h0);
    return sh;
}

double exit_pressure(double alpha, const nozzle_setup& s, const nozzle_geometry& geom,
                     const euler_params& par) {
    double g = par.gamma;
    shock_state sh = normal_shock(alpha, s, geom, g);
    double me = solve_mach(geom.area(1.0) / sh.astar2, false, g);
    double grow = 1.0 + 0.5 * (g - 1.0) * me * me;
    return sh.p02 * std::pow(grow, -g / (g - 1.0));
}

}  // namespace

double nozzle_exit_pressure(double alpha, const nozzle_geometry& geom, const boundary_data& bd,
                            const euler_params& par) {
    nozzle_setup s = compute_setup(geom, bd, par);
    return exit_pressure(alpha, s, geom, par);
}

double nozzle_shock_position(const nozzle_geometry& geom, const boundary_data& bd,
                             const euler_params& par) {
    if (!(bd.outflow_pressure > 0.0))
        throw std::runtime_error("nozzle boundary data: outflow pressure must be positive");
    nozzle_setup s = compute_setup(geom, bd, par);
    double target = bd.outflow_pressure;
    double lo = s.x_throat + 1e-6, hi = 1.0;
    double flo = exit_pressure(lo, s, geom, par) - target;
    double fhi = exit_pressure(hi, s, geom, par) - target;
    if (flo * fhi > 0.0)
        throw std::runtime_error(
            "no transonic shock solution: outflow pressure " + std::to_string(target) +
            " outside attainable range [" + std::to_string(target + fhi) + ", " +
            std::to_string(target + flo) + "]");
    double alpha = 0.5 * (lo + hi), f = 0.0;
    for (int it = 0; it < 200; ++it) {
        alpha = 0.5 * (lo + hi);
        f = exit_pressure(alpha, s, geom, par) - target;
        if (std::abs(f) <= 1e-13 || hi - lo < 1e-15) break;
        if (f * flo > 0.0) { lo = alpha; flo = f; } else { hi = alpha; }
    }
    if (std::abs(f) > 1e-12)
        throw std::runtime_error("shock position bisection stalled: exit pressure defect " +
                                 std::to_string(f));
    if (alpha < s.x_throat + 1e-5)
        throw std::runtime_error("degenerate configuration: shock collapses onto the throat");
    if (alpha > 1.0 - 1e-5)
        throw std::runtime_error("degenerate configuration: shock sits on the outflow boundary");
    return alpha;
}

piecewise_solution nozzle_exact_solution(const nozzle_geometry& geom, const boundary_data& bd,
                                         const euler_params& par) {
    nozzle_setup s = compute_setup(geom, bd, par);
    double alpha = nozzle_shock_position(geom, bd, par);
    double g = par.gamma;
    shock_state sh = normal_shock(alpha, s, geom, g);

    branch_params left{s.p01, s.rho01, s.astar1, s.x_throat, true};
    branch_params right{sh.p02, sh.rho02, sh.astar2, -1.0, false};

    piecewise_solution w;
    w.d = 3;
    w.alpha = alpha;
    w.left = [left, geom, g](double x) {
        return state_from_mach(mach_at(x, left, geom, g), left.p0, left.rho0, g);
    };
    w.right = [right, geom, g](double x) {
        return state_from_mach(mach_at(x, right, geom, g), right.p0, right.rho0, g);
    };
    w.left_dx = [left, geom, g](double x) { return branch_derivative(x, left, geom, g); };
    w.right_dx = [right, geom, g](double x) { return branch_derivative(x, right, geom, g); };
    return w;
}

}  // namespace sadj
