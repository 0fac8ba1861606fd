/** \file test_viscous_solver.cpp
    \brief Damped-Newton viscous solves: convergence, warm starts, layer
           detection, smooth jumps, conservation, grid refinement, snapshots.
*/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sadj/checkpoint.hpp"
#include "sadj/model.hpp"
#include "sadj/piecewise.hpp"
#include "sadj/viscous.hpp"

using namespace sadj;

namespace {

field_solution solve_scalar(double eps, const grid_policy& pol = grid_policy{}) {
    model_spec m = scalar_model();
    grid g = make_uniform_grid(cells_for(pol, eps));
    return solve_viscous_primal(m, g, eps);
}

}  // namespace

TEST_CASE("scalar viscous solve converges with pinned boundary values") {
    field_solution sol = solve_scalar(0.02);
    CHECK(sol.converged);
    CHECK(sol.residual_norm <= newton_tolerance);
    CHECK(sol.newton_iterations <= 10);
    CHECK(sol.at(0)[0] == 1.2);
    CHECK(sol.at(sol.g.nodes() - 1)[0] == -1.4);
    // interior stays between the far-field branch values
    for (int i = 1; i < sol.g.nodes() - 1; ++i) {
        CHECK(sol.at(i)[0] < 1.2 + 1e-12);
        CHECK(sol.at(i)[0] > -1.4 - 1e-12);
    }
}

TEST_CASE("re-solving from a converged state takes zero newton steps") {
    model_spec m = scalar_model();
    grid g = make_uniform_grid(cells_for(grid_policy{}, 0.02));
    field_solution first = solve_viscous_primal(m, g, 0.02);
    field_solution again = solve_viscous_primal(m, g, 0.02, &first);
    CHECK(again.converged);
    CHECK(again.newton_iterations == 0);
    CHECK(std::memcmp(again.values.data(), first.values.data(),
                      first.values.size() * sizeof(double)) == 0);
}

TEST_CASE("warm starts never cost more iterations than cold starts") {
    model_spec m = scalar_model();
    grid_policy pol;
    grid g1 = make_uniform_grid(cells_for(pol, 0.0125));
    grid g2 = make_uniform_grid(cells_for(pol, 0.01));
    field_solution coarse = solve_viscous_primal(m, g1, 0.0125);
    field_solution cold = solve_viscous_primal(m, g2, 0.01);
    field_solution warm_init = interpolate_onto(coarse, g2);
    warm_init.epsilon = 0.01;
    field_solution warm = solve_viscous_primal(m, g2, 0.01, &warm_init);
    CHECK(cold.converged);
    CHECK(warm.converged);
    CHECK(warm.newton_iterations <= cold.newton_iterations);
}

TEST_CASE("singleton continuation equals the direct cold solve bitwise") {
    model_spec m = scalar_model();
    grid_policy pol;
    std::vector<field_solution> sweep = continuation_sweep(m, pol, {0.02});
    REQUIRE(sweep.size() == 1);
    grid g = make_uniform_grid(cells_for(pol, 0.02));
    field_solution direct = solve_viscous_primal(m, g, 0.02);
    REQUIRE(sweep[0].values.size() == direct.values.size());
    CHECK(std::memcmp(sweep[0].values.data(), direct.values.data(),
                      direct.values.size() * sizeof(double)) == 0);
}

TEST_CASE("continuation sweep validates its epsilon list") {
    model_spec m = scalar_model();
    grid_policy pol;
    CHECK_THROWS_AS(continuation_sweep(m, pol, {}), std::runtime_error);
    CHECK_THROWS_AS(continuation_sweep(m, pol, {0.02, 0.02}), std::runtime_error);
    CHECK_THROWS_AS(continuation_sweep(m, pol, {0.01, 0.02}), std::runtime_error);
    CHECK_THROWS_AS(continuation_sweep(m, pol, {0.02, -0.01}), std::runtime_error);
}

TEST_CASE("layer center drifts toward the inviscid shock along the sweep") {
    model_spec m = scalar_model();
    grid_policy pol;
    std::vector<double> eps;
    for (int k = 0; k < 7; ++k) eps.push_back(0.05 / (1 << k));
    std::vector<field_solution> sweep = continuation_sweep(m, pol, eps);
    REQUIRE(sweep.size() == 7);
    double prev_drift = 1e300;
    std::vector<double> sharpness;
    for (const auto& sol : sweep) {
        REQUIRE(sol.converged);
        transition_region r = detect_transition_region_farfield(sol, 0.05);
        double drift = std::abs(r.alpha_hat - 0.4);
        CHECK(drift <= prev_drift + sol.g.h);  // non-increasing up to grid quantization
        prev_drift = drift;
        sharpness.push_back(r.max_gradient * sol.epsilon);
    }
    // gradient scales like 1/eps: eps-scaled peak stays within a fixed band
    double lo = sharpness[3], hi = sharpness[3];
    for (std::size_t k = sharpness.size() - 4; k < sharpness.size(); ++k) {
        lo = std::min(lo, sharpness[k]);
        hi = std::max(hi, sharpness[k]);
    }
    CHECK(hi / lo <= 3.0);
}

TEST_CASE("off-layer values converge to the inviscid branches") {
    model_spec m = scalar_model();
    grid_policy pol;
    const piecewise_solution& ex = *m.exact;
    std::vector<double> eps{0.05, 0.025, 0.0125, 0.00625};
    std::vector<field_solution> sweep = continuation_sweep(m, pol, eps);
    for (double xq : {0.2, 0.7}) {
        double prev = 1e300;
        for (const auto& sol : sweep) {
            int i = static_cast<int>(std::lround(xq / sol.g.h));
            double err = std::abs(sol.at(i)[0] - ex(sol.g.x[i])[0]);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-3);
    }
}

TEST_CASE("transition region: threshold limits and epsilon scaling") {
    field_solution sol = solve_scalar(0.0125);

    // near-unity threshold collapses the region onto the peak
    transition_region tight = detect_transition_region(sol, 0.999);
    CHECK(tight.x_plus - tight.x_minus <= 2.0 * sol.g.h + 1e-15);
    CHECK(tight.x_minus <= tight.alpha_hat);
    CHECK(tight.alpha_hat <= tight.x_plus);

    transition_region r = detect_transition_region(sol, 0.05);
    CHECK(r.x_minus < r.alpha_hat);
    CHECK(r.alpha_hat < r.x_plus);
    CHECK(std::abs(r.alpha_hat - 0.4) < 0.05);
    // layer peak gradient ~ (half-jump)^2 / (2 eps) = 0.32/eps
    CHECK(r.max_gradient > 0.25 / sol.epsilon);
    CHECK(r.max_gradient < 0.40 / sol.epsilon);

    // relative-threshold width scales linearly with epsilon (theta large
    // enough that the threshold stays above the smooth branch slope of 1)
    double widths[3];
    double epss[3] = {0.05, 0.025, 0.0125};
    for (int k = 0; k < 3; ++k) {
        field_solution s = solve_scalar(epss[k]);
        transition_region rk = detect_transition_region(s, 0.3);
        widths[k] = (rk.x_plus - rk.x_minus) / epss[k];
    }
    for (int k = 1; k < 3; ++k) {
        CHECK(widths[k] / widths[0] < 2.0);
        CHECK(widths[0] / widths[k] < 2.0);
    }

    CHECK_THROWS_AS(detect_transition_region(sol, 0.0), std::runtime_error);
    CHECK_THROWS_AS(detect_transition_region(sol, 1.0), std::runtime_error);
}

TEST_CASE("far-field rule finds the same peak with eps-independent edges") {
    field_solution sol = solve_scalar(0.0125);
    transition_region rel = detect_transition_region(sol, 0.05);
    transition_region far = detect_transition_region_farfield(sol, 0.05);
    CHECK(far.alpha_hat == rel.alpha_hat);
    CHECK(far.max_gradient == rel.max_gradient);
    CHECK(far.x_minus < far.alpha_hat);
    CHECK(far.alpha_hat < far.x_plus);
    // far-field edge threshold is order-unity, not order 1/eps
    CHECK(far.edge_scale < 0.1 * rel.max_gradient);
    CHECK(far.edge_scale > 0.5);
}

TEST_CASE("profiles without an interior layer are rejected") {
    field_solution flat;
    flat.g = make_uniform_grid(64);
    flat.d = 1;
    flat.epsilon = 0.01;
    flat.values.resize(65);
    for (int i = 0; i <= 64; ++i) flat.values[i] = flat.g.x[i] * flat.g.x[i];
    CHECK_THROWS_WITH_AS(detect_transition_region(flat, 0.05),
                         doctest::Contains("no interior transition layer"), std::runtime_error);
}

TEST_CASE("smooth jump telescopes to the interpolant endpoint difference") {
    grid g = make_uniform_grid(64);
    std::vector<double> q(65);
    for (int i = 0; i <= 64; ++i) q[i] = g.x[i] * g.x[i];

    // on-grid endpoints: nodal values are hit exactly
    double j1 = smooth_jump(g, q, 0.25, 0.75);
    CHECK(j1 == doctest::Approx(0.5625 - 0.0625).epsilon(1e-14));

    // off-grid endpoints: equals the linear interpolant difference
    auto interp = [&](double x) {
        int j = std::min(static_cast<int>(x / g.h), g.n - 1);
        double loc = x / g.h - j;
        return q[j] + loc * (q[j + 1] - q[j]);
    };
    double j2 = smooth_jump(g, q, 0.21, 0.77);
    CHECK(j2 == doctest::Approx(interp(0.77) - interp(0.21)).epsilon(1e-13));

    CHECK_THROWS_AS(smooth_jump(g, q, 0.8, 0.2), std::runtime_error);
    CHECK_THROWS_AS(smooth_jump(g, q, -0.1, 0.5), std::runtime_error);

    // region overload matches the explicit-endpoint overload
    field_solution sol = solve_scalar(0.0125);
    transition_region r = detect_transition_region(sol, 0.05);
    std::vector<double> w0 = sol.component(0);
    CHECK(smooth_jump(sol, w0, r) ==
          doctest::Approx(smooth_jump(sol.g, w0, r.x_minus, r.x_plus)).epsilon(1e-15));
}

TEST_CASE("discrete conservation drift stays near solver tolerance") {
    field_solution sol = solve_scalar(0.02);
    model_spec m = scalar_model();
    double drift = conservation_drift(m, sol);
    CHECK(drift >= 0.0);
    CHECK(drift <= 10.0 * newton_tolerance);
}

TEST_CASE("grid halving converges at second order") {
    model_spec m = scalar_model();
    const double eps = 0.01;
    grid_policy p8, p16, p32;
    p8.kappa = 8.0;
    p16.kappa = 16.0;
    p32.kappa = 32.0;
    field_solution s8 = solve_viscous_primal(m, make_uniform_grid(cells_for(p8, eps)), eps);
    field_solution s16 = solve_viscous_primal(m, make_uniform_grid(cells_for(p16, eps)), eps);
    field_solution s32 = solve_viscous_primal(m, make_uniform_grid(cells_for(p32, eps)), eps);
    REQUIRE(s8.converged);
    REQUIRE(s16.converged);
    REQUIRE(s32.converged);
    // successive-difference Richardson: d_h = max |w_h - w_{h/2}| on shared
    // nodes scales like h^p, so log2 of the ratio estimates the order p
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < s8.g.nodes(); ++i)
        d1 = std::max(d1, std::abs(s8.at(i)[0] - s16.at(2 * i)[0]));
    for (int i = 0; i < s16.g.nodes(); ++i)
        d2 = std::max(d2, std::abs(s16.at(i)[0] - s32.at(2 * i)[0]));
    double order = std::log2(d1 / d2);
    CHECK(order >= 1.7);
    CHECK(order <= 2.3);
}

TEST_CASE("under-resolved grids warn but proceed") {
    model_spec m = scalar_model();
    grid_policy coarse;
    coarse.kappa = 3.0;
    grid g = make_uniform_grid(cells_for(coarse, 0.01));
    std::ostringstream captured;
    std::streambuf* old = std::cerr.rdbuf(captured.rdbuf());
    field_solution sol = solve_viscous_primal(m, g, 0.01);
    std::cerr.rdbuf(old);
    CHECK(captured.str().find("layer under-resolved") != std::string::npos);
    CHECK(sol.converged);
}

TEST_CASE("checkpoints restore fields bitwise") {
    field_solution sol = solve_scalar(0.02);
    const std::string path = "test_viscous_checkpoint.sadj";
    save_checkpoint(path, sol);
    field_solution back = load_checkpoint(path);
    CHECK(back.d == sol.d);
    CHECK(back.epsilon == sol.epsilon);
    CHECK(back.g.nodes() == sol.g.nodes());
    CHECK(back.converged);
    REQUIRE(back.values.size() == sol.values.size());
    CHECK(std::memcmp(back.values.data(), sol.values.data(),
                      sol.values.size() * sizeof(double)) == 0);
    std::remove(path.c_str());

    std::ofstream bad("test_viscous_bad.sadj", std::ios::binary);
    bad << "NOPE";
    bad.close();
    CHECK_THROWS_AS(load_checkpoint("test_viscous_bad.sadj"), std::runtime_error);
    std::remove("test_viscous_bad.sadj");
    CHECK_THROWS_AS(load_checkpoint("test_viscous_missing.sadj"), std::runtime_error);
}

TEST_CASE("initialization requires an exact reference profile") {
    model_spec m = scalar_model();
    m.exact = nullptr;
    grid g = make_uniform_grid(64);
    CHECK_THROWS_WITH_AS(mollified_initial_guess(m, g, 0.05),
                         doctest::Contains("exact reference"), std::runtime_error);
}

TEST_CASE("interpolation onto a finer grid is exact for linear data") {
    field_solution src;
    src.g = make_uniform_grid(32);
    src.d = 3;
    src.epsilon = 0.01;
    src.values.resize(33 * 3);
    for (int i = 0; i <= 32; ++i) {
        double x = src.g.x[i];
        src.set(i, state(1.0 + x, -2.0 * x, 0.5 * x + 3.0));
    }
    grid fine = make_uniform_grid(128);
    field_solution out = interpolate_onto(src, fine);
    CHECK(out.d == 3);
    CHECK(out.g.nodes() == 129);
    for (int i = 0; i <= 128; ++i) {
        double x = fine.x[i];
        CHECK(out.at(i)[0] == doctest::Approx(1.0 + x).epsilon(1e-14));
        CHECK(out.at(i)[1] == doctest::Approx(-2.0 * x).epsilon(1e-14));
        CHECK(out.at(i)[2] == doctest::Approx(0.5 * x + 3.0).epsilon(1e-14));
    }
}

TEST_CASE("viscosity must be positive") {
    model_spec m = scalar_model();
    grid g = make_uniform_grid(64);
    CHECK_THROWS_AS(solve_viscous_primal(m, g, 0.0), std::runtime_error);
    CHECK_THROWS_AS(solve_viscous_primal(m, g, -0.01), std::runtime_error);
}
