#include "sadj/piecewise.hpp"

namespace sadj {

state rankine_hugoniot_residual(const state& w_minus, const state& w_plus,
                                const model_spec& model) {
    return model.flux(w_plus) - model.flux(w_minus);
}

piecewise_solution manufactured_scalar_solution() {
    piecewise_solution w;
    w.d = 1;
    w.alpha = 0.4;
    w.left = [](double x) { return state(1.2 - x); };
    w.right = [](double x) { return state(-0.4 - x); };
    w.left_dx = [](double) { return state(-1.0); };
    w.right_dx = [](double) { return state(-1.0); };
    return w;
}

}  // namespace sadj
