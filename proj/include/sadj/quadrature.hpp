/** \file quadrature.hpp
    \brief Adaptive Gauss-Kronrod integration of smooth segments.
*/
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <functional>

namespace sadj {

inline double integrate_segment(const std::function<double(double)>& f, double a, double b,
                                double tol = 1e-12) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol);
}

}  // namespace sadj
