/** \file state.hpp
    \brief Small fixed-capacity state vectors and square blocks (d <= 3).
*/
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace sadj {

// Conserved-variable vector at a point; d = 1 (scalar law) or 3 (Euler).
struct state {
    int d = 1;
    std::array<double, 3> v{0.0, 0.0, 0.0};

    state() = default;
    explicit state(double a) : d(1), v{a, 0.0, 0.0} {}
    state(double a, double b, double c) : d(3), v{a, b, c} {}
    static state zero(int dim) {
        state s;
        s.d = dim;
        return s;
    }

    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    state& operator+=(const state& o) {
        for (int i = 0; i < d; ++i) v[i] += o.v[i];
        return *this;
    }
    state& operator-=(const state& o) {
        for (int i = 0; i < d; ++i) v[i] -= o.v[i];
        return *this;
    }
    state& operator*=(double c) {
        for (int i = 0; i < d; ++i) v[i] *= c;
        return *this;
    }
};

inline state operator+(state a, const state& b) { return a += b; }
inline state operator-(state a, const state& b) { return a -= b; }
inline state operator*(double c, state a) { return a *= c; }

inline double dot(const state& a, const state& b) {
    double s = 0.0;
    for (int i = 0; i < a.d; ++i) s += a[i] * b[i];
    return s;
}

inline double max_abs(const state& a) {
    double m = 0.0;
    for (int i = 0; i < a.d; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

// Dense d x d block, row-major.
struct dmat {
    int d = 1;
    std::array<double, 9> a{};

    dmat() = default;
    explicit dmat(int dim) : d(dim) { a.fill(0.0); }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * d + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * d + j)]; }
};

inline state operator*(const dmat& m, const state& x) {
    state y = state::zero(m.d);
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) y[i] += m(i, j) * x[j];
    return y;
}

// y = m^T x
inline state mult_transpose(const dmat& m, const state& x) {
    state y = state::zero(m.d);
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) y[j] += m(i, j) * x[i];
    return y;
}

// outer product a b^T
inline dmat outer(const state& a, const state& b) {
    dmat m(a.d);
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j) m(i, j) = a[i] * b[j];
    return m;
}

}  // namespace sadj
