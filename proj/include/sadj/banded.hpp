/** \file banded.hpp
    \brief Banded LU with partial pivoting and one step of iterative refinement.

    Row-major band storage: row i keeps columns j with j-i in [-kl, ku+kl];
    the extra kl superdiagonals hold fill generated by row swaps. Assembly
    must stay within [-kl, ku].
*/
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sadj {

struct banded_matrix {
    int n = 0;
    int kl = 0;
    int ku = 0;
    int ldab = 0;
    std::vector<double> ab;

    banded_matrix() = default;
    banded_matrix(int n_, int kl_, int ku_)
        : n(n_), kl(kl_), ku(ku_), ldab(2 * kl_ + ku_ + 1),
          ab(static_cast<std::size_t>(n_) * static_cast<std::size_t>(2 * kl_ + ku_ + 1), 0.0) {}

    double& at(int i, int j) { return ab[static_cast<std::size_t>(i) * ldab + (j - i + kl)]; }
    double get(int i, int j) const {
        int off = j - i + kl;
        if (off < 0 || off >= ldab || j < 0 || j >= n) return 0.0;
        return ab[static_cast<std::size_t>(i) * ldab + off];
    }
};

// y = A x using only the assembled band [-kl, ku].
inline std::vector<double> banded_matvec(const banded_matrix& a, const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(a.n), 0.0);
    for (int i = 0; i < a.n; ++i) {
        double s = 0.0;
        int j0 = std::max(0, i - a.kl);
        int j1 = std::min(a.n - 1, i + a.ku);
        for (int j = j0; j <= j1; ++j) s += a.get(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// max row sum over the assembled band
inline double banded_norm_inf(const banded_matrix& a) {
    double nrm = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double s = 0.0;
        int j0 = std::max(0, i - a.kl);
        int j1 = std::min(a.n - 1, i + a.ku);
        for (int j = j0; j <= j1; ++j) s += std::abs(a.get(i, j));
        nrm = std::max(nrm, s);
    }
    return nrm;
}

struct banded_lu {
    banded_matrix f;          // L (multipliers below diagonal) and U in band storage
    std::vector<int> pivot;   // row swapped with k at step k
};

inline banded_lu factor_banded(const banded_matrix& a0) {
    banded_lu lu;
    lu.f = a0;
    lu.pivot.assign(static_cast<std::size_t>(a0.n), 0);
    banded_matrix& a = lu.f;
    const int n = a.n, kl = a.kl, wid = a.ku + a.kl;
    double piv_min = 1e300, piv_max = 0.0;
    for (int k = 0; k < n; ++k) {
        int ilast = std::min(n - 1, k + kl);
        int p = k;
        double best = std::abs(a.at(k, k));
        for (int i = k + 1; i <= ilast; ++i) {
            double m = std::abs(a.at(i, k));
            if (m > best) { best = m; p = i; }
        }
        lu.pivot[k] = p;
        if (!(best > 0.0) || !std::isfinite(best))
            throw std::runtime_error(
                "singular banded system: pivot " + std::to_string(best) + " at row " +
                std::to_string(k) + " of " + std::to_string(n) +
                " (min/max pivot so far " + std::to_string(piv_min) + "/" + std::to_string(piv_max) + ")");
        piv_min = std::min(piv_min, best);
        piv_max = std::max(piv_max, best);
        int jlast = std::min(n - 1, k + wid);
        if (p != k)
            for (int j = k; j <= jlast; ++j) std::swap(a.at(k, j), a.at(p, j));
        double d = a.at(k, k);
        for (int i = k + 1; i <= ilast; ++i) {
            double m = a.at(i, k) / d;
            a.at(i, k) = m;
            if (m != 0.0)
                for (int j = k + 1; j <= jlast; ++j) a.at(i, j) -= m * a.at(k, j);
        }
    }
    return lu;
}

inline void solve_factored(const banded_lu& lu, std::vector<double>& b) {
    const banded_matrix& a = lu.f;
    const int n = a.n, kl = a.kl, wid = a.ku + a.kl;
    for (int k = 0; k < n; ++k) {
        int p = lu.pivot[k];
        if (p != k) std::swap(b[k], b[p]);
        int ilast = std::min(n - 1, k + kl);
        for (int i = k + 1; i <= ilast; ++i) b[i] -= a.get(i, k) * b[k];
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = b[k];
        int jlast = std::min(n - 1, k + wid);
        for (int j = k + 1; j <= jlast; ++j) s -= a.get(k, j) * b[j];
        b[k] = s / a.get(k, k);
    }
}

// Direct solve with one iterative-refinement pass (keeps residuals of the
// linear solve itself well below solver tolerances on ill-scaled systems).
inline std::vector<double> solve_banded(const banded_matrix& a, std::vector<double> b) {
    banded_lu lu = factor_banded(a);
    std::vector<double> rhs = b;
    solve_factored(lu, b);
    std::vector<double> ax = banded_matvec(a, b);
    std::vector<double> r(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ax[i];
    solve_factored(lu, r);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += r[i];
    return b;
}

}  // namespace sadj
