/** \file grid.hpp
    \brief Uniform grids on [0,1].
*/
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sadj {

// Uniform grid with n cells (n+1 nodes) on [0,1].
struct grid {
    int n = 0;
    double h = 0.0;
    std::vector<double> x;

    int nodes() const { return n + 1; }
};

inline grid make_uniform_grid(int n_cells) {
    if (n_cells < 16) throw std::runtime_error("grid too coarse: need at least 16 cells");
    grid g;
    g.n = n_cells;
    g.h = 1.0 / n_cells;
    g.x.resize(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) g.x[i] = static_cast<double>(i) / n_cells;
    g.x.back() = 1.0;
    return g;
}

}  // namespace sadj
