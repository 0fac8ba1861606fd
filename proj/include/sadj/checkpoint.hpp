/** \file checkpoint.hpp
    \brief Binary field snapshots: magic "SAJ1", u32 node count, u32 components,
           f64 viscosity, f64 node coordinates, f64 values row-major.
*/
#pragma once

#include <string>

#include "sadj/viscous.hpp"

namespace sadj {

void save_checkpoint(const std::string& path, const field_solution& sol);
field_solution load_checkpoint(const std::string& path);

}  // namespace sadj
