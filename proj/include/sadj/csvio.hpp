/** \file csvio.hpp
    \brief Deterministic CSV output with 17 significant digits.
*/
#pragma once

#include <string>
#include <vector>

namespace sadj {

// shortest-round-trip style fixed formatting: %.17g
std::string format_full(double x);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace sadj
