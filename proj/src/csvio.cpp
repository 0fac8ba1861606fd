#include "sadj/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sadj {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path, std::ios::binary);  // binary: no platform newline translation
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        f << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::runtime_error("csv row width mismatch in " + path);
        for (std::size_t c = 0; c < row.size(); ++c)
            f << format_full(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
    if (!f) throw std::runtime_error("write failure on " + path);
}

}  // namespace sadj
