#include "sadj/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sadj {

namespace {
constexpr char magic[4] = {'S', 'A', 'J', '1'};
}

void save_checkpoint(const std::string& path, const field_solution& sol) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::uint32_t nn = static_cast<std::uint32_t>(sol.g.nodes());
    std::uint32_t d = static_cast<std::uint32_t>(sol.d);
    f.write(magic, 4);
    f.write(reinterpret_cast<const char*>(&nn), 4);
    f.write(reinterpret_cast<const char*>(&d), 4);
    f.write(reinterpret_cast<const char*>(&sol.epsilon), 8);
    f.write(reinterpret_cast<const char*>(sol.g.x.data()), static_cast<std::streamsize>(8 * nn));
    f.write(reinterpret_cast<const char*>(sol.values.data()),
            static_cast<std::streamsize>(8 * sol.values.size()));
    if (!f) throw std::runtime_error("write failure on " + path);
}

field_solution load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
    char head[4];
    f.read(head, 4);
    if (!f || std::memcmp(head, magic, 4) != 0)
        throw std::runtime_error("not a field checkpoint: " + path);
    std::uint32_t nn = 0, d = 0;
    double eps = 0.0;
    f.read(reinterpret_cast<char*>(&nn), 4);
    f.read(reinterpret_cast<char*>(&d), 4);
    f.read(reinterpret_cast<char*>(&eps), 8);
    if (!f || nn < 2 || d < 1 || d > 3)
        throw std::runtime_error("corrupt checkpoint header: " + path);
    field_solution sol;
    sol.d = static_cast<int>(d);
    sol.epsilon = eps;
    sol.g.n = static_cast<int>(nn) - 1;
    sol.g.h = 1.0 / sol.g.n;
    sol.g.x.resize(nn);
    sol.values.resize(static_cast<std::size_t>(nn) * d);
    f.read(reinterpret_cast<char*>(sol.g.x.data()), static_cast<std::streamsize>(8 * nn));
    f.read(reinterpret_cast<char*>(sol.values.data()),
           static_cast<std::streamsize>(8 * sol.values.size()));
    if (!f) throw std::runtime_error("truncated checkpoint: " + path);
    sol.converged = true;  // only converged fields are checkpointed
    return sol;
}

}  // namespace sadj
