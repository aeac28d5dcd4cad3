#ifndef RMLMC_MESH_HPP
#define RMLMC_MESH_HPP

#include <cmath>
#include <stdexcept>

namespace rmlmc {

// Uniform mesh on [0,1] at resolution `level`; the actual dyadic exponent is
// level + offset, so width = 2^-(level+offset).
struct MeshLevel {
    int level = 0;
    int offset = 3;
    double width = 0.125;
    int interior_nodes = 7;

    double node(int i) const { return width * (i + 1); }  // i in [0, interior_nodes)
};

inline MeshLevel build_mesh(int level, int offset) {
    if (level < 0 || offset < 0) throw std::invalid_argument("build_mesh: level and offset must be >= 0");
    if (level + offset > 30) throw std::invalid_argument("build_mesh: level+offset > 30 exceeds mesh guard");
    MeshLevel m;
    m.level = level;
    m.offset = offset;
    m.interior_nodes = (1 << (level + offset)) - 1;
    m.width = std::ldexp(1.0, -(level + offset));
    return m;
}

}  // namespace rmlmc

#endif
