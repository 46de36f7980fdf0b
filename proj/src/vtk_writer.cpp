#include "augury/vtk_writer.hpp"

#include <cstdio>

namespace augury {

void write_snapshot(const SimState& state, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
        throw InvalidInput("cannot open snapshot file " + path);
    }

    const std::size_t n_nodes = state.x.size();
    const std::size_t n_tets = state.mesh.tets.size();

    std::fputs("# vtk DataFile Version 3.0\n", f);
    std::fprintf(f, "step %lld time %.17g\n", static_cast<long long>(state.step_count),
                 state.time);
    std::fputs("ASCII\nDATASET UNSTRUCTURED_GRID\n", f);

    std::fprintf(f, "POINTS %zu double\n", n_nodes);
    for (const Vec3& p : state.x) {
        std::fprintf(f, "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    }

    std::fprintf(f, "CELLS %zu %zu\n", n_tets, 5 * n_tets);
    for (const auto& t : state.mesh.tets) {
        std::fprintf(f, "4 %d %d %d %d\n", t[0], t[1], t[2], t[3]);
    }
    std::fprintf(f, "CELL_TYPES %zu\n", n_tets);
    for (std::size_t e = 0; e < n_tets; ++e) {
        std::fputs("10\n", f);
    }

    std::fprintf(f, "POINT_DATA %zu\n", n_nodes);
    std::fputs("VECTORS velocity double\n", f);
    for (const Vec3& v : state.v) {
        std::fprintf(f, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
    }
    std::fputs("SCALARS body_id int 1\nLOOKUP_TABLE default\n", f);
    for (int id : state.mesh.body_id) {
        std::fprintf(f, "%d\n", id);
    }

    if (std::fclose(f) != 0) {
        throw InvalidInput("failed writing snapshot file " + path);
    }
}

}  // namespace augury
