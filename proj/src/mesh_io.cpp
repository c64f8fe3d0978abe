#include <iomanip>
#include <ostream>

#include "rswlu/mesh.hpp"

namespace rswlu {

void write_mesh_text(const Mesh& m, std::ostream& os) {
    os << "SPHEROMESH v1\n";
    os << std::setprecision(17);
    os << "level " << m.refinement_level << "\n";
    os << "radius " << m.radius << "\n";
    os << "counts " << m.n_cells << " " << m.n_edges << " " << m.n_duals << "\n";

    os << "cells\n";
    for (int c = 0; c < m.n_cells; ++c) {
        const Vec3& x = m.cell_circumcenter[c];
        os << x.x() << " " << x.y() << " " << x.z() << " " << m.cell_area[c];
        for (int k = 0; k < 3; ++k) os << " " << m.cell_edges[c][k];
        for (int k = 0; k < 3; ++k) os << " " << m.cell_edge_sign[c][k];
        os << "\n";
    }

    os << "edges\n";
    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3& x = m.edge_midpoint[e];
        const Vec3& n = m.edge_normal[e];
        os << x.x() << " " << x.y() << " " << x.z() << " "
           << n.x() << " " << n.y() << " " << n.z() << " "
           << m.primal_edge_len[e] << " " << m.dual_edge_len[e] << " "
           << m.edge_cells[e][0] << " " << m.edge_cells[e][1] << " "
           << m.edge_duals[e][0] << " " << m.edge_duals[e][1] << "\n";
    }

    os << "duals\n";
    for (int d = 0; d < m.n_duals; ++d) {
        const Vec3& x = m.dual_center[d];
        os << x.x() << " " << x.y() << " " << x.z() << " " << m.dual_area[d];
        for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k)
            os << " " << m.dual_edge_ids[k] << " " << m.dual_edge_sign[k];
        os << "\n";
    }
    os << "end\n";
}

} // namespace rswlu
