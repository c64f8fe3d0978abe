#include "rswlu/operators.hpp"

namespace rswlu {

EdgeField grad_n(const Mesh& m, const CellField& F) {
    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        const auto& c = m.edge_cells[e];
        out[e] = (F[c[1]] - F[c[0]]) / m.dual_edge_len[e];
    }
    return out;
}

EdgeField grad_t(const Mesh& m, const DualField& G) {
    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        const auto& d = m.edge_duals[e];  // {plus, minus}
        out[e] = (G[d[1]] - G[d[0]]) / m.primal_edge_len[e];
    }
    return out;
}

CellField divergence(const Mesh& m, const EdgeField& V) {
    CellField out(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            acc += m.cell_edge_sign[c][k] * m.primal_edge_len[e] * V[e];
        }
        out[c] = acc / m.cell_area[c];
    }
    return out;
}

DualField curl(const Mesh& m, const EdgeField& V) {
    DualField out(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        double acc = 0.0;
        for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k) {
            const int e = m.dual_edge_ids[k];
            acc += m.dual_edge_sign[k] * m.dual_edge_len[e] * V[e];
        }
        out[d] = acc / m.dual_area[d];
    }
    return out;
}

CellVectorField reconstruct_velocity(const Mesh& m, const EdgeField& V) {
    CellVectorField out(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        Vec3 acc = Vec3::Zero();
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            acc += m.primal_edge_len[e] * (m.edge_midpoint[e] - m.cell_circumcenter[c]) *
                   (m.cell_edge_sign[c][k] * V[e]);
        }
        acc /= m.cell_area[c];
        out[c] = tangent_project(acc, m.cell_circumcenter[c].normalized());
    }
    return out;
}

DualField dual_average_cell_scalar(const Mesh& m, const CellField& h) {
    DualField out(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        double acc = 0.0, wsum = 0.0;
        for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k) {
            acc += m.dual_cell_overlap[k] * h[m.dual_cell_ids[k]];
            wsum += m.dual_cell_overlap[k];
        }
        // wsum equals |zeta| by the partition invariant; normalizing by it
        // keeps constants exact.
        out[d] = acc / wsum;
    }
    return out;
}

DualVectorField dual_average_vector(const Mesh& m, const CellVectorField& u) {
    DualVectorField out(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        Vec3 acc = Vec3::Zero();
        double wsum = 0.0;
        for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k) {
            acc += m.dual_cell_overlap[k] * u[m.dual_cell_ids[k]];
            wsum += m.dual_cell_overlap[k];
        }
        acc /= wsum;
        out[d] = tangent_project(acc, m.dual_center[d].normalized());
    }
    return out;
}

EdgeField edge_mean_depth(const Mesh& m, const CellField& h) {
    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e)
        out[e] = 0.5 * (h[m.edge_cells[e][0]] + h[m.edge_cells[e][1]]);
    return out;
}

EdgePartials edge_partial_derivatives(const Mesh& m, const EdgeField& Fn, const EdgeField& Ft) {
    EdgePartials out{EdgeField(m.n_edges), EdgeField(m.n_edges), EdgeField(m.n_edges)};
    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3& n = m.edge_normal[e];
        const Vec3& t = m.edge_tangent[e];
        out.x[e] = Fn[e] * n.x() + Ft[e] * t.x();
        out.y[e] = Fn[e] * n.y() + Ft[e] * t.y();
        out.z[e] = Fn[e] * n.z() + Ft[e] * t.z();
    }
    return out;
}

EdgePartials edge_partials_of_cell_field(const Mesh& m, const CellField& F) {
    const EdgeField fn = grad_n(m, F);
    const EdgeField ft = grad_t(m, dual_average_cell_scalar(m, F));
    return edge_partial_derivatives(m, fn, ft);
}

CellField cell_average_edge_field(const Mesh& m, const EdgeField& x) {
    CellField out(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        double acc = 0.0, wsum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            const double w = 0.25 * m.primal_edge_len[e] * m.dual_edge_len[e];
            acc += w * x[e];
            wsum += w;
        }
        out[c] = acc / wsum;
    }
    return out;
}

} // namespace rswlu
