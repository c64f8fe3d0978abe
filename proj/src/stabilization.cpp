#include "rswlu/stabilization.hpp"

#include "rswlu/errors.hpp"
#include "rswlu/operators.hpp"

namespace rswlu {

EdgeField casimir_derivative_field(const Mesh& m, const State& s, const PhysParams& p) {
    const DualField q = potential_vorticity(m, s, p);
    const EdgeField gq = grad_t(m, q);
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    EdgeField wc(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        if (h_bar[e] <= kDepthEpsilon)
            throw DegenerateDepth("edge-mean depth at or below floor in casimir_derivative_field");
        wc[e] = 2.0 * gq[e] / h_bar[e];
    }
    return wc;
}

EdgeField w_tilde(const Mesh& m, const State& s, const PhysParams& p) {
    const EdgeField wc = casimir_derivative_field(m, s, p);
    const CellField div_v = divergence(m, s.V);
    const CellField div_wc = divergence(m, wc);

    const DualVectorField dcdm = dual_average_vector(m, reconstruct_velocity(m, wc));
    const DualVectorField u_zeta = dual_average_vector(m, reconstruct_velocity(m, s.V));
    DualField cross(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        const Vec3 k_zeta = m.dual_center[d].normalized();
        cross[d] = dcdm[d].cross(u_zeta[d]).dot(k_zeta);
    }
    const EdgeField grad_cross = grad_t(m, cross);

    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        out[e] = wc[e] * 0.5 * (div_v[ci] + div_v[cj]) -
                 s.V[e] * 0.5 * (div_wc[ci] + div_wc[cj]) - grad_cross[e];
    }
    return out;
}

EdgeField cd_tendency(const Mesh& m, const State& s, const PhysParams& p) {
    const EdgeField wt = w_tilde(m, s, p);
    const DualField curl_wt = curl(m, wt);
    const EdgeField h_bar = edge_mean_depth(m, s.h);

    EdgeField out = detail::vorticity_flux_groups(m, curl_wt, s.V, s.h, h_bar);

    // Mass-flux divergence, as in the continuity equation.
    EdgeField flux(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) flux[e] = h_bar[e] * s.V[e];
    const CellField div_flux = divergence(m, flux);

    // Mixed product cell function; note the absent factor 1/2 relative to the
    // kinetic-energy cell function of the deterministic tendency.
    CellField mixed(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            acc += m.dual_edge_len[e] * m.primal_edge_len[e] * s.V[e] * wt[e];
        }
        mixed[c] = acc / m.cell_area[c];
    }
    const EdgeField grad_mixed = grad_n(m, mixed);

    for (int e = 0; e < m.n_edges; ++e) {
        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        out[e] += -(wt[e] / h_bar[e]) * 0.5 * (div_flux[ci] + div_flux[cj]) -
                  0.5 * grad_mixed[e];
    }
    return out;
}

EdgeField vector_laplacian(const Mesh& m, const EdgeField& V) {
    const EdgeField gn = grad_n(m, divergence(m, V));
    const EdgeField gt = grad_t(m, curl(m, V));
    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) out[e] = gn[e] - gt[e];
    return out;
}

EdgeField bd_tendency(const Mesh& m, const EdgeField& V) {
    return vector_laplacian(m, vector_laplacian(m, V));
}

} // namespace rswlu
