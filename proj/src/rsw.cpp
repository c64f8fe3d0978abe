#include "rswlu/rsw.hpp"

#include <cmath>
#include <sstream>

#include "rswlu/errors.hpp"
#include "rswlu/operators.hpp"

namespace rswlu {

DualField coriolis_dual(const Mesh& m, const PhysParams& p) {
    DualField f(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        const double sin_lat = m.dual_center[d].z() / m.radius;
        f[d] = 2.0 * p.planet_rotation * sin_lat;
    }
    return f;
}

DualField potential_vorticity(const Mesh& m, const State& s, const PhysParams& p) {
    const DualField vort = curl(m, s.V);
    const DualField f = coriolis_dual(m, p);
    const DualField h_zeta = dual_average_cell_scalar(m, s.h);
    DualField q(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) {
        if (h_zeta[d] <= kDepthEpsilon) {
            std::ostringstream os;
            os << "dual-averaged depth " << h_zeta[d] << " at dual cell " << d
               << " is at or below the floor " << kDepthEpsilon;
            throw DegenerateDepth(os.str());
        }
        q[d] = (vort[d] + f[d]) / h_zeta[d];
    }
    return q;
}

namespace detail {

EdgeField vorticity_flux_groups(const Mesh& m, const DualField& vort, const EdgeField& V,
                                const CellField& h, const EdgeField& h_bar) {
    EdgeField out(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        const int zp = m.edge_duals[e][0], zm = m.edge_duals[e][1];
        const auto& st = m.edge_stencil[e];

        // The depth factor on each neighboring-edge flux pairs the cell
        // opposite the updated edge with the cell opposite the flux edge
        // (h_bar_{j i_-} etc.); this cross pairing is what makes the groups
        // exactly antisymmetric under the energy pairing.
        auto group = [&](const Mesh::FluxStencil& fi, const Mesh::FluxStencil& fj) {
            const double term_i = fi.overlap / (2.0 * m.cell_area[ci]) *
                                  0.5 * (h[cj] + h[fi.opposite]) *
                                  m.primal_edge_len[fi.edge] * (fi.sign * V[fi.edge]);
            const double term_j = fj.overlap / (2.0 * m.cell_area[cj]) *
                                  0.5 * (h[ci] + h[fj.opposite]) *
                                  m.primal_edge_len[fj.edge] * (fj.sign * V[fj.edge]);
            return term_i + term_j;
        };

        const double denom = h_bar[e] * m.dual_edge_len[e];
        out[e] = (-vort[zm] * group(st.i_minus, st.j_minus) +
                  vort[zp] * group(st.i_plus, st.j_plus)) / denom;
    }
    return out;
}

} // namespace detail

EdgeField det_tendency(const Mesh& m, const State& s, const PhysParams& p) {
    const DualField vort_abs = [&] {
        DualField w = curl(m, s.V);
        const DualField f = coriolis_dual(m, p);
        for (int d = 0; d < m.n_duals; ++d) w[d] += f[d];
        return w;
    }();
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    for (int e = 0; e < m.n_edges; ++e) {
        if (h_bar[e] <= kDepthEpsilon)
            throw DegenerateDepth("edge-mean depth at or below floor in det_tendency");
    }

    EdgeField out = detail::vorticity_flux_groups(m, vort_abs, s.V, s.h, h_bar);

    // Kinetic-energy cell function sum_k |~e||e| V^2 / (2 Omega_i); its
    // gradient balances the depth-variation of the quadratic energy exactly.
    CellField ke(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            acc += m.dual_edge_len[e] * m.primal_edge_len[e] * s.V[e] * s.V[e];
        }
        ke[c] = acc / (2.0 * m.cell_area[c]);
    }
    const EdgeField grad_ke = grad_n(m, ke);

    CellField surf(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) surf[c] = s.h[c] + p.eta_b_at(c);
    const EdgeField grad_surf = grad_n(m, surf);

    for (int e = 0; e < m.n_edges; ++e)
        out[e] += -0.5 * grad_ke[e] - p.g * grad_surf[e];
    return out;
}

CellField continuity_tendency(const Mesh& m, const State& s) {
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    EdgeField flux(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) flux[e] = h_bar[e] * s.V[e];
    CellField out = divergence(m, flux);
    for (int c = 0; c < m.n_cells; ++c) out[c] = -out[c];
    return out;
}

} // namespace rswlu
