#pragma once

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"

namespace rswlu {

// Mimetic finite-difference operators on the primal/dual mesh.  All functions
// are pure; they satisfy curl(grad_n F) = 0 and divergence(grad_t G) = 0 to
// roundoff, and grad_n is the negative adjoint of divergence under the edge
// inner product with weights |e||~e| and the cell inner product with weights
// Omega.

/// (F_j - F_i) / |~e_ij| per edge.
EdgeField grad_n(const Mesh& m, const CellField& F);

/// (G_{zeta-} - G_{zeta+}) / |e_ij| per edge.
EdgeField grad_t(const Mesh& m, const DualField& G);

/// (1/Omega_i) * sum of outward |e| V over the cell's edges.
CellField divergence(const Mesh& m, const EdgeField& V);

/// Circulation around each dual cell divided by its area.
DualField curl(const Mesh& m, const EdgeField& V);

/// Perot-type reconstruction of the full tangent velocity at cell centers:
/// u_i = (1/Omega_i) sum |e_ik| (x_e - x_i) V_ik, tangent-projected.
CellVectorField reconstruct_velocity(const Mesh& m, const EdgeField& V);

/// Overlap-weighted average of a cell scalar onto dual cells (h_zeta).
DualField dual_average_cell_scalar(const Mesh& m, const CellField& h);

/// Overlap-weighted average of cell vectors onto dual vertices, projected
/// tangent at the dual vertex.
DualVectorField dual_average_vector(const Mesh& m, const CellVectorField& u);

/// Arithmetic two-cell mean per edge (orientation-independent).
EdgeField edge_mean_depth(const Mesh& m, const CellField& h);

struct EdgePartials {
    EdgeField x, y, z;
};

/// Cartesian partials at edge midpoints assembled from normal and tangential
/// finite differences: (d_m F) = (Grad_n F) n^m + (Grad_t F) t^m.
EdgePartials edge_partial_derivatives(const Mesh& m, const EdgeField& Fn, const EdgeField& Ft);

/// Convenience chain for a cell scalar: grad_n of F plus grad_t of the
/// dual-averaged F, assembled into Cartesian partials.
EdgePartials edge_partials_of_cell_field(const Mesh& m, const CellField& F);

/// Area-weighted average of edge values to cells (diamond weights |e||~e|/4).
CellField cell_average_edge_field(const Mesh& m, const EdgeField& x);

} // namespace rswlu
