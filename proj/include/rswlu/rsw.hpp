#pragma once

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"

namespace rswlu {

/// Prognostic variables: normal velocity on edges, water depth on cells.
struct State {
    EdgeField V;
    CellField h;
};

/// Physical constants.  Coriolis is derived from the planetary rotation rate,
/// f = 2 * Omega_planet * sin(lat), sampled at dual vertices.  An empty
/// eta_b means flat bottom.
struct PhysParams {
    double g = 9.80616;                 // [m/s^2]
    double planet_rotation = 7.292e-5;  // [1/s]
    CellField eta_b;                    // bottom topography [m], empty = 0

    double eta_b_at(size_t i) const { return eta_b.size() ? eta_b[i] : 0.0; }
};

/// Depth floor below which dual-averaged depth counts as degenerate.
constexpr double kDepthEpsilon = 1e-6;

/// f at dual vertices.
DualField coriolis_dual(const Mesh& m, const PhysParams& p);

/// q_zeta = ((Curl V)_zeta + f_zeta) / h_zeta.  Throws DegenerateDepth if any
/// dual-averaged depth is at or below the floor.
DualField potential_vorticity(const Mesh& m, const State& s, const PhysParams& p);

/// Deterministic momentum tendency per edge (vorticity-flux groups, kinetic
/// energy gradient, pressure gradient).  dV/dt = det + ... ; the rest state
/// with flat h + eta_b gives exactly zero.
EdgeField det_tendency(const Mesh& m, const State& s, const PhysParams& p);

/// dh/dt = -Div(h_bar V) per cell (edgewise product, then divergence).
CellField continuity_tendency(const Mesh& m, const State& s);

namespace detail {
/// Shared evaluation of the det-like expression: the two vorticity-flux
/// groups driven by per-dual-vertex values `vort` (e.g. CurlV + f, or
/// Curl W_tilde), plus -1/2 Grad_n of the mixed cell function
/// sum_k |e||~e| V_k X_k / (2^half Omega_k).  Used by both the deterministic
/// core and the Casimir dissipation, which share this structure.
EdgeField vorticity_flux_groups(const Mesh& m, const DualField& vort, const EdgeField& V,
                                const CellField& h, const EdgeField& h_bar);
} // namespace detail

} // namespace rswlu
