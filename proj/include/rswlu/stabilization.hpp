#pragma once

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/rsw.hpp"

namespace rswlu {

/// Selectable dissipation coefficients; the momentum tendency gets
/// -theta * cd_tendency - nu * bd_tendency.
struct StabilizationParams {
    double theta = 0.0;  // Casimir dissipation [m^5 s]
    double nu = 0.0;     // biharmonic diffusion [m^4/s]
};

/// Edge representation W^C of the Casimir functional derivative:
/// W^C_ij = 2 (Grad_t q)_ij / h_bar_ij.  Downstream operators consume it
/// exactly like a normal velocity.
EdgeField casimir_derivative_field(const Mesh& m, const State& s, const PhysParams& p);

/// The transported field of the Casimir dissipation bracket:
/// W~ = W^C avg(Div V) - V avg(Div W^C) - Grad_t((dC/dm x u) . k).
EdgeField w_tilde(const Mesh& m, const State& s, const PhysParams& p);

/// Casimir dissipation tendency diff^CD: the det vorticity-flux groups with
/// Curl W~ in place of (Curl V + f), a W~ . Div(h_bar V) group, and the mixed
/// V W~ gradient group.  Energy-neutral under the discrete energy pairing.
EdgeField cd_tendency(const Mesh& m, const State& s, const PhysParams& p);

/// Lap(V) = Grad_n(Div V) - Grad_t(Curl V).
EdgeField vector_laplacian(const Mesh& m, const EdgeField& V);

/// diff^BD = Lap(Lap(V)).
EdgeField bd_tendency(const Mesh& m, const EdgeField& V);

} // namespace rswlu
