#pragma once

#include <iosfwd>
#include <vector>

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/rsw.hpp"

namespace rswlu {

/// Total energy E = 1/2 sum_e |e||~e| h_bar V^2 + 1/2 g sum_i (h+eta_b)^2 Omega.
/// The kinetic part is the diagonal-flat realization of the discrete
/// Lagrangian's quadratic term; the chain-rule test against det/continuity
/// pins its quadrature weight.
double total_energy(const Mesh& m, const State& s, const PhysParams& p);

/// Potential enstrophy C = 1/2 sum_zeta h_zeta q_zeta^2 |zeta|.
double potential_enstrophy(const Mesh& m, const State& s, const PhysParams& p);

/// sum_i h_i Omega_i.
double total_mass(const Mesh& m, const CellField& h);

struct DiagnosticsRecord {
    long step = 0;
    double time = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    double mass = 0.0;
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRecord> records;
};

DiagnosticsRecord sample_diagnostics(const Mesh& m, const State& s, const PhysParams& p,
                                     long step, double time);

/// CSV with header "step,time,energy,enstrophy,mass", 17 significant digits.
void write_diagnostics_csv(std::ostream& os, const DiagnosticsSeries& series);

struct LatLonGrid {
    int nlat = 0;
    int nlon = 0;
    std::vector<double> values;  // row-major, south to north
    double& at(int ilat, int ilon) { return values[static_cast<size_t>(ilat) * nlon + ilon]; }
    double at(int ilat, int ilon) const { return values[static_cast<size_t>(ilat) * nlon + ilon]; }
};

/// Nearest-containing-cell sampling of a cell field on a regular lat-lon grid.
LatLonGrid project_to_latlon(const Mesh& m, const CellField& F, int nlat, int nlon);

/// Same for dual fields; the circumcentric dual is the spherical Voronoi
/// diagram of the primal vertices, so point location is nearest-vertex.
LatLonGrid project_to_latlon(const Mesh& m, const DualField& F, int nlat, int nlon);

} // namespace rswlu
