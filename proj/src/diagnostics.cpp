#include "rswlu/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "rswlu/operators.hpp"

namespace rswlu {

double total_energy(const Mesh& m, const State& s, const PhysParams& p) {
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    double ke = 0.0;
    for (int e = 0; e < m.n_edges; ++e) {
        ke += m.primal_edge_len[e] * m.dual_edge_len[e] * h_bar[e] * s.V[e] * s.V[e];
    }
    ke *= 0.5;
    double pe = 0.0;
    for (int c = 0; c < m.n_cells; ++c) {
        const double eta = s.h[c] + p.eta_b_at(c);
        pe += eta * eta * m.cell_area[c];
    }
    pe *= 0.5 * p.g;
    return ke + pe;
}

double potential_enstrophy(const Mesh& m, const State& s, const PhysParams& p) {
    const DualField q = potential_vorticity(m, s, p);
    const DualField h_zeta = dual_average_cell_scalar(m, s.h);
    double acc = 0.0;
    for (int d = 0; d < m.n_duals; ++d)
        acc += h_zeta[d] * q[d] * q[d] * m.dual_area[d];
    return 0.5 * acc;
}

double total_mass(const Mesh& m, const CellField& h) {
    double acc = 0.0;
    for (int c = 0; c < m.n_cells; ++c) acc += h[c] * m.cell_area[c];
    return acc;
}

DiagnosticsRecord sample_diagnostics(const Mesh& m, const State& s, const PhysParams& p,
                                     long step, double time) {
    DiagnosticsRecord r;
    r.step = step;
    r.time = time;
    r.energy = total_energy(m, s, p);
    r.enstrophy = potential_enstrophy(m, s, p);
    r.mass = total_mass(m, s.h);
    return r;
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsSeries& series) {
    os << "step,time,energy,enstrophy,mass\n";
    os << std::setprecision(17);
    for (const auto& r : series.records) {
        os << r.step << "," << r.time << "," << r.energy << ","
           << r.enstrophy << "," << r.mass << "\n";
    }
}

namespace {

Vec3 latlon_dir(double lat, double lon) {
    return Vec3(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat));
}

/// x inside the spherical triangle spanned by unit a,b,c (any winding).
bool in_spherical_triangle(const Vec3& x, const Vec3& a, const Vec3& b, const Vec3& c) {
    const double s1 = a.cross(b).dot(x);
    const double s2 = b.cross(c).dot(x);
    const double s3 = c.cross(a).dot(x);
    const double tol = -1e-13;
    const bool pos = s1 >= tol && s2 >= tol && s3 >= tol;
    const bool neg = s1 <= -tol && s2 <= -tol && s3 <= -tol;
    return pos || neg;
}

int nearest_dual(const Mesh& m, const Vec3& dir) {
    int best = 0;
    double best_dot = -2.0;
    for (int d = 0; d < m.n_duals; ++d) {
        const double dd = m.dual_center[d].dot(dir);
        if (dd > best_dot) {
            best_dot = dd;
            best = d;
        }
    }
    return best;
}

int containing_cell(const Mesh& m, const Vec3& dir) {
    // The containing triangle is incident to the nearest primal vertex of the
    // Delaunay-like icosahedral grid; fall back to a global scan if roundoff
    // puts the point just outside all of them.
    const int d = nearest_dual(m, dir);
    for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k) {
        const int c = m.dual_cell_ids[k];
        const auto& corners = m.cell_corners[c];
        if (in_spherical_triangle(dir, m.dual_center[corners[0]].normalized(),
                                  m.dual_center[corners[1]].normalized(),
                                  m.dual_center[corners[2]].normalized()))
            return c;
    }
    int best = m.dual_cell_ids[m.dual_offset[d]];
    double best_dot = -2.0;
    for (int c = 0; c < m.n_cells; ++c) {
        const double dd = m.cell_circumcenter[c].dot(dir);
        if (dd > best_dot) {
            best_dot = dd;
            best = c;
        }
    }
    return best;
}

} // namespace

LatLonGrid project_to_latlon(const Mesh& m, const CellField& F, int nlat, int nlon) {
    LatLonGrid g;
    g.nlat = nlat;
    g.nlon = nlon;
    g.values.resize(static_cast<size_t>(nlat) * nlon);
    for (int i = 0; i < nlat; ++i) {
        const double lat = -0.5 * M_PI + M_PI * (i + 0.5) / nlat;
        for (int j = 0; j < nlon; ++j) {
            const double lon = -M_PI + 2.0 * M_PI * (j + 0.5) / nlon;
            g.at(i, j) = F[containing_cell(m, latlon_dir(lat, lon))];
        }
    }
    return g;
}

LatLonGrid project_to_latlon(const Mesh& m, const DualField& F, int nlat, int nlon) {
    LatLonGrid g;
    g.nlat = nlat;
    g.nlon = nlon;
    g.values.resize(static_cast<size_t>(nlat) * nlon);
    for (int i = 0; i < nlat; ++i) {
        const double lat = -0.5 * M_PI + M_PI * (i + 0.5) / nlat;
        for (int j = 0; j < nlon; ++j) {
            const double lon = -M_PI + 2.0 * M_PI * (j + 0.5) / nlon;
            g.at(i, j) = F[nearest_dual(m, latlon_dir(lat, lon))];
        }
    }
    return g;
}

} // namespace rswlu
