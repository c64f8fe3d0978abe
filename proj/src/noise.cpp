#include "rswlu/noise.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <iomanip>
#include <sstream>

#include "rswlu/errors.hpp"
#include "rswlu/operators.hpp"

namespace rswlu {

namespace {

/// Stream-function gradients of the built-in modes, as ambient-space
/// gradients of the polynomial extensions; u = rhat x grad psi is tangent.
struct ModeDef {
    int degree;
    Vec3 axis;  // degree-1 rotation axis, unused for degree 2
    int quad;   // degree-2 harmonic index 0..4
};

Vec3 mode_velocity(const ModeDef& md, const Vec3& rhat) {
    if (md.degree == 1) return md.axis.cross(rhat);
    const double x = rhat.x(), y = rhat.y(), z = rhat.z();
    Vec3 grad;
    switch (md.quad) {
        case 0: grad = Vec3(0, 0, 6 * z); break;          // 3z^2 - 1
        case 1: grad = Vec3(z, 0, x); break;              // xz
        case 2: grad = Vec3(0, z, y); break;              // yz
        case 3: grad = Vec3(2 * x, -2 * y, 0); break;     // x^2 - y^2
        case 4: grad = Vec3(y, x, 0); break;              // xy
        default: grad = Vec3::Zero();
    }
    return rhat.cross(grad);
}

std::vector<ModeDef> builtin_modes(int n_modes, int lmax) {
    // Six icosahedral vertex axes: pole plus the five upper-ring vertices.
    std::vector<ModeDef> defs;
    const double lat = std::atan(0.5);
    defs.push_back({1, Vec3(0, 0, 1), 0});
    for (int k = 0; k < 5; ++k) {
        const double lon = 2.0 * M_PI * k / 5.0;
        defs.push_back({1, Vec3(std::cos(lat) * std::cos(lon),
                                std::cos(lat) * std::sin(lon), std::sin(lat)), 0});
    }
    if (lmax >= 2)
        for (int q = 0; q < 5; ++q) defs.push_back({2, Vec3::Zero(), q});
    if (n_modes > static_cast<int>(defs.size())) {
        std::ostringstream os;
        os << "noise.modes = " << n_modes << " exceeds the " << defs.size()
           << " built-in modes available for lmax = " << lmax;
        throw ConfigError(os.str());
    }
    defs.resize(n_modes);
    return defs;
}

double envelope(const NoiseConfig& cfg, double lat) {
    const double t = (lat - cfg.envelope_center_lat) / cfg.envelope_width;
    return cfg.envelope_floor + (1.0 - cfg.envelope_floor) * std::exp(-t * t);
}

void finalize_model(NoiseModel& nm, const Mesh& m) {
    const int n_cells = m.n_cells;
    nm.variance_cell.assign(n_cells, Mat3::Zero());
    for (int n = 0; n < nm.n_modes; ++n)
        for (int c = 0; c < n_cells; ++c)
            nm.variance_cell[c] += nm.basis_cell[n][c] * nm.basis_cell[n][c].transpose();

    // div a at edges from the edge partials of the six distinct entries.
    CellField a_entry[3][3];
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) {
            a_entry[r][col] = CellField(n_cells);
            for (int c = 0; c < n_cells; ++c) a_entry[r][col][c] = nm.variance_cell[c](r, col);
        }
    EdgePartials dpart[3][3];
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            dpart[r][col] = edge_partials_of_cell_field(m, a_entry[r][col]);

    nm.div_a_edge.assign(m.n_edges, Vec3::Zero());
    for (int e = 0; e < m.n_edges; ++e) {
        Vec3 da;
        for (int k = 0; k < 3; ++k) {
            // (div a)_k = d a_0k/dx + d a_1k/dy + d a_2k/dz
            da[k] = dpart[0][k].x[e] + dpart[1][k].y[e] + dpart[2][k].z[e];
        }
        nm.div_a_edge[e] = da;
    }
    nm.div_a_cell.assign(n_cells, Vec3::Zero());
    for (int k = 0; k < 3; ++k) {
        EdgeField comp(m.n_edges);
        for (int e = 0; e < m.n_edges; ++e) comp[e] = nm.div_a_edge[e][k];
        const CellField avg = cell_average_edge_field(m, comp);
        for (int c = 0; c < n_cells; ++c) nm.div_a_cell[c][k] = avg[c];
    }
}

} // namespace

NoiseModel build_noise_basis(const NoiseConfig& cfg, const Mesh& m) {
    if (cfg.mode == NoiseMode::file) {
        throw ConfigError("file mode requires load_noise_basis with an open stream");
    }
    if (cfg.n_modes <= 0) throw ConfigError("noise.modes must be positive");
    if (cfg.amplitude < 0.0) throw ConfigError("noise.amplitude must be non-negative");

    const auto defs = builtin_modes(cfg.n_modes, cfg.lmax);
    NoiseModel nm;
    nm.n_modes = cfg.n_modes;
    nm.homogeneous = (cfg.mode == NoiseMode::homogeneous);

    for (const auto& md : defs) {
        // Normalize so the configured amplitude is the peak speed over cells.
        double peak = 0.0;
        for (int c = 0; c < m.n_cells; ++c)
            peak = std::max(peak, mode_velocity(md, m.cell_circumcenter[c].normalized()).norm());
        const double scale = (peak > 0.0) ? cfg.amplitude / peak : 0.0;
        nm.amplitude.push_back(cfg.amplitude);

        CellVectorField cell(m.n_cells);
        for (int c = 0; c < m.n_cells; ++c) {
            const Vec3 rhat = m.cell_circumcenter[c].normalized();
            double env = 1.0;
            if (!nm.homogeneous) env = envelope(cfg, std::asin(rhat.z()));
            cell[c] = scale * env * mode_velocity(md, rhat);
        }
        std::vector<Vec3> edge(m.n_edges);
        EdgeField edge_n(m.n_edges);
        for (int e = 0; e < m.n_edges; ++e) {
            const Vec3 rhat = m.edge_midpoint[e].normalized();
            double env = 1.0;
            if (!nm.homogeneous) env = envelope(cfg, std::asin(rhat.z()));
            edge[e] = scale * env * mode_velocity(md, rhat);
            edge_n[e] = edge[e].dot(m.edge_normal[e]);
        }
        nm.basis_cell.push_back(std::move(cell));
        nm.basis_edge.push_back(std::move(edge));
        nm.basis_edge_normal.push_back(std::move(edge_n));
    }
    finalize_model(nm, m);
    return nm;
}

void write_noise_basis(const NoiseModel& nm, std::ostream& os) {
    os << "SPHERONOISE v1\n";
    os << std::setprecision(17);
    os << "modes " << nm.n_modes << "\n";
    const size_t n_cells = nm.basis_cell.empty() ? 0 : nm.basis_cell[0].size();
    const size_t n_edges = nm.basis_edge_normal.empty() ? 0 : nm.basis_edge_normal[0].size();
    os << "counts " << n_cells << " " << n_edges << "\n";
    for (int n = 0; n < nm.n_modes; ++n) {
        os << "mode " << n << "\n";
        os << "amplitude " << nm.amplitude[n] << "\n";
        for (size_t c = 0; c < n_cells; ++c) {
            const Vec3& v = nm.basis_cell[n][c];
            os << v.x() << " " << v.y() << " " << v.z() << "\n";
        }
        for (size_t e = 0; e < n_edges; ++e) os << nm.basis_edge_normal[n][e] << "\n";
    }
    os << "end\n";
}

NoiseModel load_noise_basis(std::istream& is, const Mesh& m) {
    std::string word;
    std::getline(is, word);
    if (word != "SPHERONOISE v1") throw ConfigError("noise basis file: bad magic line");
    int n_modes = 0;
    size_t n_cells = 0, n_edges = 0;
    is >> word >> n_modes;
    if (word != "modes" || n_modes <= 0) throw ConfigError("noise basis file: bad mode count");
    is >> word >> n_cells >> n_edges;
    if (word != "counts" || n_cells != static_cast<size_t>(m.n_cells) ||
        n_edges != static_cast<size_t>(m.n_edges))
        throw ConfigError("noise basis file: counts do not match the mesh");

    NoiseModel nm;
    nm.n_modes = n_modes;
    nm.homogeneous = false;  // unknown provenance; treated as general fields
    for (int n = 0; n < n_modes; ++n) {
        int idx = -1;
        double amp = 0.0;
        is >> word >> idx;
        if (word != "mode") throw ConfigError("noise basis file: expected mode header");
        is >> word >> amp;
        if (word != "amplitude") throw ConfigError("noise basis file: expected amplitude");
        nm.amplitude.push_back(amp);
        CellVectorField cell(m.n_cells);
        for (int c = 0; c < m.n_cells; ++c) {
            double x, y, z;
            if (!(is >> x >> y >> z)) throw ConfigError("noise basis file: truncated cell data");
            cell[c] = tangent_project(Vec3(x, y, z), m.cell_circumcenter[c].normalized());
        }
        EdgeField edge_n(m.n_edges);
        for (int e = 0; e < m.n_edges; ++e) {
            if (!(is >> edge_n[e])) throw ConfigError("noise basis file: truncated edge data");
        }
        // Edge vectors: tangent-projected mean of the incident cells,
        // corrected so the normal component matches the stored value.
        std::vector<Vec3> edge(m.n_edges);
        for (int e = 0; e < m.n_edges; ++e) {
            const Vec3 rhat = m.edge_midpoint[e].normalized();
            Vec3 v = tangent_project(
                0.5 * (cell[m.edge_cells[e][0]] + cell[m.edge_cells[e][1]]), rhat);
            v += (edge_n[e] - v.dot(m.edge_normal[e])) * m.edge_normal[e];
            edge[e] = v;
        }
        nm.basis_cell.push_back(std::move(cell));
        nm.basis_edge.push_back(std::move(edge));
        nm.basis_edge_normal.push_back(std::move(edge_n));
    }
    finalize_model(nm, m);
    return nm;
}

BrownianIncrement sample_increment(std::mt19937_64& rng, double dt, int n) {
    BrownianIncrement inc;
    inc.dbeta.resize(n);
    std::normal_distribution<double> unit(0.0, 1.0);
    const double root_dt = std::sqrt(dt);
    for (int k = 0; k < n; ++k) inc.dbeta[k] = root_dt * unit(rng);
    return inc;
}

namespace {

struct VelocityPartials {
    EdgePartials comp[3];          // partials of u, v, w at edges
    CellField grad_cell[3][3];     // grad of component m averaged to cells
};

VelocityPartials velocity_partials(const Mesh& m, const CellVectorField& u) {
    VelocityPartials vp;
    for (int mm = 0; mm < 3; ++mm) {
        CellField comp(m.n_cells);
        for (int c = 0; c < m.n_cells; ++c) comp[c] = u[c][mm];
        vp.comp[mm] = edge_partials_of_cell_field(m, comp);
        vp.grad_cell[mm][0] = cell_average_edge_field(m, vp.comp[mm].x);
        vp.grad_cell[mm][1] = cell_average_edge_field(m, vp.comp[mm].y);
        vp.grad_cell[mm][2] = cell_average_edge_field(m, vp.comp[mm].z);
    }
    return vp;
}

} // namespace

EdgeField sto_v(const Mesh& m, const State& s, const NoiseModel& nm,
                const BrownianIncrement& inc, double dt) {
    EdgeField out(m.n_edges, 0.0);
    if (nm.n_modes == 0) return out;
    if (static_cast<int>(inc.dbeta.size()) != nm.n_modes)
        throw DimensionMismatch("Brownian increment length does not match mode count");

    const CellVectorField u = reconstruct_velocity(m, s.V);
    const VelocityPartials vp = velocity_partials(m, u);

    // sigma dB at edge midpoints.
    std::vector<Vec3> sdb(m.n_edges, Vec3::Zero());
    for (int n = 0; n < nm.n_modes; ++n)
        for (int e = 0; e < m.n_edges; ++e) sdb[e] += inc.dbeta[n] * nm.basis_edge[n][e];

    // Flux a grad(u_m) at cells, then its divergence back at edges.
    EdgePartials flux_partials[3][3];
    for (int mm = 0; mm < 3; ++mm) {
        for (int k = 0; k < 3; ++k) {
            CellField g(m.n_cells);
            for (int c = 0; c < m.n_cells; ++c) {
                const Vec3 grad_u(vp.grad_cell[mm][0][c], vp.grad_cell[mm][1][c],
                                  vp.grad_cell[mm][2][c]);
                g[c] = nm.variance_cell[c].row(k).dot(grad_u);
            }
            flux_partials[mm][k] = edge_partials_of_cell_field(m, g);
        }
    }

    for (int e = 0; e < m.n_edges; ++e) {
        Vec3 increment;
        for (int mm = 0; mm < 3; ++mm) {
            const Vec3 grad_u(vp.comp[mm].x[e], vp.comp[mm].y[e], vp.comp[mm].z[e]);
            const double advection = -sdb[e].dot(grad_u);
            const double div_flux = flux_partials[mm][0].x[e] + flux_partials[mm][1].y[e] +
                                    flux_partials[mm][2].z[e];
            const double correction = 0.5 * (nm.div_a_edge[e].dot(grad_u) + div_flux);
            increment[mm] = advection + dt * correction;
        }
        out[e] = increment.dot(m.edge_normal[e]);
    }
    return out;
}

CellField sto_h(const Mesh& m, const State& s, const NoiseModel& nm,
                const BrownianIncrement& inc, double dt) {
    CellField out(m.n_cells, 0.0);
    if (nm.n_modes == 0) return out;
    if (static_cast<int>(inc.dbeta.size()) != nm.n_modes)
        throw DimensionMismatch("Brownian increment length does not match mode count");

    const EdgePartials hp = edge_partials_of_cell_field(m, s.h);
    const CellField hx = cell_average_edge_field(m, hp.x);
    const CellField hy = cell_average_edge_field(m, hp.y);
    const CellField hz = cell_average_edge_field(m, hp.z);

    // Flux a grad(h) at cells; its divergence evaluated at edges, then
    // averaged back to cells.
    CellField g[3];
    for (int k = 0; k < 3; ++k) {
        g[k] = CellField(m.n_cells);
        for (int c = 0; c < m.n_cells; ++c)
            g[k][c] = nm.variance_cell[c].row(k).dot(Vec3(hx[c], hy[c], hz[c]));
    }
    const EdgePartials g0 = edge_partials_of_cell_field(m, g[0]);
    const EdgePartials g1 = edge_partials_of_cell_field(m, g[1]);
    const EdgePartials g2 = edge_partials_of_cell_field(m, g[2]);
    EdgeField div_flux_edge(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e)
        div_flux_edge[e] = g0.x[e] + g1.y[e] + g2.z[e];
    const CellField div_flux = cell_average_edge_field(m, div_flux_edge);

    for (int c = 0; c < m.n_cells; ++c) {
        Vec3 sdb = Vec3::Zero();
        for (int n = 0; n < nm.n_modes; ++n) sdb += inc.dbeta[n] * nm.basis_cell[n][c];
        const Vec3 grad_h(hx[c], hy[c], hz[c]);
        const double advection = -sdb.dot(grad_h);
        const double correction = 0.5 * (nm.div_a_cell[c].dot(grad_h) + div_flux[c]);
        out[c] = advection + dt * correction;
    }
    return out;
}

} // namespace rswlu
