#include "rswlu/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "rswlu/errors.hpp"

namespace rswlu {

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    // tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a), E the spherical excess.
    const double num = a.dot(b.cross(c));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2.0 * std::atan2(num, den);
}

double spherical_polygon_area(const std::vector<Vec3>& v) {
    double area = 0.0;
    for (size_t k = 1; k + 1 < v.size(); ++k) {
        area += spherical_triangle_area(v[0], v[k], v[k + 1]);
    }
    return std::abs(area);
}

double arc_length(const Vec3& a, const Vec3& b) {
    // atan2 form is accurate for both small and near-pi separations.
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

namespace {

struct BuildState {
    std::vector<Vec3> verts;                 // unit vectors
    std::vector<std::array<int, 3>> faces;   // CCW seen from outside
};

BuildState base_icosahedron() {
    BuildState s;
    const double lat = std::atan(0.5);
    s.verts.push_back(Vec3(0, 0, 1));
    for (int k = 0; k < 5; ++k) {
        const double lon = 2.0 * M_PI * k / 5.0;
        s.verts.push_back(Vec3(std::cos(lat) * std::cos(lon),
                               std::cos(lat) * std::sin(lon), std::sin(lat)));
    }
    for (int k = 0; k < 5; ++k) {
        const double lon = 2.0 * M_PI * k / 5.0 + M_PI / 5.0;
        s.verts.push_back(Vec3(std::cos(lat) * std::cos(lon),
                               std::cos(lat) * std::sin(lon), -std::sin(lat)));
    }
    s.verts.push_back(Vec3(0, 0, -1));

    for (int k = 0; k < 5; ++k) {
        const int u0 = 1 + k, u1 = 1 + (k + 1) % 5;
        const int l0 = 6 + k, l1 = 6 + (k + 1) % 5;
        s.faces.push_back({0, u0, u1});
        s.faces.push_back({u0, l0, u1});
        s.faces.push_back({l0, l1, u1});
        s.faces.push_back({11, l1, l0});
    }
    // Enforce outward CCW winding once; subdivision preserves it.
    for (auto& f : s.faces) {
        const Vec3& a = s.verts[f[0]];
        const Vec3& b = s.verts[f[1]];
        const Vec3& c = s.verts[f[2]];
        if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(f[1], f[2]);
    }
    return s;
}

uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

void subdivide(BuildState& s) {
    std::unordered_map<uint64_t, int> midpoint;
    midpoint.reserve(s.faces.size() * 2);
    auto mid = [&](int a, int b) {
        const uint64_t key = pair_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int id = static_cast<int>(s.verts.size());
        s.verts.push_back((s.verts[a] + s.verts[b]).normalized());
        midpoint.emplace(key, id);
        return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(s.faces.size() * 4);
    for (const auto& f : s.faces) {
        const int a = f[0], b = f[1], c = f[2];
        const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        next.push_back({a, ab, ca});
        next.push_back({ab, b, bc});
        next.push_back({ca, bc, c});
        next.push_back({ab, bc, ca});
    }
    s.faces = std::move(next);
}

Vec3 spherical_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 cc = (b - a).cross(c - a);
    cc.normalize();
    if (cc.dot(a + b + c) < 0.0) cc = -cc;
    return cc;
}

} // namespace

Mesh build_icosahedral_mesh(int level, double radius, int max_level) {
    if (level < 0) throw Error("mesh level must be >= 0");
    if (radius <= 0.0) throw Error("sphere radius must be > 0");
    if (level > max_level) {
        std::ostringstream os;
        os << "refinement level " << level << " exceeds maximum " << max_level;
        throw ResourceExhaustion(os.str());
    }

    BuildState s = base_icosahedron();
    for (int l = 0; l < level; ++l) subdivide(s);

    Mesh m;
    m.refinement_level = level;
    m.radius = radius;
    m.n_cells = static_cast<int>(s.faces.size());
    m.n_duals = static_cast<int>(s.verts.size());

    // -- cells --
    m.cell_circumcenter.resize(m.n_cells);
    m.cell_area.resize(m.n_cells);
    m.cell_corners.resize(m.n_cells);
    std::vector<Vec3> cc_unit(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        const auto& f = s.faces[c];
        cc_unit[c] = spherical_circumcenter(s.verts[f[0]], s.verts[f[1]], s.verts[f[2]]);
        m.cell_circumcenter[c] = radius * cc_unit[c];
        m.cell_area[c] = radius * radius *
            std::abs(spherical_triangle_area(s.verts[f[0]], s.verts[f[1]], s.verts[f[2]]));
        m.cell_corners[c] = {f[0], f[1], f[2]};
    }

    // -- duals (primal vertices) --
    m.dual_center.resize(m.n_duals);
    for (int d = 0; d < m.n_duals; ++d) m.dual_center[d] = radius * s.verts[d];

    // -- edges: id assignment by face-scan order --
    std::unordered_map<uint64_t, int> edge_of;
    edge_of.reserve(s.faces.size() * 2);
    std::vector<std::array<int, 2>> edge_verts;  // primal endpoints
    m.edge_cells.clear();
    for (int c = 0; c < m.n_cells; ++c) {
        const auto& f = s.faces[c];
        for (int k = 0; k < 3; ++k) {
            const int va = f[k], vb = f[(k + 1) % 3];
            const uint64_t key = pair_key(va, vb);
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                const int e = static_cast<int>(edge_verts.size());
                edge_of.emplace(key, e);
                edge_verts.push_back({std::min(va, vb), std::max(va, vb)});
                m.edge_cells.push_back({c, -1});
            } else {
                m.edge_cells[it->second][1] = c;
            }
        }
    }
    m.n_edges = static_cast<int>(edge_verts.size());
    for (auto& ec : m.edge_cells) {
        if (ec[1] < 0) throw Error("open edge encountered during mesh build");
        if (ec[0] > ec[1]) std::swap(ec[0], ec[1]);
    }

    // -- edge geometry and zeta_+/zeta_- assignment --
    m.edge_midpoint.resize(m.n_edges);
    m.edge_normal.resize(m.n_edges);
    m.edge_tangent.resize(m.n_edges);
    m.primal_edge_len.resize(m.n_edges);
    m.dual_edge_len.resize(m.n_edges);
    m.edge_duals.resize(m.n_edges);
    m.min_edge_len = 1e300;
    m.max_edge_len = 0.0;
    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3& va = s.verts[edge_verts[e][0]];
        const Vec3& vb = s.verts[edge_verts[e][1]];
        const Vec3 mid = (va + vb).normalized();
        m.edge_midpoint[e] = radius * mid;
        m.primal_edge_len[e] = radius * arc_length(va, vb);
        m.min_edge_len = std::min(m.min_edge_len, m.primal_edge_len[e]);
        m.max_edge_len = std::max(m.max_edge_len, m.primal_edge_len[e]);

        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        m.dual_edge_len[e] = radius * arc_length(cc_unit[ci], cc_unit[cj]);

        // Both circumcenters lie on the perpendicular-bisector great circle of
        // the edge, so the projected chord direction at the midpoint is the
        // normal direction.
        Vec3 n = tangent_project(cc_unit[cj] - cc_unit[ci], mid);
        n.normalize();
        m.edge_normal[e] = n;
        const Vec3 t = mid.cross(n);  // unit: n x t = mid (outward radial)
        m.edge_tangent[e] = t;

        // zeta_minus sits at the +t end of the edge.
        const int pa = edge_verts[e][0], pb = edge_verts[e][1];
        if ((s.verts[pb] - s.verts[pa]).dot(t) > 0.0) {
            m.edge_duals[e] = {pa, pb};  // {plus, minus}
        } else {
            m.edge_duals[e] = {pb, pa};
        }
    }

    // -- cell -> edge connectivity --
    m.cell_edges.resize(m.n_cells);
    m.cell_edge_sign.resize(m.n_cells);
    m.cell_neighbors.resize(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        const auto& f = s.faces[c];
        for (int k = 0; k < 3; ++k) {
            const int e = edge_of.at(pair_key(f[k], f[(k + 1) % 3]));
            m.cell_edges[c][k] = e;
            m.cell_edge_sign[c][k] = (m.edge_cells[e][0] == c) ? 1 : -1;
            m.cell_neighbors[c][k] =
                (m.edge_cells[e][0] == c) ? m.edge_cells[e][1] : m.edge_cells[e][0];
        }
    }

    // -- kite overlaps |zeta ∩ T| per cell corner --
    m.cell_corner_overlap.resize(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c) {
        const auto& f = s.faces[c];
        for (int k = 0; k < 3; ++k) {
            const int v = f[k];
            // The two edges of T_c meeting at v.
            const int e1 = edge_of.at(pair_key(v, f[(k + 1) % 3]));
            const int e2 = edge_of.at(pair_key(v, f[(k + 2) % 3]));
            const std::vector<Vec3> kite = {
                s.verts[v], m.edge_midpoint[e1] / radius, cc_unit[c],
                m.edge_midpoint[e2] / radius};
            m.cell_corner_overlap[c][k] = radius * radius * spherical_polygon_area(kite);
        }
    }

    // -- dual rings: fan walk around each vertex --
    std::vector<std::vector<int>> vert_cells(m.n_duals);
    for (int c = 0; c < m.n_cells; ++c)
        for (int k = 0; k < 3; ++k) vert_cells[s.faces[c][k]].push_back(c);

    m.dual_offset.assign(m.n_duals + 1, 0);
    for (int d = 0; d < m.n_duals; ++d)
        m.dual_offset[d + 1] = m.dual_offset[d] + static_cast<int>(vert_cells[d].size());
    const int ring_total = m.dual_offset[m.n_duals];
    m.dual_edge_ids.resize(ring_total);
    m.dual_edge_sign.resize(ring_total);
    m.dual_cell_ids.resize(ring_total);
    m.dual_cell_overlap.resize(ring_total);
    m.dual_area.assign(m.n_duals, 0.0);

    auto cell_edges_at_vertex = [&](int c, int v, int out[2]) {
        int n = 0;
        const auto& f = s.faces[c];
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            if (a == v || b == v) out[n++] = edge_of.at(pair_key(a, b));
        }
        if (n != 2) throw Error("vertex fan inconsistency");
    };

    for (int d = 0; d < m.n_duals; ++d) {
        const auto& ring = vert_cells[d];
        const int deg = static_cast<int>(ring.size());
        // Walk the fan starting from the lowest-numbered incident cell.
        int start = *std::min_element(ring.begin(), ring.end());
        std::vector<int> cells_ordered, edges_ordered;
        int cur = start;
        int ec[2];
        cell_edges_at_vertex(cur, d, ec);
        int cross = std::min(ec[0], ec[1]);  // deterministic walk direction
        for (int k = 0; k < deg; ++k) {
            cells_ordered.push_back(cur);
            edges_ordered.push_back(cross);
            const int next =
                (m.edge_cells[cross][0] == cur) ? m.edge_cells[cross][1] : m.edge_cells[cross][0];
            cell_edges_at_vertex(next, d, ec);
            cross = (ec[0] == cross) ? ec[1] : ec[0];
            cur = next;
        }
        if (cur != start) throw Error("dual ring failed to close");

        // Polygon of circumcenters; overlap kites partition it exactly.
        std::vector<Vec3> poly;
        poly.reserve(deg);
        for (int c : cells_ordered) poly.push_back(cc_unit[c]);
        m.dual_area[d] = radius * radius * spherical_polygon_area(poly);

        for (int k = 0; k < deg; ++k) {
            const int idx = m.dual_offset[d] + k;
            const int c = cells_ordered[k];
            m.dual_cell_ids[idx] = c;
            const auto& f = s.faces[c];
            int corner = -1;
            for (int k2 = 0; k2 < 3; ++k2)
                if (f[k2] == d) corner = k2;
            m.dual_cell_overlap[idx] = m.cell_corner_overlap[c][corner];
            const int e = edges_ordered[k];
            m.dual_edge_ids[idx] = e;
            m.dual_edge_sign[idx] = (m.edge_duals[e][1] == d) ? 1 : -1;
        }
    }

    // -- per-edge flux stencil (other edges of T_i / T_j at each dual vertex) --
    m.edge_stencil.resize(m.n_edges);
    auto make_entry = [&](int owner_cell, int vertex, int this_edge) {
        int ec[2];
        cell_edges_at_vertex(owner_cell, vertex, ec);
        const int other = (ec[0] == this_edge) ? ec[1] : ec[0];
        Mesh::FluxStencil fs;
        fs.edge = other;
        fs.sign = (m.edge_cells[other][0] == owner_cell) ? 1 : -1;
        fs.opposite =
            (m.edge_cells[other][0] == owner_cell) ? m.edge_cells[other][1] : m.edge_cells[other][0];
        const auto& f = s.faces[owner_cell];
        int corner = -1;
        for (int k = 0; k < 3; ++k)
            if (f[k] == vertex) corner = k;
        fs.overlap = m.cell_corner_overlap[owner_cell][corner];
        return fs;
    };
    for (int e = 0; e < m.n_edges; ++e) {
        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        const int zp = m.edge_duals[e][0], zm = m.edge_duals[e][1];
        m.edge_stencil[e].i_minus = make_entry(ci, zm, e);
        m.edge_stencil[e].j_minus = make_entry(cj, zm, e);
        m.edge_stencil[e].i_plus = make_entry(ci, zp, e);
        m.edge_stencil[e].j_plus = make_entry(cj, zp, e);
    }

    return m;
}

bool ValidationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name
           << "  (worst residual " << c.residual << ")\n";
    }
    return os.str();
}

ValidationReport validate_mesh(const Mesh& m) {
    ValidationReport r;
    auto add = [&](const std::string& name, bool pass, double residual) {
        r.checks.push_back({name, pass, residual});
    };

    const long level_cells = 20L << (2 * m.refinement_level);
    const long level_edges = 30L << (2 * m.refinement_level);
    const long level_duals = (10L << (2 * m.refinement_level)) + 2;
    add("cell count = 20*4^level", m.n_cells == level_cells,
        static_cast<double>(m.n_cells - level_cells));
    add("edge count = 30*4^level", m.n_edges == level_edges,
        static_cast<double>(m.n_edges - level_edges));
    add("dual count = 10*4^level+2", m.n_duals == level_duals,
        static_cast<double>(m.n_duals - level_duals));
    add("Euler: cells - edges + duals = 2",
        m.n_cells - m.n_edges + m.n_duals == 2,
        static_cast<double>(m.n_cells - m.n_edges + m.n_duals - 2));

    const double sphere = m.total_area();
    double sum_cells = 0.0;
    for (double a : m.cell_area) sum_cells += a;
    add("sum cell areas = 4*pi*R^2", std::abs(sum_cells - sphere) / sphere < 1e-12,
        std::abs(sum_cells - sphere) / sphere);

    double sum_duals = 0.0;
    for (double a : m.dual_area) sum_duals += a;
    add("sum dual areas = 4*pi*R^2", std::abs(sum_duals - sphere) / sphere < 1e-12,
        std::abs(sum_duals - sphere) / sphere);

    double worst_overlap = 0.0;
    for (int d = 0; d < m.n_duals; ++d) {
        double s = 0.0;
        for (int k = m.dual_offset[d]; k < m.dual_offset[d + 1]; ++k)
            s += m.dual_cell_overlap[k];
        worst_overlap = std::max(worst_overlap, std::abs(s - m.dual_area[d]) / m.dual_area[d]);
    }
    add("dual overlap partition", worst_overlap < 1e-12, worst_overlap);

    double worst_kite = 0.0;
    for (int c = 0; c < m.n_cells; ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m.cell_corner_overlap[c][k];
        worst_kite = std::max(worst_kite, std::abs(s - m.cell_area[c]) / m.cell_area[c]);
    }
    add("cell kite partition", worst_kite < 1e-12, worst_kite);

    double worst_unit = 0.0, worst_ortho = 0.0, worst_radial = 0.0, worst_orient = 0.0;
    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3 rhat = m.edge_midpoint[e].normalized();
        worst_unit = std::max(worst_unit, std::abs(m.edge_normal[e].norm() - 1.0));
        worst_unit = std::max(worst_unit, std::abs(m.edge_tangent[e].norm() - 1.0));
        worst_ortho = std::max(worst_ortho, std::abs(m.edge_normal[e].dot(m.edge_tangent[e])));
        worst_radial = std::max(worst_radial, std::abs(m.edge_normal[e].dot(rhat)));
        worst_radial = std::max(worst_radial, std::abs(m.edge_tangent[e].dot(rhat)));
        const int ci = m.edge_cells[e][0], cj = m.edge_cells[e][1];
        const double toward =
            m.edge_normal[e].dot(m.cell_circumcenter[cj] - m.cell_circumcenter[ci]);
        if (toward <= 0.0) worst_orient = std::max(worst_orient, -toward + 1.0);
    }
    add("normals/tangents unit length", worst_unit < 1e-14, worst_unit);
    add("n . t = 0", worst_ortho < 1e-13, worst_ortho);
    add("n, t tangent to sphere", worst_radial < 1e-12, worst_radial);
    add("normal points toward T_j", worst_orient == 0.0, worst_orient);

    double worst_tminus = 0.0;
    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3 d = m.dual_center[m.edge_duals[e][1]] - m.dual_center[m.edge_duals[e][0]];
        if (d.dot(m.edge_tangent[e]) <= 0.0) worst_tminus += 1.0;
    }
    add("zeta_minus on +t side", worst_tminus == 0.0, worst_tminus);

    const double ratio = m.max_edge_len / m.min_edge_len;
    add("edge length ratio < 1.3", ratio < 1.3, ratio);

    return r;
}

} // namespace rswlu
