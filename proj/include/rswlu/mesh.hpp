#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rswlu {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Icosahedral triangular mesh on the sphere with circumcentric dual.
///
/// Primal cells are the triangles, dual cells are the polygons around each
/// primal vertex whose corners are the spherical circumcenters of the
/// incident triangles.  All lengths are great-circle arcs, all areas are
/// spherical polygon areas, so the partition-of-sphere identities hold to
/// roundoff.  The struct is immutable after construction and safe to share
/// across threads.
struct Mesh {
    int refinement_level = 0;
    double radius = 1.0;

    int n_cells = 0;
    int n_edges = 0;
    int n_duals = 0;

    // -- geometry (positions are physical, i.e. radius-scaled) --
    std::vector<Vec3> cell_circumcenter;  // spherical circumcenter of T_i
    std::vector<double> cell_area;        // Omega_ii
    std::vector<Vec3> dual_center;        // primal vertex carrying dual cell
    std::vector<double> dual_area;        // |zeta|
    std::vector<Vec3> edge_midpoint;      // great-circle midpoint of e_ij
    std::vector<Vec3> edge_normal;        // unit n_ij, tangent, toward T_j
    std::vector<Vec3> edge_tangent;       // unit t_ij with n x t = outward radial
    std::vector<double> primal_edge_len;  // |e_ij|
    std::vector<double> dual_edge_len;    // |~e_ij|

    // -- connectivity --
    // Cells (i, j) of each edge with i < j; the normal points from T_i to T_j.
    std::vector<std::array<int, 2>> edge_cells;
    // Dual cells of each edge as (zeta_plus, zeta_minus).  zeta_minus is the
    // endpoint vertex on the +t side of the midpoint, so that
    // (n, zeta_plus -> zeta_minus, radial) is right-handed.
    std::vector<std::array<int, 2>> edge_duals;

    std::vector<std::array<int, 3>> cell_edges;
    // +1 where the edge normal points out of this cell, else -1.
    std::vector<std::array<int, 3>> cell_edge_sign;
    // Neighbor across cell_edges[c][k].
    std::vector<std::array<int, 3>> cell_neighbors;
    // The three primal vertices (= dual cell ids) of each cell.
    std::vector<std::array<int, 3>> cell_corners;
    // Kite overlap |zeta(corner) ∩ T_i| aligned with cell_corners.
    std::vector<std::array<double, 3>> cell_corner_overlap;

    // Dual rings in CSR layout; entries ordered by a deterministic fan walk.
    std::vector<int> dual_offset;          // size n_duals + 1
    std::vector<int> dual_edge_ids;        // bounding edges of each dual cell
    std::vector<int> dual_edge_sign;       // +1 iff the dual is zeta_minus of the edge
    std::vector<int> dual_cell_ids;        // incident cells N(zeta), same ring order
    std::vector<double> dual_cell_overlap; // |zeta ∩ T|, aligned with dual_cell_ids

    // Per-edge stencil for the vorticity-flux groups of the momentum tendency:
    // for edge (i,j) and each dual vertex side, the other edge of T_i and of
    // T_j meeting that vertex, its orientation relative to the owning cell,
    // the opposite cell across it, and the kite overlap of the owning cell.
    struct FluxStencil {
        int edge;        // e.g. e_{i i_-}
        int sign;        // +1 if that edge's normal points out of the owning cell
        int opposite;    // e.g. cell i_-
        double overlap;  // |zeta ∩ T_owner|
    };
    struct EdgeStencil {
        FluxStencil i_minus, j_minus, i_plus, j_plus;
    };
    std::vector<EdgeStencil> edge_stencil;

    double min_edge_len = 0.0;
    double max_edge_len = 0.0;

    double total_area() const { return 4.0 * M_PI * radius * radius; }
};

/// Builds the mesh by recursive edge bisection of the regular icosahedron
/// (vertices at the poles), projecting new vertices to the sphere.  Entity
/// numbering follows the recursive subdivision order, so two builds at the
/// same level are bit-identical.
Mesh build_icosahedral_mesh(int level, double radius, int max_level = 8);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    std::string summary() const;
};

/// Runs every mesh invariant check and reports worst-case residuals.
ValidationReport validate_mesh(const Mesh& m);

/// Plain-text mesh dump, magic line "SPHEROMESH v1".
void write_mesh_text(const Mesh& m, std::ostream& os);

// -- spherical geometry helpers (unit-sphere inputs) --

/// Signed area of the spherical triangle (a,b,c) on the unit sphere.
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Area of a simple spherical polygon given by unit vertices (fan sum, |.|).
double spherical_polygon_area(const std::vector<Vec3>& v);

/// Great-circle arc length between unit vectors.
double arc_length(const Vec3& a, const Vec3& b);

/// Component of v tangent to the sphere at unit direction rhat.
inline Vec3 tangent_project(const Vec3& v, const Vec3& rhat) {
    return v - rhat.dot(v) * rhat;
}

} // namespace rswlu
