#include <doctest.h>

#include <cmath>
#include <random>

#include "rswlu/diagnostics.hpp"
#include "rswlu/errors.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/operators.hpp"
#include "rswlu/rsw.hpp"
#include "test_util.hpp"

using namespace rswlu;
using namespace rswlu::testutil;

namespace {

// Chain-rule energy tendency under (det, continuity).  The V-gradient and
// h-gradient of the energy are evaluated directly from its definition.
struct EnergyPairing {
    double flux_v = 0.0;
    double flux_h = 0.0;
    double total() const { return flux_v + flux_h; }
    double scale() const { return std::max({std::abs(flux_v), std::abs(flux_h), 1e-300}); }
};

EnergyPairing energy_pairing(const Mesh& m, const State& s, const PhysParams& p,
                             const EdgeField& dv, const CellField& dh) {
    EnergyPairing out;
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    for (int e = 0; e < m.n_edges; ++e) {
        const double w = m.primal_edge_len[e] * m.dual_edge_len[e];
        out.flux_v += w * h_bar[e] * s.V[e] * dv[e];
    }
    for (int c = 0; c < m.n_cells; ++c) {
        double dEdh = p.g * (s.h[c] + p.eta_b_at(c)) * m.cell_area[c];
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            dEdh += 0.25 * m.primal_edge_len[e] * m.dual_edge_len[e] * s.V[e] * s.V[e];
        }
        out.flux_h += dEdh * dh[c];
    }
    return out;
}

} // namespace

TEST_CASE("energy gradients match finite differences of total_energy") {
    std::mt19937_64 rng(21);
    const Mesh m = build_icosahedral_mesh(1, 1.0);
    PhysParams p;
    p.g = 9.81;
    p.planet_rotation = 1e-4;
    State s = random_state(m, rng, 100.0, 10.0, 2.0);

    // Spot-check a handful of entries against central differences.
    for (int e : {0, 5, 17}) {
        const double eps = 1e-4;
        State sp = s, sm = s;
        sp.V[e] += eps;
        sm.V[e] -= eps;
        const double fd = (total_energy(m, sp, p) - total_energy(m, sm, p)) / (2 * eps);
        const double w = m.primal_edge_len[e] * m.dual_edge_len[e];
        const double analytic = w * 0.5 * (s.h[m.edge_cells[e][0]] + s.h[m.edge_cells[e][1]]) * s.V[e];
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-5));
    }
    for (int c : {0, 9}) {
        const double eps = 1e-4;
        State sp = s, sm = s;
        sp.h[c] += eps;
        sm.h[c] -= eps;
        const double fd = (total_energy(m, sp, p) - total_energy(m, sm, p)) / (2 * eps);
        double analytic = p.g * s.h[c] * m.cell_area[c];
        for (int k = 0; k < 3; ++k) {
            const int e = m.cell_edges[c][k];
            analytic += 0.25 * m.primal_edge_len[e] * m.dual_edge_len[e] * s.V[e] * s.V[e];
        }
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-5));
    }
}

TEST_CASE("rest state is steady") {
    const Mesh m = build_icosahedral_mesh(2, 6.371229e6);
    PhysParams p;
    State s{EdgeField(m.n_edges, 0.0), CellField(m.n_cells, 1000.0)};
    const EdgeField dv = det_tendency(m, s, p);
    const CellField dh = continuity_tendency(m, s);
    for (int e = 0; e < m.n_edges; ++e) CHECK(dv[e] == 0.0);
    for (int c = 0; c < m.n_cells; ++c) CHECK(dh[c] == 0.0);
}

TEST_CASE("rest state with topography-compensated surface is steady") {
    const Mesh m = build_icosahedral_mesh(2, 1.0);
    PhysParams p;
    p.eta_b = CellField(m.n_cells);
    State s{EdgeField(m.n_edges, 0.0), CellField(m.n_cells)};
    for (int c = 0; c < m.n_cells; ++c) {
        p.eta_b[c] = 10.0 * m.cell_circumcenter[c].z();
        s.h[c] = 500.0 - p.eta_b[c];
    }
    const EdgeField dv = det_tendency(m, s, p);
    double worst = 0.0;
    for (int e = 0; e < m.n_edges; ++e) worst = std::max(worst, std::abs(dv[e]));
    CHECK(worst < 1e-12);
}

TEST_CASE("pressure-only tendency reduces to -g grad_n h") {
    const Mesh m = build_icosahedral_mesh(2, 1.0);
    PhysParams p;
    p.planet_rotation = 0.0;
    State s;
    s.V = EdgeField(m.n_edges, 0.0);
    s.h = CellField(m.n_cells);
    for (int c = 0; c < m.n_cells; ++c)
        s.h[c] = 100.0 + 5.0 * m.cell_circumcenter[c].z() * m.cell_circumcenter[c].x();
    const EdgeField dv = det_tendency(m, s, p);
    const EdgeField gh = grad_n(m, s.h);
    for (int e = 0; e < m.n_edges; ++e)
        CHECK(dv[e] == doctest::Approx(-p.g * gh[e]).epsilon(1e-13));
}

TEST_CASE("potential vorticity of rest states and solid rotation") {
    const Mesh m = build_icosahedral_mesh(3, 6.371229e6);
    PhysParams p;
    const double H = 8000.0;

    State rest{EdgeField(m.n_edges, 0.0), CellField(m.n_cells, H)};
    const DualField q = potential_vorticity(m, rest, p);
    for (int d = 0; d < m.n_duals; ++d) {
        const double f = 2.0 * p.planet_rotation * m.dual_center[d].normalized().z();
        CHECK(q[d] == doctest::Approx(f / H).epsilon(1e-12));
    }

    const double om = 2.0e-6;
    State rot{rigid_rotation_edge_field(m, Vec3(0, 0, om)), CellField(m.n_cells, H)};
    const DualField q2 = potential_vorticity(m, rot, p);
    const double q_scale = 2.0 * (om + p.planet_rotation) / H;
    double worst = 0.0;
    for (int d = 0; d < m.n_duals; ++d) {
        const double sin_lat = m.dual_center[d].normalized().z();
        const double expect = (2.0 * om * sin_lat + 2.0 * p.planet_rotation * sin_lat) / H;
        worst = std::max(worst, std::abs(q2[d] - expect) / q_scale);
    }
    CHECK(worst < 0.01);
}

TEST_CASE("degenerate depth raises") {
    const Mesh m = build_icosahedral_mesh(1, 1.0);
    PhysParams p;
    State s{EdgeField(m.n_edges, 0.0), CellField(m.n_cells, 1e-9)};
    CHECK_THROWS_AS(potential_vorticity(m, s, p), DegenerateDepth);
}

TEST_CASE("continuity conserves mass exactly and matches the uniform-depth oracle") {
    std::mt19937_64 rng(33);
    const Mesh m = build_icosahedral_mesh(2, 1.0);
    const State s = random_state(m, rng);
    const CellField dh = continuity_tendency(m, s);
    double sum = 0.0, scale = 0.0;
    for (int c = 0; c < m.n_cells; ++c) {
        sum += m.cell_area[c] * dh[c];
        scale += std::abs(m.cell_area[c] * dh[c]);
    }
    CHECK(std::abs(sum) / scale < 1e-13);

    const double H = 750.0;
    State uni{s.V, CellField(m.n_cells, H)};
    const CellField dhu = continuity_tendency(m, uni);
    const CellField dv = divergence(m, uni.V);
    for (int c = 0; c < m.n_cells; ++c)
        CHECK(dhu[c] == doctest::Approx(-H * dv[c]).epsilon(1e-12));
}

TEST_CASE("semi-discrete energy conservation for random states") {
    std::mt19937_64 rng(55);
    const Mesh m = build_icosahedral_mesh(2, 6.371229e6);
    PhysParams p;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const State s = random_state(m, rng, 1000.0, 150.0, 20.0);
        const EdgeField dv = det_tendency(m, s, p);
        const CellField dh = continuity_tendency(m, s);
        const EnergyPairing pair = energy_pairing(m, s, p, dv, dh);
        worst = std::max(worst, std::abs(pair.total()) / pair.scale());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("vorticity groups do no work with constant depth and no rotation") {
    std::mt19937_64 rng(77);
    const Mesh m = build_icosahedral_mesh(2, 1.0);
    PhysParams p;
    p.planet_rotation = 0.0;
    State s;
    // Divergence-free velocity (grad_t of a random streamfunction), so the
    // kinetic-energy gradient group pairs to zero and the full pairing
    // isolates the vorticity-group antisymmetry.
    s.V = grad_t(m, random_dual_field(m, rng, 4.0));
    s.h = CellField(m.n_cells, 3.0);
    const EdgeField dv = det_tendency(m, s, p);
    const EdgeField h_bar = edge_mean_depth(m, s.h);
    double sum = 0.0, scale = 0.0;
    for (int e = 0; e < m.n_edges; ++e) {
        const double w = m.primal_edge_len[e] * m.dual_edge_len[e] * h_bar[e];
        sum += w * s.V[e] * dv[e];
        scale += std::abs(w * s.V[e] * dv[e]);
    }
    CHECK(std::abs(sum) / scale < 1e-12);
}
