#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/rsw.hpp"

namespace rswlu {

enum class NoiseMode { homogeneous, inhomogeneous, file };

struct NoiseConfig {
    NoiseMode mode = NoiseMode::homogeneous;
    int n_modes = 6;
    double amplitude = 1.0;  // velocity scale per unit Brownian rate [m/s]
    int lmax = 2;            // highest stream-function degree for built-in modes
    // Latitude envelope, applied in inhomogeneous mode:
    // env(lat) = floor + (1 - floor) * exp(-((lat - center)/width)^2).
    double envelope_center_lat = M_PI / 4.0;
    double envelope_width = 0.3;
    double envelope_floor = 0.2;
    std::string path;  // basis file for file mode
};

/// Time-frozen noise basis Phi_n and its variance tensor a = sum Phi Phi^T.
/// Immutable once built; shared across ensemble members.
struct NoiseModel {
    int n_modes = 0;
    bool homogeneous = true;
    std::vector<double> amplitude;                 // per mode (already folded in)
    std::vector<CellVectorField> basis_cell;       // Phi_n at cell centers
    std::vector<std::vector<Vec3>> basis_edge;     // Phi_n at edge midpoints
    std::vector<EdgeField> basis_edge_normal;      // n . Phi_n
    std::vector<Mat3> variance_cell;               // a per cell [m^2/s]

    // Precomputed pieces of the Ito-Stokes correction (a is time-frozen):
    std::vector<Vec3> div_a_edge;  // (div a) at edge midpoints
    std::vector<Vec3> div_a_cell;  // (div a) averaged to cells
};

/// Builds the basis.  Built-in modes are rotational fields from low-degree
/// spherical-harmonic stream functions: degree 1 gives rigid rotations about
/// the six icosahedral vertex axes (an isotropic set, so the variance trace
/// is spatially uniform), degree 2 adds the five real quadratic harmonics.
NoiseModel build_noise_basis(const NoiseConfig& cfg, const Mesh& m);

/// Text format, magic "SPHERONOISE v1".
void write_noise_basis(const NoiseModel& nm, std::ostream& os);
NoiseModel load_noise_basis(std::istream& is, const Mesh& m);

struct BrownianIncrement {
    std::vector<double> dbeta;  // N draws of Normal(0, dt)
};

/// N independent Normal(0, dt) draws from the generator stream.
BrownianIncrement sample_increment(std::mt19937_64& rng, double dt, int n);

/// Total stochastic momentum increment over one step (advection by sigma dB
/// plus the dt-proportional Ito-Stokes correction), projected on edge normals.
EdgeField sto_v(const Mesh& m, const State& s, const NoiseModel& nm,
                const BrownianIncrement& inc, double dt);

/// Same recipe for the depth equation, evaluated at cell centers.
CellField sto_h(const Mesh& m, const State& s, const NoiseModel& nm,
                const BrownianIncrement& inc, double dt);

} // namespace rswlu
