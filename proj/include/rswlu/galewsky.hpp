#pragma once

#include <string>

#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/rsw.hpp"

namespace rswlu {

/// Barotropically unstable mid-latitude jet with an optional height bump
/// that triggers the instability.
struct GalewskyParams {
    double u_max = 80.0;                    // [m/s]
    double phi0 = M_PI / 7.0;               // jet band [rad]
    double phi1 = M_PI / 2.0 - M_PI / 7.0;
    double mean_depth = 10000.0;            // area-mean depth [m]
    double h_hat = 120.0;                   // perturbation amplitude [m]
    double alpha = 1.0 / 3.0;               // longitude width
    double beta = 1.0 / 15.0;               // latitude width
    double phi2 = M_PI / 4.0;               // perturbation center latitude
    bool perturbation_enabled = true;
};

/// Zonal jet profile u(phi); C-infinity bump supported on (phi0, phi1).
double galewsky_u(const GalewskyParams& gp, double phi);

/// Samples edge-normal velocities at edge midpoints and integrates the
/// gradient-wind balance for the depth by adaptive quadrature (relative
/// tolerance 1e-10, memoized per unique cell latitude); the integration
/// constant is fixed so the area-mean depth equals mean_depth.
State galewsky_init(const Mesh& m, const PhysParams& p, const GalewskyParams& gp);

/// Run protocol presets matching the three experiment arms.
struct ExperimentPreset {
    std::string name;
    double theta = 0.0;  // [m^5 s]
    double nu = 0.0;     // [m^4/s]
    int mesh_level = 5;
    int members = 20;
    double days = 12.0;
    bool noise = true;
};

/// Known names: "no_diff", "cd" (theta = 5e21), "bd" (nu = 3.1e16).
ExperimentPreset experiment_preset(const std::string& name);

} // namespace rswlu
