#pragma once

#include <functional>
#include <random>
#include <string>

#include "rswlu/diagnostics.hpp"
#include "rswlu/fields.hpp"
#include "rswlu/mesh.hpp"
#include "rswlu/noise.hpp"
#include "rswlu/rsw.hpp"
#include "rswlu/stabilization.hpp"

namespace rswlu {

enum class TimeScheme { deterministic_rk3, euler_maruyama_split };

struct StepConfig {
    double dt = 0.0;  // [s]
    TimeScheme scheme = TimeScheme::deterministic_rk3;
    double cfl_guard = 0.5;
    // Blow-up envelope.
    double v_bound = 500.0;  // [m/s]
    double h_min = 0.0;      // exclusive lower bound [m]
    double h_max = 1e5;      // exclusive upper bound [m]
};

/// dt from the gravity-wave CFL guard for the given initial depth.
double cfl_dt(const Mesh& m, const PhysParams& p, const CellField& h, double cfl_guard);

/// Non-empty when dt violates the guard; the caller decides where to print.
std::string cfl_warning(const Mesh& m, const PhysParams& p, const CellField& h,
                        const StepConfig& cfg);

/// One time step.  Stage 1 advances the drift (det + stabilization,
/// continuity) with a three-stage SSP Runge-Kutta step; stage 2, in the
/// euler_maruyama_split scheme, adds the stochastic increments (Brownian part
/// and dt-proportional correction together) evaluated at the pre-step state.
/// With zero noise both schemes coincide bit for bit.
State step(const Mesh& m, const State& s, const StepConfig& cfg, const PhysParams& p,
           const StabilizationParams& stab, const NoiseModel* nm = nullptr,
           const BrownianIncrement* inc = nullptr);

struct RunResult {
    State final_state;
    DiagnosticsSeries series;
};

/// Iterates step(), sampling diagnostics every diag_cadence steps (including
/// step 0) and invoking the optional snapshot hook on the same grid.
/// Brownian increments are drawn from rng once per step in the stochastic
/// scheme.  Step errors are rethrown with the step index attached.
RunResult run(const Mesh& m, State initial, long n_steps, const StepConfig& cfg,
              const PhysParams& p, const StabilizationParams& stab,
              const NoiseModel* nm = nullptr, std::mt19937_64* rng = nullptr,
              long diag_cadence = 1,
              const std::function<void(long, double, const State&)>& hook = nullptr,
              long hook_cadence = 0);

} // namespace rswlu
