#include "rswlu/integrator.hpp"

#include <cmath>
#include <sstream>

#include "rswlu/errors.hpp"

namespace rswlu {

double cfl_dt(const Mesh& m, const PhysParams& p, const CellField& h, double cfl_guard) {
    double h_max = 0.0;
    for (int c = 0; c < m.n_cells; ++c) h_max = std::max(h_max, h[c] + p.eta_b_at(c));
    return cfl_guard * m.min_edge_len / std::sqrt(p.g * h_max);
}

std::string cfl_warning(const Mesh& m, const PhysParams& p, const CellField& h,
                        const StepConfig& cfg) {
    const double limit = cfl_dt(m, p, h, cfg.cfl_guard);
    if (cfg.dt <= limit) return {};
    std::ostringstream os;
    os << "dt = " << cfg.dt << " s exceeds the CFL guard " << limit
       << " s (guard factor " << cfg.cfl_guard << ")";
    return os.str();
}

namespace {

struct Tendency {
    EdgeField dV;
    CellField dh;
};

Tendency drift(const Mesh& m, const State& s, const PhysParams& p,
               const StabilizationParams& stab) {
    Tendency t;
    t.dV = det_tendency(m, s, p);
    if (stab.theta > 0.0) {
        const EdgeField cd = cd_tendency(m, s, p);
        t.dV.add_scaled(-stab.theta, cd);
    }
    if (stab.nu > 0.0) {
        const EdgeField bd = bd_tendency(m, s.V);
        t.dV.add_scaled(-stab.nu, bd);
    }
    t.dh = continuity_tendency(m, s);
    return t;
}

State euler_stage(const Mesh& m, const State& s, double dt, const PhysParams& p,
                  const StabilizationParams& stab) {
    const Tendency t = drift(m, s, p, stab);
    State out = s;
    out.V.add_scaled(dt, t.dV);
    out.h.add_scaled(dt, t.dh);
    return out;
}

void check_envelope(const Mesh& m, const State& s, const StepConfig& cfg) {
    for (int e = 0; e < m.n_edges; ++e) {
        if (!std::isfinite(s.V[e]) || std::abs(s.V[e]) > cfg.v_bound) {
            std::ostringstream os;
            os << "velocity " << s.V[e] << " on edge " << e << " left the envelope |V| < "
               << cfg.v_bound;
            throw BlowUp(os.str(), -1);
        }
    }
    for (int c = 0; c < m.n_cells; ++c) {
        if (!std::isfinite(s.h[c]) || s.h[c] <= cfg.h_min || s.h[c] >= cfg.h_max) {
            std::ostringstream os;
            os << "depth " << s.h[c] << " on cell " << c << " left the envelope ("
               << cfg.h_min << ", " << cfg.h_max << ")";
            throw BlowUp(os.str(), -1);
        }
    }
}

} // namespace

State step(const Mesh& m, const State& s, const StepConfig& cfg, const PhysParams& p,
           const StabilizationParams& stab, const NoiseModel* nm,
           const BrownianIncrement* inc) {
    // Shu-Osher SSP RK3 for the drift.
    const State s1 = euler_stage(m, s, cfg.dt, p, stab);
    State s2 = euler_stage(m, s1, cfg.dt, p, stab);
    s2.V.set_lincomb(0.75, s.V, 0.25, s2.V);
    s2.h.set_lincomb(0.75, s.h, 0.25, s2.h);
    State out = euler_stage(m, s2, cfg.dt, p, stab);
    out.V.set_lincomb(1.0 / 3.0, s.V, 2.0 / 3.0, out.V);
    out.h.set_lincomb(1.0 / 3.0, s.h, 2.0 / 3.0, out.h);

    if (cfg.scheme == TimeScheme::euler_maruyama_split && nm != nullptr && nm->n_modes > 0) {
        if (inc == nullptr)
            throw DimensionMismatch("stochastic scheme requires a Brownian increment");
        const EdgeField dv = sto_v(m, s, *nm, *inc, cfg.dt);
        const CellField dh = sto_h(m, s, *nm, *inc, cfg.dt);
        out.V += dv;
        out.h += dh;
    }

    check_envelope(m, out, cfg);
    return out;
}

RunResult run(const Mesh& m, State initial, long n_steps, const StepConfig& cfg,
              const PhysParams& p, const StabilizationParams& stab, const NoiseModel* nm,
              std::mt19937_64* rng, long diag_cadence,
              const std::function<void(long, double, const State&)>& hook,
              long hook_cadence) {
    RunResult result;
    result.final_state = std::move(initial);
    const bool stochastic =
        cfg.scheme == TimeScheme::euler_maruyama_split && nm != nullptr && nm->n_modes > 0;

    auto sample = [&](long k) {
        const double t = k * cfg.dt;
        if (diag_cadence > 0 && k % diag_cadence == 0)
            result.series.records.push_back(
                sample_diagnostics(m, result.final_state, p, k, t));
        if (hook && hook_cadence > 0 && k % hook_cadence == 0)
            hook(k, t, result.final_state);
    };

    sample(0);
    for (long k = 1; k <= n_steps; ++k) {
        try {
            BrownianIncrement inc;
            if (stochastic) {
                if (rng == nullptr)
                    throw DimensionMismatch("stochastic run requires a seeded generator");
                inc = sample_increment(*rng, cfg.dt, nm->n_modes);
            }
            result.final_state = step(m, result.final_state, cfg, p, stab, nm,
                                      stochastic ? &inc : nullptr);
        } catch (const BlowUp& b) {
            std::ostringstream os;
            os << b.what() << " at step " << k;
            throw BlowUp(os.str(), static_cast<int>(k));
        } catch (const Error& err) {
            std::ostringstream os;
            os << err.what() << " at step " << k;
            throw Error(os.str());
        }
        sample(k);
    }
    return result;
}

} // namespace rswlu
