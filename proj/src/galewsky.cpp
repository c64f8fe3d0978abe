#include "rswlu/galewsky.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rswlu/errors.hpp"

namespace rswlu {

double galewsky_u(const GalewskyParams& gp, double phi) {
    if (phi <= gp.phi0 || phi >= gp.phi1) return 0.0;
    const double en = std::exp(-4.0 / ((gp.phi1 - gp.phi0) * (gp.phi1 - gp.phi0)));
    return gp.u_max / en * std::exp(1.0 / ((phi - gp.phi0) * (phi - gp.phi1)));
}

namespace {

/// Integrand of the gradient-wind balance: a u (f + tan(phi) u / a).
double balance_integrand(const GalewskyParams& gp, const PhysParams& p, double a, double phi) {
    const double u = galewsky_u(gp, phi);
    if (u == 0.0) return 0.0;
    const double f = 2.0 * p.planet_rotation * std::sin(phi);
    return a * u * (f + std::tan(phi) * u / a);
}

class BalanceIntegral {
public:
    BalanceIntegral(const GalewskyParams& gp, const PhysParams& p, double radius)
        : gp_(gp), p_(p), a_(radius) {}

    /// Integral of the balance integrand from phi0 to phi.
    double operator()(double phi) {
        if (phi <= gp_.phi0) return 0.0;
        const double upper = std::min(phi, gp_.phi1);
        const auto it = cache_.find(upper);
        if (it != cache_.end()) return it->second;
        const auto f = [&](double x) { return balance_integrand(gp_, p_, a_, x); };
        double err = 0.0;
        const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, gp_.phi0, upper, 15, 1e-12, &err);
        const double scale = std::abs(val) + a_ * gp_.u_max * 2.0 * p_.planet_rotation;
        if (!(err <= 1e-10 * scale)) {
            std::ostringstream os;
            os << "balance integral did not converge: estimated error " << err
               << " at latitude " << upper;
            throw QuadratureFailure(os.str());
        }
        cache_.emplace(upper, val);
        return val;
    }

private:
    GalewskyParams gp_;
    PhysParams p_;
    double a_;
    std::map<double, double> cache_;
};

} // namespace

State galewsky_init(const Mesh& m, const PhysParams& p, const GalewskyParams& gp) {
    if (!(gp.phi0 < gp.phi1)) throw Error("galewsky: phi0 must be below phi1");
    if (gp.u_max < 0.0) throw Error("galewsky: u_max must be non-negative");
    if (gp.mean_depth <= 0.0) throw Error("galewsky: mean depth must be positive");

    State s;
    s.V = EdgeField(m.n_edges);
    s.h = CellField(m.n_cells);

    for (int e = 0; e < m.n_edges; ++e) {
        const Vec3 rhat = m.edge_midpoint[e].normalized();
        const double phi = std::asin(rhat.z());
        const double u = galewsky_u(gp, phi);
        if (u == 0.0) {
            s.V[e] = 0.0;
            continue;
        }
        Vec3 zonal = Vec3(0, 0, 1).cross(rhat);
        zonal.normalize();
        s.V[e] = u * zonal.dot(m.edge_normal[e]);
    }

    BalanceIntegral integral(gp, p, m.radius);
    std::map<double, double> h_raw_cache;
    double mean = 0.0;
    for (int c = 0; c < m.n_cells; ++c) {
        const double phi = std::asin(m.cell_circumcenter[c].normalized().z());
        auto it = h_raw_cache.find(phi);
        double raw;
        if (it != h_raw_cache.end()) {
            raw = it->second;
        } else {
            raw = -integral(phi) / p.g;
            h_raw_cache.emplace(phi, raw);
        }
        s.h[c] = raw;
        mean += raw * m.cell_area[c];
    }
    mean /= m.total_area();
    for (int c = 0; c < m.n_cells; ++c) s.h[c] += gp.mean_depth - mean;

    if (gp.perturbation_enabled && gp.h_hat != 0.0) {
        for (int c = 0; c < m.n_cells; ++c) {
            const Vec3 rhat = m.cell_circumcenter[c].normalized();
            const double phi = std::asin(rhat.z());
            const double lambda = std::atan2(rhat.y(), rhat.x());
            const double lon_term = std::exp(-(lambda / gp.alpha) * (lambda / gp.alpha));
            const double lat_term =
                std::exp(-((gp.phi2 - phi) / gp.beta) * ((gp.phi2 - phi) / gp.beta));
            s.h[c] += gp.h_hat * std::cos(phi) * lon_term * lat_term;
        }
    }
    return s;
}

ExperimentPreset experiment_preset(const std::string& name) {
    ExperimentPreset ep;
    ep.name = name;
    if (name == "no_diff") {
        ep.theta = 0.0;
        ep.nu = 0.0;
    } else if (name == "cd") {
        ep.theta = 5e21;
        ep.nu = 0.0;
    } else if (name == "bd") {
        ep.theta = 0.0;
        ep.nu = 3.1e16;
    } else {
        throw UnknownPreset("unknown experiment preset: " + name);
    }
    return ep;
}

} // namespace rswlu
