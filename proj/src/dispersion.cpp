#include "rossby/dispersion.hpp"

#include <string>

#include "rossby/error.hpp"

namespace rossby {

namespace {

// omega = -v_r k_theta h(s), s = k^2
struct Shape {
    double h;       // (1 + xi^2 s/2) / (1 + s + xi^2 s^2/2)
    double dh_ds;
};

Shape shape(double s, double xi) {
    const double x2 = xi * xi;
    const double num = 1.0 + 0.5 * x2 * s;
    const double den = 1.0 + s * num;
    const double dden = 1.0 + x2 * s;
    return {num / den, (0.5 * x2 * den - num * dden) / (den * den)};
}

}  // namespace

void ModelParams::validate() const {
    if (!std::isfinite(v_r)) throw Error(Errc::invalid_parameter, "v_r must be finite");
    if (!(std::isfinite(xi) && xi >= 0.0))
        throw Error(Errc::invalid_parameter, "xi must be finite and non-negative");
}

double omega(WaveVector k, const ModelParams& m) {
    return -m.v_r * k.k_theta * shape(k.norm_sq(), m.xi).h;
}

double zonal_phase_speed(WaveVector k, const ModelParams& m) {
    return -m.v_r * shape(k.norm_sq(), m.xi).h;
}

GroupVelocity group_velocity(WaveVector k, const ModelParams& m) {
    const double s = k.norm_sq();
    if (s == 0.0) throw Error(Errc::undefined_quantity, "group velocity undefined at k = 0");
    const auto [h, dh] = shape(s, m.xi);

    GroupVelocity g;
    g.cg_r = -m.v_r * k.k_theta * dh * 2.0 * k.k_r;
    g.cg_theta = -m.v_r * (h + 2.0 * k.k_theta * k.k_theta * dh);

    const double kn = std::sqrt(s);
    g.c_ph_short = -m.v_r / s;
    g.cg_theta_short_quoted = m.v_r * (2.0 * k.k_theta / kn - 1.0) / s;
    g.cg_theta_short_gradient = m.v_r * (2.0 * k.k_theta * k.k_theta / s - 1.0) / s;
    return g;
}

std::vector<DispersionRow> dispersion_scan(std::span<const WaveVector> ks, const ModelParams& m) {
    if (ks.empty()) throw Error(Errc::invalid_argument, "dispersion scan needs at least one wave vector");
    m.validate();
    std::vector<DispersionRow> rows;
    rows.reserve(ks.size());
    for (const WaveVector& k : ks) {
        DispersionRow row{k, omega(k, m), zonal_phase_speed(k, m), 0.0, -m.v_r};
        if (k.norm_sq() > 0.0) {
            const GroupVelocity g = group_velocity(k, m);
            row.cg_r = g.cg_r;
            row.cg_theta = g.cg_theta;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rossby
