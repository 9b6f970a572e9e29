#pragma once

// Linear Rossby-wave dispersion in wave units (lengths r0, speeds c_s).
//
//   omega(k) = -v_r k_theta (1 + xi^2 k^2 / 2) / (1 + k^2 (1 + xi^2 k^2 / 2))

#include <cmath>
#include <span>
#include <vector>

namespace rossby {

struct WaveVector {
    double k_r = 0.0;
    double k_theta = 0.0;

    [[nodiscard]] double norm_sq() const { return k_r * k_r + k_theta * k_theta; }
    [[nodiscard]] double norm() const { return std::sqrt(norm_sq()); }

    friend WaveVector operator+(WaveVector a, WaveVector b) { return {a.k_r + b.k_r, a.k_theta + b.k_theta}; }
    friend WaveVector operator-(WaveVector a, WaveVector b) { return {a.k_r - b.k_r, a.k_theta - b.k_theta}; }
    friend WaveVector operator-(WaveVector a) { return {-a.k_r, -a.k_theta}; }
    friend bool operator==(WaveVector, WaveVector) = default;
};

/// z-component of a x b.
[[nodiscard]] inline double cross_z(WaveVector a, WaveVector b) {
    return a.k_r * b.k_theta - a.k_theta * b.k_r;
}

struct ModelParams {
    double v_r = 0.0;  ///< drift speed [c_s]
    double xi = 0.0;   ///< healing length [r0]; 0 is the Thomas-Fermi limit

    void validate() const;
};

[[nodiscard]] double omega(WaveVector k, const ModelParams& m);

/// omega / k_theta, continuous through k_theta = 0.
[[nodiscard]] double zonal_phase_speed(WaveVector k, const ModelParams& m);

struct GroupVelocity {
    double cg_r = 0.0;       ///< d omega / d k_r
    double cg_theta = 0.0;   ///< d omega / d k_theta

    // Short-wavelength (k^2 >> 1) forms, reported for comparison only.
    double c_ph_short = 0.0;          ///< -v_r / k^2
    double cg_theta_short_quoted = 0.0;    ///< v_r (2 k_theta/k - 1) / k^2, the commonly quoted form
    double cg_theta_short_gradient = 0.0;  ///< v_r (2 k_theta^2/k^2 - 1) / k^2, gradient of -v_r k_theta/k^2
};

/// Analytic gradient of omega. Throws Error(undefined_quantity) at k = 0.
[[nodiscard]] GroupVelocity group_velocity(WaveVector k, const ModelParams& m);

struct DispersionRow {
    WaveVector k;
    double omega = 0.0;
    double c_ph_zonal = 0.0;
    double cg_r = 0.0;
    double cg_theta = 0.0;
};

/// One row per input wave vector, same order. At k = 0 the group velocity
/// is the long-wavelength limit (0, -v_r).
[[nodiscard]] std::vector<DispersionRow> dispersion_scan(std::span<const WaveVector> ks,
                                                         const ModelParams& m);

}  // namespace rossby
