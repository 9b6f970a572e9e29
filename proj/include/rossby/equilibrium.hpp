#pragma once

// Thomas-Fermi equilibria of the rotating anharmonic trap. Lengths in a_ho,
// chemical potential in hbar*omega_perp, density in n_inf = beta hbar omega_perp / (2 g).
//
// n0(r) / n_inf = (R_+^2 - r^2)(r^2 - R_-^2), clipped at zero.
//
// n_inf is the prefactor of that quartic, not the profile maximum; see
// profile_peak() for the actual maximum (which exceeds n_inf in deep annuli).

namespace rossby {

struct TfEquilibrium {
    double mu = 0.0;
    double omega_ratio = 0.0;
    double beta = 0.0;
    double r_plus_sq = 0.0;
    double r_minus_sq = 0.0;  ///< negative when R_- is imaginary (mu > 0)

    [[nodiscard]] bool is_annulus() const { return mu < 0.0; }
    [[nodiscard]] double r_plus() const;
    /// Inner radius of the support: R_- for an annulus, 0 otherwise.
    [[nodiscard]] double r_inner() const;
};

[[nodiscard]] TfEquilibrium tf_radii(double mu, double omega_ratio, double beta);

[[nodiscard]] double tf_profile(double r, const TfEquilibrium& eq);

/// d ln n0 / dr in 1/a_ho; only defined strictly inside the support.
[[nodiscard]] double log_density_gradient(double r, const TfEquilibrium& eq);

/// Local drift speed v_R / c_s = -2 Omega r0^2 d(ln n0)/dr / c_s = -Ro * d(ln n0)/dr[1/a_ho].
[[nodiscard]] double local_drift_speed(double r, const TfEquilibrium& eq, double rossby_number);

struct ProfilePeak {
    double r = 0.0;
    double density = 0.0;  ///< in n_inf
};

[[nodiscard]] ProfilePeak profile_peak(const TfEquilibrium& eq);

}  // namespace rossby
