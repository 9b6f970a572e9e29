#include "rossby/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "rossby/error.hpp"

namespace rossby {

double TfEquilibrium::r_plus() const { return std::sqrt(r_plus_sq); }

double TfEquilibrium::r_inner() const { return r_minus_sq > 0.0 ? std::sqrt(r_minus_sq) : 0.0; }

TfEquilibrium tf_radii(double mu, double omega_ratio, double beta) {
    if (!(std::isfinite(beta) && beta > 0.0))
        throw Error(Errc::invalid_parameter, "beta must be positive");
    if (!std::isfinite(mu) || !(std::isfinite(omega_ratio) && omega_ratio >= 0.0))
        throw Error(Errc::invalid_parameter, "mu and omega_ratio must be finite, omega_ratio >= 0");

    const double a = (omega_ratio * omega_ratio - 1.0) / (2.0 * beta);
    const double disc = a * a + 2.0 * mu / beta;
    if (disc < 0.0) throw Error(Errc::no_equilibrium, "negative discriminant: no Thomas-Fermi equilibrium");

    const double root = std::sqrt(disc);
    TfEquilibrium eq{mu, omega_ratio, beta, a + root, a - root};
    if (mu == 0.0) eq.r_minus_sq = 0.0;
    if (eq.r_plus_sq <= 0.0) throw Error(Errc::empty_cloud, "R_+^2 <= 0: empty cloud");
    return eq;
}

double tf_profile(double r, const TfEquilibrium& eq) {
    const double r2 = r * r;
    return std::max(0.0, (eq.r_plus_sq - r2) * (r2 - eq.r_minus_sq));
}

double log_density_gradient(double r, const TfEquilibrium& eq) {
    const double r2 = r * r;
    const double outer = eq.r_plus_sq - r2;
    const double inner = r2 - eq.r_minus_sq;
    if (!(r >= 0.0) || !(outer > 0.0) || !(inner > 0.0))
        throw Error(Errc::singular_gradient, "log-density gradient requested outside the open support");
    return -2.0 * r / outer + 2.0 * r / inner;
}

double local_drift_speed(double r, const TfEquilibrium& eq, double rossby_number) {
    return -rossby_number * log_density_gradient(r, eq);
}

ProfilePeak profile_peak(const TfEquilibrium& eq) {
    // n(s) = -(s - R+^2)(s - R-^2) in s = r^2 peaks at the midpoint
    const double s = 0.5 * (eq.r_plus_sq + eq.r_minus_sq);
    if (s <= 0.0) return {0.0, tf_profile(0.0, eq)};
    return {std::sqrt(s), tf_profile(std::sqrt(s), eq)};
}

}  // namespace rossby
