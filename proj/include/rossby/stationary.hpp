#pragma once

// Axisymmetric stationary structures phi(r) = A J0(kappa r) + B Y0(kappa r)
// that vanish on the Thomas-Fermi boundary, and a polar-grid residual of the
// generalized stationarity condition
//
//   (1 + xi^2/2 lap) {phi, lap phi} - (xi^2/2) {phi, lap^2 phi} = 0,
//   {a, b} = (d_r a d_theta b - d_r b d_theta a) / r.
//
// Lengths in a_ho.

#include <span>
#include <vector>

#include "rossby/equilibrium.hpp"

namespace rossby {

struct StationaryStructure {
    double kappa = 0.0;    ///< [1/a_ho]
    double a_coef = 0.0;
    double b_coef = 0.0;   ///< zero for the disk
    double r_inner = 0.0;  ///< R_- for an annulus, 0 for a disk
    double r_outer = 0.0;  ///< R_+
    int mode_index = 1;    ///< n-th root; the mode has n-1 interior nodes
};

/// Regular J0 mode on a disk (mu > 0): kappa = j_{0,n} / R_+, B = 0, A = 1.
[[nodiscard]] StationaryStructure solve_disk_mode(const TfEquilibrium& eq, int mode_index = 1);

/// J0/Y0 mode on the annulus R_- < r < R_+ (mu < 0), normalized to max |phi| = 1.
[[nodiscard]] StationaryStructure solve_annulus_mode(const TfEquilibrium& eq, int mode_index = 1);

/// D(kappa) = J0(kappa R_-) Y0(kappa R_+) - J0(kappa R_+) Y0(kappa R_-).
[[nodiscard]] double annulus_determinant(double kappa, double r_inner, double r_outer);

[[nodiscard]] double evaluate_structure(const StationaryStructure& s, double r);
[[nodiscard]] std::vector<double> evaluate_structure(const StationaryStructure& s,
                                                     std::span<const double> r_grid);

/// Sign changes of phi on a uniform sampling of the open support.
[[nodiscard]] int interior_sign_changes(const StationaryStructure& s, int samples = 4000);

/// Field on a regular (r, theta) grid; theta_j = 2 pi j / n_theta, r_i = r_min + i dr.
class PolarField {
public:
    PolarField(double r_min, double r_max, int n_r, int n_theta);

    [[nodiscard]] int n_r() const { return n_r_; }
    [[nodiscard]] int n_theta() const { return n_theta_; }
    [[nodiscard]] double r(int i) const { return r_min_ + i * dr_; }
    [[nodiscard]] double theta(int j) const;
    [[nodiscard]] double dr() const { return dr_; }
    [[nodiscard]] double dtheta() const;

    [[nodiscard]] double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * n_theta_ + j]; }
    [[nodiscard]] double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_theta_ + j]; }

    [[nodiscard]] bool same_grid(const PolarField& other) const;

private:
    double r_min_, r_max_;
    int n_r_, n_theta_;
    double dr_;
    std::vector<double> values_;
};

/// Samples s revolved in theta over its support.
[[nodiscard]] PolarField structure_field(const StationaryStructure& s, int n_r, int n_theta);

/// Max-norm of the discretized stationarity residual over the interior rings
/// where every nested 4th-order stencil fits. Needs >= 16 points per axis.
[[nodiscard]] double stationarity_residual(const PolarField& phi, double xi);

/// Max-norm of the discretized bracket {a, b} over rings where it is defined.
[[nodiscard]] double poisson_bracket_norm(const PolarField& a, const PolarField& b);

}  // namespace rossby
