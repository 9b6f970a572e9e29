#pragma once

// Quadratic invariants, spectra and real-space velocity reconstructions for
// the spectral model. Wave units throughout (r0 = c_s = 1, 2 Omega = 1).
//
// Transform convention: phi(x) = sum_k phi_k exp(i k.x), and the forward
// transform is the grid sum divided by the number of grid points, so
// sum_k |phi_k|^2 equals the grid mean of phi^2.

#include <vector>

#include "rossby/dispersion.hpp"
#include "rossby/spectral.hpp"

namespace rossby {

struct Invariants {
    double energy = 0.0;      ///< E    = sum (1 + k^2) |phi_k|^2
    double enstrophy = 0.0;   ///< Z    = sum k^2 (1 + k^2) |phi_k|^2
    double energy_xi = 0.0;   ///< E_xi = sum (1 + k^2 + xi^2 k^4 / 2) |phi_k|^2
};

[[nodiscard]] Invariants energy_enstrophy(const SpectralState& state);

/// sum_k |phi_k|^2 over retained modes.
[[nodiscard]] double total_power(const SpectralState& state);

[[nodiscard]] double max_amplitude(const SpectralState& state);

struct ZonalBin {
    double k_theta = 0.0;
    double power = 0.0;
};

/// Power summed over k_r at each retained k_theta, ascending in k_theta.
[[nodiscard]] std::vector<ZonalBin> zonal_spectrum(const SpectralState& state);

/// Real field phi = delta n / n_inf on a periodic n x n grid with spacing dx.
struct FieldSnapshot {
    int n = 0;
    double dx = 0.0;
    std::vector<double> phi;  ///< row-major, phi[i * n + j] at x = i dx, y = j dx
    ModelParams params;

    [[nodiscard]] double& at(int i, int j) { return phi[static_cast<std::size_t>(i) * n + j]; }
    [[nodiscard]] double at(int i, int j) const { return phi[static_cast<std::size_t>(i) * n + j]; }
    [[nodiscard]] double x(int i) const { return i * dx; }
};

[[nodiscard]] FieldSnapshot make_snapshot(int n, double length, const ModelParams& params);

/// Inverse transform of a spectral state onto its n_modes x n_modes grid (period 2 pi / dk).
[[nodiscard]] FieldSnapshot to_field(const SpectralState& state);
/// Forward transform of raw lattice amplitudes (same convention as SpectralState).
[[nodiscard]] FieldSnapshot to_field(const std::vector<Complex>& amplitudes, const ModeGrid& grid,
                                     const ModelParams& params);

struct VectorField {
    int n = 0;
    std::vector<double> x, y;
};

/// S = -grad phi + (xi^2/2) grad(lap phi), 4th-order periodic differences.
[[nodiscard]] VectorField s_field(const FieldSnapshot& snap);

/// Zeroth-order drift velocity v0 = z x S / (2 Omega).
[[nodiscard]] VectorField drift_velocity_field(const FieldSnapshot& snap);

/// v_p = (1/4 Omega^2) dS/dt + (1/8 Omega^3) ((z x S) . grad) S.
/// This sign makes the continuity balance reproduce omega(k) and Lambda;
/// the opposite sign would give (1 - k^2) d phi/dt in the linear limit.
[[nodiscard]] VectorField polarization_velocity_field(const FieldSnapshot& snap, const FieldSnapshot& dphi_dt);

[[nodiscard]] VectorField gradient(const FieldSnapshot& snap);
[[nodiscard]] std::vector<double> divergence(const VectorField& v, double dx);

/// Pointwise d phi/dt + v0 . (grad phi + g x_hat) + div v_p, where the
/// background log-density gradient g = d ln n0 / dr equals -v_r in wave units.
[[nodiscard]] std::vector<double> continuity_residual(const FieldSnapshot& snap, const FieldSnapshot& dphi_dt);

}  // namespace rossby
