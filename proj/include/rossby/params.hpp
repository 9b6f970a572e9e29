#pragma once

// Physical inputs of the rotating-condensate model and the characteristic
// scales derived from them.
//
// Two dimensionless systems are used downstream:
//   equilibrium: lengths in a_ho, energies in hbar*omega_perp, frequencies in omega_perp
//   wave:        lengths in r0,   speeds in c_s,             times in r0/c_s
// Only this module touches SI values.

#include <filesystem>
#include <optional>
#include <string_view>

namespace rossby {

inline constexpr double kHbarSI = 1.054571817e-34;  // J s
inline constexpr double kPi = 3.14159265358979323846;

struct PhysicalParams {
    double omega_perp = 0.0;  ///< transverse trap frequency [rad/s]
    double Omega = 0.0;       ///< rotation rate [rad/s]
    double beta = 0.0;        ///< quartic anharmonicity, dimensionless
    double g_int = 0.0;       ///< contact interaction strength [J m^3]
    double mass = 0.0;        ///< atomic mass [kg]
    double hbar = kHbarSI;    ///< [J s]
    double mu = 0.0;          ///< chemical potential [hbar*omega_perp], signed

    [[nodiscard]] double omega_ratio() const { return Omega / omega_perp; }

    /// Throws Error(invalid_parameter) naming the first violated invariant.
    void validate() const;
};

struct DerivedScales {
    double a_ho = 0.0;    ///< sqrt(hbar / (m omega_perp)) [m]
    double c_s = 0.0;     ///< sqrt(g n_inf / m) [m/s]
    double xi = 0.0;      ///< healing length hbar / sqrt(2 m g n_inf) [m]
    double r0 = 0.0;      ///< Rossby radius c_s / (2 Omega) [m]
    double n_inf = 0.0;   ///< quartic density prefactor beta hbar omega_perp / (2 g) [1/m^3]
    double rossby = 0.0;  ///< r0 / a_ho
    std::optional<double> v_r;  ///< drift speed [m/s], once an equilibrium gradient is fixed

    [[nodiscard]] double xi_over_r0() const { return xi / r0; }
};

[[nodiscard]] DerivedScales derive_scales(const PhysicalParams& p);

/// Builds SI parameters reproducing a prescribed sound speed and oscillator
/// length. The atomic species is left implicit: mass follows from a_ho and
/// beta from c_s.
[[nodiscard]] PhysicalParams params_from_scales(double c_s, double omega_perp, double Omega,
                                                double a_ho, double g_int, double mu = 0.0);

/// Effective trap potential in hbar*omega_perp with r in a_ho:
///   V(r) = ((1 - Omega^2/omega_perp^2) r^2 + beta r^4) / 2
[[nodiscard]] double effective_potential(double r, double omega_ratio, double beta);
[[nodiscard]] double effective_potential(double r, const PhysicalParams& p);

/// Converts between the equilibrium (a_ho, omega_perp) and wave (r0, c_s) unit systems.
class UnitConverter {
public:
    UnitConverter(const PhysicalParams& p, const DerivedScales& s);

    [[nodiscard]] double aho_to_r0(double length) const { return length * a_ho_ / r0_; }
    [[nodiscard]] double r0_to_aho(double length) const { return length * r0_ / a_ho_; }

    /// Frequency in omega_perp -> frequency in c_s/r0.
    [[nodiscard]] double trap_to_wave_frequency(double f) const { return f * omega_perp_ * r0_ / c_s_; }
    [[nodiscard]] double wave_to_trap_frequency(double f) const { return f * c_s_ / (omega_perp_ * r0_); }

    /// Inverse length in 1/a_ho -> 1/r0 (wave numbers, log-density gradients).
    [[nodiscard]] double aho_inv_to_r0_inv(double k) const { return k * r0_ / a_ho_; }

    [[nodiscard]] double r0_to_si(double length) const { return length * r0_; }
    [[nodiscard]] double aho_to_si(double length) const { return length * a_ho_; }
    [[nodiscard]] double cs_to_si(double speed) const { return speed * c_s_; }
    [[nodiscard]] double wave_time_to_si(double t) const { return t * r0_ / c_s_; }

private:
    double omega_perp_;
    double a_ho_;
    double r0_;
    double c_s_;
};

/// Dimensionless parameter file. Every key is optional; unknown keys and
/// non-numeric values are rejected.
struct ParameterFile {
    std::optional<double> omega_perp_hz;
    std::optional<double> omega_ratio;
    std::optional<double> beta;
    std::optional<double> mu_hbar_omega;
    std::optional<double> xi_over_r0;
    std::optional<double> v_r_over_cs;
};

[[nodiscard]] ParameterFile parse_parameter_file(std::string_view json_text);
[[nodiscard]] ParameterFile load_parameter_file(const std::filesystem::path& path);

}  // namespace rossby
