#include "rossby/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rossby/error.hpp"

namespace rossby {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw Error(Errc::invalid_parameter, message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void PhysicalParams::validate() const {
    require(finite_positive(omega_perp), "omega_perp must be positive");
    require(std::isfinite(Omega) && Omega >= 0.0, "Omega must be non-negative");
    require(std::isfinite(beta) && beta >= 0.0, "beta must be non-negative");
    require(!(Omega >= omega_perp && beta <= 0.0),
            "beta must be positive when Omega >= omega_perp (potential unbounded)");
    require(finite_positive(g_int), "g_int must be positive");
    require(finite_positive(mass), "mass must be positive");
    require(finite_positive(hbar), "hbar must be positive");
    require(std::isfinite(mu), "mu must be finite");
}

DerivedScales derive_scales(const PhysicalParams& p) {
    p.validate();
    // The density prefactor scales with beta; without it c_s, xi and r0 vanish.
    require(p.beta > 0.0, "beta must be positive to fix the density scale");
    if (p.Omega <= 0.0) throw Error(Errc::undefined_quantity, "r0 undefined for Omega = 0");

    DerivedScales s;
    s.a_ho = std::sqrt(p.hbar / (p.mass * p.omega_perp));
    s.n_inf = p.beta * p.hbar * p.omega_perp / (2.0 * p.g_int);
    s.c_s = std::sqrt(p.g_int * s.n_inf / p.mass);
    s.xi = p.hbar / std::sqrt(2.0 * p.mass * p.g_int * s.n_inf);
    s.r0 = s.c_s / (2.0 * p.Omega);
    s.rossby = s.r0 / s.a_ho;
    return s;
}

PhysicalParams params_from_scales(double c_s, double omega_perp, double Omega, double a_ho,
                                  double g_int, double mu) {
    require(finite_positive(c_s), "c_s must be positive");
    require(finite_positive(a_ho), "a_ho must be positive");
    require(finite_positive(omega_perp), "omega_perp must be positive");
    PhysicalParams p;
    p.omega_perp = omega_perp;
    p.Omega = Omega;
    p.g_int = g_int;
    p.mu = mu;
    p.mass = p.hbar / (omega_perp * a_ho * a_ho);
    // c_s^2 = g n_inf / m = beta hbar omega_perp / (2 m)
    p.beta = 2.0 * p.mass * c_s * c_s / (p.hbar * omega_perp);
    p.validate();
    return p;
}

double effective_potential(double r, double omega_ratio, double beta) {
    if (!(r >= 0.0)) throw Error(Errc::invalid_argument, "radius must be non-negative");
    if (omega_ratio > 1.0 && beta <= 0.0)
        throw Error(Errc::invalid_parameter, "potential unbounded below: Omega > omega_perp with beta = 0");
    const double r2 = r * r;
    return 0.5 * ((1.0 - omega_ratio * omega_ratio) * r2 + beta * r2 * r2);
}

double effective_potential(double r, const PhysicalParams& p) {
    p.validate();
    return effective_potential(r, p.omega_ratio(), p.beta);
}

UnitConverter::UnitConverter(const PhysicalParams& p, const DerivedScales& s)
    : omega_perp_(p.omega_perp), a_ho_(s.a_ho), r0_(s.r0), c_s_(s.c_s) {
    require(finite_positive(a_ho_) && finite_positive(r0_) && finite_positive(c_s_),
            "derived scales must be positive");
}

ParameterFile parse_parameter_file(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::config, std::string("parameter file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::config, "parameter file must be a JSON object");

    ParameterFile out;
    for (const auto& [key, value] : doc.items()) {
        std::optional<double>* slot = nullptr;
        if (key == "omega_perp_hz") slot = &out.omega_perp_hz;
        else if (key == "omega_ratio") slot = &out.omega_ratio;
        else if (key == "beta") slot = &out.beta;
        else if (key == "mu_hbar_omega") slot = &out.mu_hbar_omega;
        else if (key == "xi_over_r0") slot = &out.xi_over_r0;
        else if (key == "v_r_over_cs") slot = &out.v_r_over_cs;
        else throw Error(Errc::config, "unknown parameter key '" + key + "'");

        if (!value.is_number())
            throw Error(Errc::config, "parameter '" + key + "' must be numeric");
        *slot = value.get<double>();
    }
    return out;
}

ParameterFile load_parameter_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open parameter file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_parameter_file(buf.str());
}

}  // namespace rossby
