#pragma once

#include <stdexcept>
#include <string>

namespace rossby {

enum class Errc {
    invalid_parameter,   // physical input outside its admissible range
    invalid_argument,    // malformed call argument (negative radius, empty range, ...)
    domain_error,        // evaluation point outside a function's domain
    undefined_quantity,  // e.g. r0 with Omega = 0, gradient at k = 0
    no_equilibrium,      // negative discriminant in the Thomas-Fermi radii
    empty_cloud,         // R_+^2 <= 0
    wrong_topology,      // disk solver on an annulus or vice versa
    singular_gradient,   // log-density gradient on/outside the support
    numerical_failure,   // root bracketing failed, etc.
    resolution,          // grid too coarse for the stencils
    shape_mismatch,      // snapshots on different grids
    corrupted_state,     // NaN/Inf in a spectral state
    step_size,           // RK4 stability guard violated
    divergence,          // overflow during integration
    config,              // bad or unknown configuration key
    io,                  // file-system failure
};

[[nodiscard]] const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace rossby
