#include "rossby/error.hpp"

namespace rossby {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_parameter: return "invalid parameter";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::domain_error: return "domain error";
        case Errc::undefined_quantity: return "undefined quantity";
        case Errc::no_equilibrium: return "no equilibrium";
        case Errc::empty_cloud: return "empty cloud";
        case Errc::wrong_topology: return "wrong topology";
        case Errc::singular_gradient: return "singular gradient";
        case Errc::numerical_failure: return "numerical failure";
        case Errc::resolution: return "insufficient resolution";
        case Errc::shape_mismatch: return "shape mismatch";
        case Errc::corrupted_state: return "corrupted state";
        case Errc::step_size: return "step size";
        case Errc::divergence: return "divergence";
        case Errc::config: return "configuration";
        case Errc::io: return "i/o";
    }
    return "unknown";
}

}  // namespace rossby
