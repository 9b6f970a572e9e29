#pragma once

// Run configuration for the spectral solver and triad tools, read from JSON.
// Precedence: built-in defaults < config file < key=value overrides < CLI flags.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rossby/params.hpp"

namespace rossby {

enum class InitKind { single_mode, random_spectrum, triad };

[[nodiscard]] const char* to_string(InitKind kind);
[[nodiscard]] InitKind parse_init_kind(std::string_view name);

struct SimulationConfig {
    int n_modes = 16;
    double k_max = 4.0;
    double xi_over_r0 = 0.0;
    double v_r_over_cs = 0.1;
    double dt = 1e-3;
    double t_final = 10.0;
    std::uint64_t seed = 42;
    InitKind init = InitKind::random_spectrum;
    int output_every = 100;
    // Optional extensions of the run schema.
    double amplitude = 0.1;   ///< rms of the random spectrum, or the leading mode amplitude
    double k_peak = 1.0;      ///< spectral peak of the random spectrum [1/r0]
    double triad_tol = 1e-3;  ///< mismatch tolerance when picking a triad

    void validate() const;
};

/// Merges "key=value" strings into a JSON object text. Values are parsed as
/// JSON when possible (numbers, booleans) and taken as strings otherwise.
[[nodiscard]] std::string apply_overrides(std::string_view json_text, const std::vector<std::string>& overrides);

/// Unknown keys are rejected with Error(config) naming the key.
[[nodiscard]] SimulationConfig parse_simulation_config(std::string_view json_text);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace rossby
