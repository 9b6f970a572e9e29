#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rossby/spectral.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// J0 from its power series, evaluated in 50-digit arithmetic.
inline double j0_series(double xd) {
    const Big x = xd;
    const Big q = x * x / 4;
    Big term = 1, sum = 1;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (Big(k) * k);
        sum += term;
        if (abs(term) < Big("1e-45") && k > 2 * xd) break;
    }
    return static_cast<double>(sum);
}

/// Y0 = (2/pi)(ln(x/2) + gamma) J0 + (2/pi) sum_{k>=1} (-1)^{k+1} H_k (x^2/4)^k / (k!)^2
inline double y0_series(double xd) {
    using boost::multiprecision::log;
    const Big x = xd;
    const Big q = x * x / 4;
    const Big pi = boost::math::constants::pi<Big>();
    const Big euler = boost::math::constants::euler<Big>();
    Big term = 1, j0 = 1, tail = 0, harmonic = 0;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (Big(k) * k);
        harmonic += Big(1) / k;
        j0 += term;
        tail -= harmonic * term;
        if (abs(term) < Big("1e-45") && k > 2 * xd) break;
    }
    return static_cast<double>(2 / pi * ((log(x / 2) + euler) * j0 + tail));
}

/// Literal triple loop: out_k = sum over all ordered retained pairs of Lambda(k1, k2, k) phi1 phi2.
inline std::vector<rossby::Complex> brute_force_nonlinear(const rossby::SpectralState& s) {
    const rossby::ModeGrid& g = *s.grid;
    std::vector<rossby::Complex> out(s.amplitudes.size());
    for (int k : g.retained_modes())
        for (int a : g.retained_modes())
            for (int b : g.retained_modes()) {
                const double lam = rossby::coupling(g.k(a), g.k(b), g.k(k), s.params);
                if (lam != 0.0) out[k] += lam * s.amplitudes[a] * s.amplitudes[b];
            }
    return out;
}

inline double max_abs_diff(const std::vector<rossby::Complex>& a, const std::vector<rossby::Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<rossby::Complex>& a) {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
}

/// Fills every retained mode with a seeded conjugate-symmetric random amplitude.
inline rossby::SpectralState random_symmetric_state(std::shared_ptr<const rossby::ModeGrid> grid,
                                                    const rossby::ModelParams& params, unsigned seed) {
    auto s = rossby::SpectralState::zero(grid, params);
    std::uint64_t x = 0x9E3779B97F4A7C15ull ^ seed;
    auto next = [&] {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
    };
    for (int idx : grid->retained_modes()) {
        const int partner = grid->mirror(idx);
        if (partner < idx) continue;
        const rossby::Complex z(next(), partner == idx ? 0.0 : next());
        s.amplitudes[idx] = z;
        s.amplitudes[partner] = std::conj(z);
    }
    return s;
}

}  // namespace oracle
