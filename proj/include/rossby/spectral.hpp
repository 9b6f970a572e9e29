#pragma once

// Truncated Fourier-mode model of the nonlinear Rossby-wave evolution
//
//   d phi_k / dt + i omega_k phi_k = sum_{k1 + k2 = k} Lambda(k1, k2, k) phi_k1 phi_k2
//
// in wave units (r0 = c_s = 1, hence 2 Omega = 1) on a doubly periodic lattice.
// Real fields: phi_{-k} = conj(phi_k).

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "rossby/dispersion.hpp"

namespace rossby {

using Complex = std::complex<double>;

/// Rotation rate in wave units (2 Omega r0 = c_s).
inline constexpr double kOmegaWave = 0.5;

/// Square lattice of n x n wave vectors k = dk * (m_r, m_theta), m in [-n/2, n/2 - 1],
/// dk = 2 k_max / n. Modes with any |component| > (2/3) k_max are masked out.
class ModeGrid {
public:
    ModeGrid(int n_modes, double k_max);

    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] double k_max() const { return k_max_; }
    [[nodiscard]] double spacing() const { return dk_; }
    [[nodiscard]] int size() const { return n_ * n_; }
    /// Largest retained |m| along either axis.
    [[nodiscard]] int max_retained_index() const { return m_keep_; }

    /// Flat index of lattice point (m_r, m_theta); m in [-n/2, n/2 - 1].
    [[nodiscard]] int index(int m_r, int m_theta) const;
    /// Flat index of (m_r, m_theta), or -1 when outside the lattice or masked.
    [[nodiscard]] int retained_index(int m_r, int m_theta) const;
    [[nodiscard]] int m_r(int idx) const { return idx / n_ - n_ / 2; }
    [[nodiscard]] int m_theta(int idx) const { return idx % n_ - n_ / 2; }
    [[nodiscard]] WaveVector k(int idx) const { return {dk_ * m_r(idx), dk_ * m_theta(idx)}; }
    [[nodiscard]] bool retained(int idx) const { return keep_[idx] != 0; }
    /// Index of -k for a retained mode.
    [[nodiscard]] int mirror(int idx) const { return retained_index(-m_r(idx), -m_theta(idx)); }
    /// Retained mode indices in enumeration order.
    [[nodiscard]] const std::vector<int>& retained_modes() const { return kept_; }

private:
    int n_;
    double k_max_;
    double dk_;
    int m_keep_;
    std::vector<char> keep_;
    std::vector<int> kept_;
};

[[nodiscard]] std::shared_ptr<const ModeGrid> build_mode_grid(int n_modes, double k_max);

struct SpectralState {
    std::shared_ptr<const ModeGrid> grid;
    std::vector<Complex> amplitudes;  ///< one per lattice point, zero where masked
    double time = 0.0;
    ModelParams params;

    [[nodiscard]] static SpectralState zero(std::shared_ptr<const ModeGrid> grid, const ModelParams& params);
    [[nodiscard]] Complex& at(int m_r, int m_theta) { return amplitudes[grid->index(m_r, m_theta)]; }
    [[nodiscard]] Complex at(int m_r, int m_theta) const { return amplitudes[grid->index(m_r, m_theta)]; }
};

/// Lambda(k1, k2, k); zero unless k1 + k2 = k.
[[nodiscard]] double coupling(WaveVector k1, WaveVector k2, WaveVector k, const ModelParams& params);

/// max_k |phi_k - conj(phi_{-k})| over retained modes.
[[nodiscard]] double reality_defect(const SpectralState& state);
/// Projects onto conjugate-symmetric states; returns the defect before projection.
double enforce_reality(SpectralState& state);

enum class Convolution {
    automatic,  ///< pair sum on small grids, transform otherwise
    pair_sum,   ///< direct O(N^4) summation over retained pairs
    transform,  ///< zero-padded FFT convolution
};

struct SolverOptions {
    Convolution convolution = Convolution::automatic;
    /// Worker threads for the pair sum; 0 means ROSSBY_THREADS or 1.
    int threads = 0;
};

/// Worker count from ROSSBY_THREADS (>= 1), falling back to 1.
[[nodiscard]] int default_thread_count();

struct IntegrationReport {
    int steps = 0;
    double max_reality_defect = 0.0;  ///< largest per-step defect before re-symmetrization
};

class SpectralSolver {
public:
    SpectralSolver(std::shared_ptr<const ModeGrid> grid, const ModelParams& params,
                   SolverOptions options = {});
    ~SpectralSolver();
    SpectralSolver(SpectralSolver&&) noexcept;
    SpectralSolver& operator=(SpectralSolver&&) noexcept;

    [[nodiscard]] const ModeGrid& grid() const;
    [[nodiscard]] const ModelParams& params() const;
    [[nodiscard]] Convolution convolution() const;

    [[nodiscard]] double omega_k(int idx) const;
    [[nodiscard]] double max_abs_omega() const;

    /// d phi / dt for every lattice point. Throws Error(corrupted_state) on NaN/Inf.
    [[nodiscard]] std::vector<Complex> rhs(const SpectralState& state) const;
    /// Nonlinear term only, with the selected convolution.
    [[nodiscard]] std::vector<Complex> nonlinear(const std::vector<Complex>& amplitudes) const;
    [[nodiscard]] std::vector<Complex> nonlinear(const std::vector<Complex>& amplitudes, Convolution method) const;

    using StepObserver = std::function<void(const SpectralState&, int step)>;

    /// Classical RK4 with fixed dt; re-symmetrizes after every step. The
    /// observer (if any) sees the state after each step.
    SpectralState integrate(SpectralState state, double dt, int n_steps,
                            const StepObserver& observer = {}, IntegrationReport* report = nullptr) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

[[nodiscard]] std::vector<Complex> rhs(const SpectralState& state);
[[nodiscard]] SpectralState integrate(const SpectralState& state, double dt, int n_steps);

// Initial conditions ---------------------------------------------------------

/// phi at (m_r, m_theta) and its conjugate partner.
[[nodiscard]] SpectralState single_mode_state(std::shared_ptr<const ModeGrid> grid, const ModelParams& params,
                                              int m_r, int m_theta, Complex amplitude);

/// |phi_k| proportional to k exp(-k^2 / (2 k_peak^2)) with uniform random phases,
/// scaled so sum_k |phi_k|^2 = rms^2.
[[nodiscard]] SpectralState random_spectrum_state(std::shared_ptr<const ModeGrid> grid, const ModelParams& params,
                                                  std::uint64_t seed, double k_peak, double rms);

// Resonant triads ----------------------------------------------------------

struct Triad {
    WaveVector k1, k2, k3;  ///< k1 + k2 = k3 on the lattice
    double mismatch = 0.0;  ///< |omega(k1) + omega(k2) - omega(k3)|
};

struct TriadFilter {
    double tol = 0.0;
    bool nonzero_coupling = false;  ///< drop triads whose couplings all vanish (k1 parallel to k2)
};

/// Every unordered pair {k1, k2} of non-zero retained modes with k1 + k2 retained and
/// non-zero, filtered by mismatch; sorted by mismatch, then lexicographically.
[[nodiscard]] std::vector<Triad> find_resonant_triads(const ModeGrid& grid, const ModelParams& params,
                                                      const TriadFilter& filter);

/// Coefficients of the closed three-mode system
///   d phi1/dt = -i w1 phi1 + c1 phi3 conj(phi2)
///   d phi2/dt = -i w2 phi2 + c2 phi3 conj(phi1)
///   d phi3/dt = -i w3 phi3 + c3 phi1 phi2
struct TriadSystem {
    std::array<double, 3> omega{};
    std::array<double, 3> c{};
};

[[nodiscard]] TriadSystem triad_system(const Triad& triad, const ModelParams& params);

/// Linear growth rate of modes 1 and 2 under a fixed pump |phi3| = pump:
/// sqrt(c1 c2 pump^2 - (w3 - w1 - w2)^2 / 4), or 0 when that is not real.
[[nodiscard]] double triad_growth_rate(const TriadSystem& system, double pump);

using TriadAmplitudes = std::array<Complex, 3>;

struct TriadSample {
    double t = 0.0;
    TriadAmplitudes amp{};
};

/// RK4 on the three-mode system from t = 0 to t_final; samples every
/// sample_every steps plus the initial and final states.
[[nodiscard]] std::vector<TriadSample> integrate_triad(const Triad& triad, const TriadAmplitudes& initial,
                                                       const ModelParams& params, double dt, double t_final,
                                                       int sample_every = 1);

/// sum_i (1 + k_i^2) |phi_i|^2 over the three modes.
[[nodiscard]] double triad_energy(const Triad& triad, const TriadAmplitudes& amp);

}  // namespace rossby
