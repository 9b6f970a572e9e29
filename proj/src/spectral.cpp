#include "rossby/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include <fftw3.h>

#include "rossby/error.hpp"
#include "rossby/params.hpp"
#include "fftw_support.hpp"

namespace rossby {

// ModeGrid ------------------------------------------------------------------

ModeGrid::ModeGrid(int n_modes, double k_max) : n_(n_modes), k_max_(k_max) {
    if (n_modes < 8 || n_modes % 2 != 0)
        throw Error(Errc::invalid_argument, "n_modes must be even and >= 8, got " + std::to_string(n_modes));
    if (!(std::isfinite(k_max) && k_max > 0.0)) throw Error(Errc::invalid_argument, "k_max must be positive");
    dk_ = 2.0 * k_max / n_;
    // |m| dk <= (2/3) k_max  <=>  3 |m| <= n
    m_keep_ = n_ / 3;
    keep_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int idx = 0; idx < size(); ++idx) {
        if (std::abs(m_r(idx)) <= m_keep_ && std::abs(m_theta(idx)) <= m_keep_) {
            keep_[idx] = 1;
            kept_.push_back(idx);
        }
    }
}

int ModeGrid::index(int m_r, int m_theta) const {
    const int h = n_ / 2;
    if (m_r < -h || m_r >= h || m_theta < -h || m_theta >= h)
        throw Error(Errc::invalid_argument, "lattice index outside the mode grid");
    return (m_r + h) * n_ + (m_theta + h);
}

int ModeGrid::retained_index(int m_r, int m_theta) const {
    if (std::abs(m_r) > m_keep_ || std::abs(m_theta) > m_keep_) return -1;
    return index(m_r, m_theta);
}

std::shared_ptr<const ModeGrid> build_mode_grid(int n_modes, double k_max) {
    return std::make_shared<const ModeGrid>(n_modes, k_max);
}

SpectralState SpectralState::zero(std::shared_ptr<const ModeGrid> grid, const ModelParams& params) {
    SpectralState s;
    s.amplitudes.assign(grid->size(), Complex{});
    s.grid = std::move(grid);
    s.params = params;
    return s;
}

// Coupling ------------------------------------------------------------------

namespace {

double factor_a(double k2, double xi) { return 1.0 + 0.5 * xi * xi * k2; }
double factor_b(double k2, double xi) { return 1.0 + k2 + 0.5 * xi * xi * k2 * k2; }

bool closes(WaveVector k1, WaveVector k2, WaveVector k) {
    const double scale = 1.0 + k1.norm() + k2.norm() + k.norm();
    const WaveVector d = k1 + k2 - k;
    return std::abs(d.k_r) <= 1e-12 * scale && std::abs(d.k_theta) <= 1e-12 * scale;
}

void require_finite(const std::vector<Complex>& v) {
    for (const Complex& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(Errc::corrupted_state, "spectral state contains NaN or Inf");
}

}  // namespace

double coupling(WaveVector k1, WaveVector k2, WaveVector k, const ModelParams& params) {
    if (!closes(k1, k2, k)) return 0.0;
    // 2 r0^2 Omega = 1 in wave units
    const double prefactor = 2.0 * kOmegaWave;
    return prefactor * cross_z(k2, k1) * factor_a(k1.norm_sq(), params.xi) * factor_b(k2.norm_sq(), params.xi)
         / factor_b(k.norm_sq(), params.xi);
}

double reality_defect(const SpectralState& state) {
    const ModeGrid& g = *state.grid;
    double defect = 0.0;
    for (int idx : g.retained_modes())
        defect = std::max(defect, std::abs(state.amplitudes[idx] - std::conj(state.amplitudes[g.mirror(idx)])));
    return defect;
}

double enforce_reality(SpectralState& state) {
    const ModeGrid& g = *state.grid;
    const double defect = reality_defect(state);
    for (int idx : g.retained_modes()) {
        const int partner = g.mirror(idx);
        if (partner < idx) continue;
        auto& a = state.amplitudes;
        if (partner == idx) {
            a[idx] = Complex(a[idx].real(), 0.0);
        } else {
            const Complex avg = 0.5 * (a[idx] + std::conj(a[partner]));
            a[idx] = avg;
            a[partner] = std::conj(avg);
        }
    }
    return defect;
}

int default_thread_count() {
    if (const char* env = std::getenv("ROSSBY_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min<long>(n, 256));
    }
    return 1;
}

std::mutex& detail::fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Solver --------------------------------------------------------------------

namespace {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
        if (!data) throw std::bad_alloc();
        std::fill_n(reinterpret_cast<double*>(data), 2 * n, 0.0);
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    Complex& operator[](std::size_t i) { return reinterpret_cast<Complex*>(data)[i]; }

    fftw_complex* data;
    std::size_t size;
};

struct FftwPlan {
    FftwPlan(int m, int sign) {
        FftwBuffer scratch(static_cast<std::size_t>(m) * m);
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_2d(m, m, scratch.data, scratch.data, sign, FFTW_ESTIMATE);
        if (!plan) throw Error(Errc::numerical_failure, "FFTW planning failed");
    }
    ~FftwPlan() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    void run(FftwBuffer& buf) const { fftw_execute_dft(plan, buf.data, buf.data); }

    fftw_plan plan;
};

template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

struct SpectralSolver::Impl {
    std::shared_ptr<const ModeGrid> grid;
    ModelParams params;
    Convolution method;
    int threads;

    std::vector<double> omega, a, b;  // per lattice index
    std::vector<int> kept;

    // Zero-padded transform size: no alias of a retained sum lands on a retained mode.
    int m_fft = 0;
    std::unique_ptr<FftwPlan> backward, forward;

    [[nodiscard]] int wrap(int m) const { return ((m % m_fft) + m_fft) % m_fft; }
    [[nodiscard]] std::size_t fft_index(int mr, int mt) const {
        return static_cast<std::size_t>(wrap(mr)) * m_fft + wrap(mt);
    }

    void pair_sum(const std::vector<Complex>& phi, std::vector<Complex>& out) const {
        const ModeGrid& g = *grid;
        const double dk2 = g.spacing() * g.spacing();
        parallel_chunks(kept.size(), threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t o = begin; o < end; ++o) {
                const int k = kept[o];
                const int mr = g.m_r(k), mt = g.m_theta(k);
                Complex acc{};
                for (int k1 : kept) {
                    const int m1r = g.m_r(k1), m1t = g.m_theta(k1);
                    const int k2 = g.retained_index(mr - m1r, mt - m1t);
                    if (k2 < 0) continue;
                    const double cross = dk2 * ((mr - m1r) * m1t - (mt - m1t) * m1r);
                    acc += (cross * a[k1] * b[k2]) * (phi[k1] * phi[k2]);
                }
                out[k] = 2.0 * kOmegaWave * acc / b[k];
            }
        });
    }

    void transform(const std::vector<Complex>& phi, std::vector<Complex>& out) const {
        const ModeGrid& g = *grid;
        const std::size_t n = static_cast<std::size_t>(m_fft) * m_fft;
        FftwBuffer ay(n), ax(n), bx(n), by(n);
        for (int k : kept) {
            const WaveVector kv = g.k(k);
            const std::size_t f = fft_index(g.m_r(k), g.m_theta(k));
            ay[f] = kv.k_theta * a[k] * phi[k];
            ax[f] = kv.k_r * a[k] * phi[k];
            bx[f] = kv.k_r * b[k] * phi[k];
            by[f] = kv.k_theta * b[k] * phi[k];
        }
        backward->run(ay);
        backward->run(ax);
        backward->run(bx);
        backward->run(by);
        for (std::size_t i = 0; i < n; ++i) ay[i] = ay[i] * bx[i] - ax[i] * by[i];
        forward->run(ay);
        const double norm = 1.0 / static_cast<double>(n);
        for (int k : kept)
            out[k] = 2.0 * kOmegaWave * ay[fft_index(g.m_r(k), g.m_theta(k))] * norm / b[k];
    }
};

SpectralSolver::SpectralSolver(std::shared_ptr<const ModeGrid> grid, const ModelParams& params,
                               SolverOptions options)
    : impl_(std::make_unique<Impl>()) {
    if (!grid) throw Error(Errc::invalid_argument, "solver needs a mode grid");
    params.validate();
    Impl& s = *impl_;
    s.grid = std::move(grid);
    s.params = params;
    s.threads = options.threads > 0 ? options.threads : default_thread_count();
    s.kept = s.grid->retained_modes();
    s.method = options.convolution;
    if (s.method == Convolution::automatic)
        s.method = s.kept.size() <= 64 ? Convolution::pair_sum : Convolution::transform;

    const ModeGrid& g = *s.grid;
    s.omega.assign(g.size(), 0.0);
    s.a.assign(g.size(), 0.0);
    s.b.assign(g.size(), 0.0);
    for (int idx : s.kept) {
        const WaveVector k = g.k(idx);
        s.omega[idx] = omega(k, params);
        s.a[idx] = factor_a(k.norm_sq(), params.xi);
        s.b[idx] = factor_b(k.norm_sq(), params.xi);
    }

    s.m_fft = std::max(g.n_modes(), 3 * g.max_retained_index() + 1);
    s.backward = std::make_unique<FftwPlan>(s.m_fft, FFTW_BACKWARD);
    s.forward = std::make_unique<FftwPlan>(s.m_fft, FFTW_FORWARD);
}

SpectralSolver::~SpectralSolver() = default;
SpectralSolver::SpectralSolver(SpectralSolver&&) noexcept = default;
SpectralSolver& SpectralSolver::operator=(SpectralSolver&&) noexcept = default;

const ModeGrid& SpectralSolver::grid() const { return *impl_->grid; }
const ModelParams& SpectralSolver::params() const { return impl_->params; }
Convolution SpectralSolver::convolution() const { return impl_->method; }
double SpectralSolver::omega_k(int idx) const { return impl_->omega.at(idx); }

double SpectralSolver::max_abs_omega() const {
    double m = 0.0;
    for (double w : impl_->omega) m = std::max(m, std::abs(w));
    return m;
}

std::vector<Complex> SpectralSolver::nonlinear(const std::vector<Complex>& amplitudes) const {
    return nonlinear(amplitudes, impl_->method);
}

std::vector<Complex> SpectralSolver::nonlinear(const std::vector<Complex>& amplitudes, Convolution method) const {
    if (amplitudes.size() != static_cast<std::size_t>(impl_->grid->size()))
        throw Error(Errc::shape_mismatch, "amplitude vector does not match the mode grid");
    std::vector<Complex> out(amplitudes.size());
    if (method == Convolution::automatic) method = impl_->method;
    if (method == Convolution::pair_sum) impl_->pair_sum(amplitudes, out);
    else impl_->transform(amplitudes, out);
    return out;
}

std::vector<Complex> SpectralSolver::rhs(const SpectralState& state) const {
    if (state.grid.get() != impl_->grid.get() && (state.grid->n_modes() != impl_->grid->n_modes()
                                                  || state.grid->k_max() != impl_->grid->k_max()))
        throw Error(Errc::shape_mismatch, "state and solver use different mode grids");
    require_finite(state.amplitudes);
    std::vector<Complex> out = nonlinear(state.amplitudes);
    for (int k : impl_->kept) out[k] += Complex(0.0, -impl_->omega[k]) * state.amplitudes[k];
    return out;
}

SpectralState SpectralSolver::integrate(SpectralState state, double dt, int n_steps, const StepObserver& observer,
                                        IntegrationReport* report) const {
    if (!(dt > 0.0) || n_steps < 0) throw Error(Errc::invalid_argument, "need dt > 0 and n_steps >= 0");
    if (dt * max_abs_omega() >= 0.5)
        throw Error(Errc::step_size, "dt * max|omega_k| must stay below 0.5");
    require_finite(state.amplitudes);

    IntegrationReport local;
    const double t0 = state.time;
    const std::size_t n = state.amplitudes.size();
    SpectralState stage = state;
    std::vector<Complex> y0;
    // Overflow inside a step is divergence, not a corrupted input.
    auto check = [](const std::vector<Complex>& v, int step) {
        for (const Complex& z : v)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error(Errc::divergence, "integration diverged at step " + std::to_string(step));
    };
    for (int step = 0; step < n_steps; ++step) {
        y0 = state.amplitudes;
        const auto k1 = rhs(state);
        for (std::size_t i = 0; i < n; ++i) stage.amplitudes[i] = y0[i] + 0.5 * dt * k1[i];
        check(stage.amplitudes, step + 1);
        const auto k2 = rhs(stage);
        for (std::size_t i = 0; i < n; ++i) stage.amplitudes[i] = y0[i] + 0.5 * dt * k2[i];
        check(stage.amplitudes, step + 1);
        const auto k3 = rhs(stage);
        for (std::size_t i = 0; i < n; ++i) stage.amplitudes[i] = y0[i] + dt * k3[i];
        check(stage.amplitudes, step + 1);
        const auto k4 = rhs(stage);
        for (std::size_t i = 0; i < n; ++i)
            state.amplitudes[i] = y0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        check(state.amplitudes, step + 1);

        local.max_reality_defect = std::max(local.max_reality_defect, enforce_reality(state));
        state.time = t0 + (step + 1) * dt;
        local.steps = step + 1;
        if (observer) observer(state, step + 1);
    }
    if (report) *report = local;
    return state;
}

std::vector<Complex> rhs(const SpectralState& state) {
    return SpectralSolver(state.grid, state.params).rhs(state);
}

SpectralState integrate(const SpectralState& state, double dt, int n_steps) {
    return SpectralSolver(state.grid, state.params).integrate(state, dt, n_steps);
}

// Initial conditions --------------------------------------------------------

SpectralState single_mode_state(std::shared_ptr<const ModeGrid> grid, const ModelParams& params, int m_r,
                                int m_theta, Complex amplitude) {
    SpectralState s = SpectralState::zero(std::move(grid), params);
    const int idx = s.grid->retained_index(m_r, m_theta);
    if (idx < 0) throw Error(Errc::invalid_argument, "single mode is masked or outside the grid");
    const int partner = s.grid->mirror(idx);
    if (partner == idx) {
        s.amplitudes[idx] = amplitude.real();
    } else {
        s.amplitudes[idx] = amplitude;
        s.amplitudes[partner] = std::conj(amplitude);
    }
    return s;
}

SpectralState random_spectrum_state(std::shared_ptr<const ModeGrid> grid, const ModelParams& params,
                                    std::uint64_t seed, double k_peak, double rms) {
    if (!(k_peak > 0.0) || !(rms >= 0.0)) throw Error(Errc::invalid_argument, "need k_peak > 0 and rms >= 0");
    SpectralState s = SpectralState::zero(std::move(grid), params);
    const ModeGrid& g = *s.grid;
    std::mt19937_64 rng(seed);
    double power = 0.0;
    for (int idx : g.retained_modes()) {
        const int mr = g.m_r(idx), mt = g.m_theta(idx);
        if (!(mr > 0 || (mr == 0 && mt > 0))) continue;  // upper half-plane representative
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double phase = 2.0 * kPi * u;
        const double k = g.k(idx).norm();
        const double mag = k * std::exp(-k * k / (2.0 * k_peak * k_peak));
        const Complex z = std::polar(mag, phase);
        s.amplitudes[idx] = z;
        s.amplitudes[g.mirror(idx)] = std::conj(z);
        power += 2.0 * mag * mag;
    }
    if (power > 0.0) {
        const double scale = rms / std::sqrt(power);
        for (Complex& z : s.amplitudes) z *= scale;
    }
    return s;
}

// Triads --------------------------------------------------------------------

std::vector<Triad> find_resonant_triads(const ModeGrid& grid, const ModelParams& params, const TriadFilter& filter) {
    if (!(filter.tol >= 0.0)) throw Error(Errc::invalid_argument, "triad tolerance must be >= 0");
    std::vector<int> modes;
    for (int idx : grid.retained_modes())
        if (grid.m_r(idx) != 0 || grid.m_theta(idx) != 0) modes.push_back(idx);

    std::vector<Triad> out;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const int a = modes[i];
        for (std::size_t j = i; j < modes.size(); ++j) {
            const int b = modes[j];
            const int m3r = grid.m_r(a) + grid.m_r(b);
            const int m3t = grid.m_theta(a) + grid.m_theta(b);
            if (m3r == 0 && m3t == 0) continue;
            const int c = grid.retained_index(m3r, m3t);
            if (c < 0) continue;
            if (filter.nonzero_coupling
                && grid.m_r(a) * grid.m_theta(b) - grid.m_theta(a) * grid.m_r(b) == 0)
                continue;
            Triad t{grid.k(a), grid.k(b), grid.k(c), 0.0};
            t.mismatch = std::abs(omega(t.k1, params) + omega(t.k2, params) - omega(t.k3, params));
            if (t.mismatch <= filter.tol) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end(), [](const Triad& x, const Triad& y) {
        if (x.mismatch != y.mismatch) return x.mismatch < y.mismatch;
        const std::array<double, 4> kx{x.k1.k_r, x.k1.k_theta, x.k2.k_r, x.k2.k_theta};
        const std::array<double, 4> ky{y.k1.k_r, y.k1.k_theta, y.k2.k_r, y.k2.k_theta};
        return kx < ky;
    });
    return out;
}

TriadSystem triad_system(const Triad& t, const ModelParams& params) {
    if (!closes(t.k1, t.k2, t.k3)) throw Error(Errc::invalid_argument, "triad is not closed: k1 + k2 != k3");
    TriadSystem s;
    s.omega = {omega(t.k1, params), omega(t.k2, params), omega(t.k3, params)};
    s.c[0] = coupling(t.k3, -t.k2, t.k1, params) + coupling(-t.k2, t.k3, t.k1, params);
    s.c[1] = coupling(t.k3, -t.k1, t.k2, params) + coupling(-t.k1, t.k3, t.k2, params);
    s.c[2] = coupling(t.k1, t.k2, t.k3, params) + coupling(t.k2, t.k1, t.k3, params);
    return s;
}

double triad_growth_rate(const TriadSystem& sys, double pump) {
    const double detune = sys.omega[2] - sys.omega[0] - sys.omega[1];
    const double g2 = sys.c[0] * sys.c[1] * pump * pump - 0.25 * detune * detune;
    return g2 > 0.0 ? std::sqrt(g2) : 0.0;
}

namespace {

TriadAmplitudes triad_rhs(const TriadSystem& s, const TriadAmplitudes& p) {
    const Complex mi(0.0, -1.0);
    return {mi * s.omega[0] * p[0] + s.c[0] * p[2] * std::conj(p[1]),
            mi * s.omega[1] * p[1] + s.c[1] * p[2] * std::conj(p[0]),
            mi * s.omega[2] * p[2] + s.c[2] * p[0] * p[1]};
}

}  // namespace

std::vector<TriadSample> integrate_triad(const Triad& triad, const TriadAmplitudes& initial,
                                         const ModelParams& params, double dt, double t_final, int sample_every) {
    if (!(dt > 0.0) || !(t_final >= 0.0) || sample_every < 1)
        throw Error(Errc::invalid_argument, "need dt > 0, t_final >= 0, sample_every >= 1");
    const TriadSystem sys = triad_system(triad, params);
    const double w_max = std::max({std::abs(sys.omega[0]), std::abs(sys.omega[1]), std::abs(sys.omega[2])});
    if (dt * w_max >= 0.5) throw Error(Errc::step_size, "dt * max|omega_k| must stay below 0.5");

    const int n_steps = static_cast<int>(std::llround(t_final / dt));
    std::vector<TriadSample> out{{0.0, initial}};
    TriadAmplitudes y = initial;
    auto axpy = [](const TriadAmplitudes& base, double h, const TriadAmplitudes& d) {
        return TriadAmplitudes{base[0] + h * d[0], base[1] + h * d[1], base[2] + h * d[2]};
    };
    for (int step = 1; step <= n_steps; ++step) {
        const auto k1 = triad_rhs(sys, y);
        const auto k2 = triad_rhs(sys, axpy(y, 0.5 * dt, k1));
        const auto k3 = triad_rhs(sys, axpy(y, 0.5 * dt, k2));
        const auto k4 = triad_rhs(sys, axpy(y, dt, k3));
        for (int i = 0; i < 3; ++i) {
            y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag()))
                throw Error(Errc::divergence, "triad integration diverged at step " + std::to_string(step));
        }
        if (step % sample_every == 0 || step == n_steps) out.push_back({step * dt, y});
    }
    return out;
}

double triad_energy(const Triad& t, const TriadAmplitudes& amp) {
    return (1.0 + t.k1.norm_sq()) * std::norm(amp[0]) + (1.0 + t.k2.norm_sq()) * std::norm(amp[1])
         + (1.0 + t.k3.norm_sq()) * std::norm(amp[2]);
}

}  // namespace rossby
