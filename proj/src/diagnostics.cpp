#include "rossby/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fftw3.h>

#include "rossby/error.hpp"
#include "rossby/params.hpp"
#include "fftw_support.hpp"

namespace rossby {

Invariants energy_enstrophy(const SpectralState& state) {
    const ModeGrid& g = *state.grid;
    const double x2 = state.params.xi * state.params.xi;
    Invariants inv;
    for (int idx : g.retained_modes()) {
        const double p = std::norm(state.amplitudes[idx]);
        const double k2 = g.k(idx).norm_sq();
        inv.energy += (1.0 + k2) * p;
        inv.enstrophy += k2 * (1.0 + k2) * p;
        inv.energy_xi += (1.0 + k2 + 0.5 * x2 * k2 * k2) * p;
    }
    return inv;
}

double total_power(const SpectralState& state) {
    double p = 0.0;
    for (int idx : state.grid->retained_modes()) p += std::norm(state.amplitudes[idx]);
    return p;
}

double max_amplitude(const SpectralState& state) {
    double m = 0.0;
    for (const Complex& z : state.amplitudes) m = std::max(m, std::abs(z));
    return m;
}

std::vector<ZonalBin> zonal_spectrum(const SpectralState& state) {
    const ModeGrid& g = *state.grid;
    std::map<int, double> bins;
    for (int idx : g.retained_modes()) bins[g.m_theta(idx)] += std::norm(state.amplitudes[idx]);
    std::vector<ZonalBin> out;
    out.reserve(bins.size());
    for (const auto& [m, p] : bins) out.push_back({m * g.spacing(), p});
    return out;
}

FieldSnapshot make_snapshot(int n, double length, const ModelParams& params) {
    if (n < 1 || !(length > 0.0)) throw Error(Errc::invalid_argument, "invalid snapshot grid");
    FieldSnapshot s;
    s.n = n;
    s.dx = length / n;
    s.phi.assign(static_cast<std::size_t>(n) * n, 0.0);
    s.params = params;
    return s;
}

FieldSnapshot to_field(const std::vector<Complex>& amplitudes, const ModeGrid& g, const ModelParams& params) {
    const int n = g.n_modes();
    const std::size_t total = static_cast<std::size_t>(n) * n;
    if (amplitudes.size() != total) throw Error(Errc::shape_mismatch, "amplitudes do not match the grid");

    std::vector<Complex> buf(total);
    auto wrap = [n](int m) { return ((m % n) + n) % n; };
    for (int idx = 0; idx < g.size(); ++idx)
        buf[static_cast<std::size_t>(wrap(g.m_r(idx))) * n + wrap(g.m_theta(idx))] = amplitudes[idx];

    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_2d(n, n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw Error(Errc::numerical_failure, "FFTW planning failed");
    fftw_execute(plan);
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);

    FieldSnapshot snap = make_snapshot(n, 2.0 * kPi / g.spacing(), params);
    for (std::size_t i = 0; i < total; ++i) snap.phi[i] = buf[i].real();
    return snap;
}

FieldSnapshot to_field(const SpectralState& state) { return to_field(state.amplitudes, *state.grid, state.params); }

namespace {

constexpr int kMinPoints = 16;

class PeriodicOps {
public:
    PeriodicOps(int n, double dx) : n_(n), dx_(dx) {
        if (n < kMinPoints) throw Error(Errc::resolution, "field grid needs at least 16 points per axis");
    }

    [[nodiscard]] std::vector<double> d_x(const std::vector<double>& f) const { return first(f, true); }
    [[nodiscard]] std::vector<double> d_y(const std::vector<double>& f) const { return first(f, false); }

    [[nodiscard]] std::vector<double> laplacian(const std::vector<double>& f) const {
        std::vector<double> out(f.size());
        const double c = 1.0 / (12.0 * dx_ * dx_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double fxx = -f[at(i + 2, j)] + 16.0 * f[at(i + 1, j)] - 30.0 * f[at(i, j)]
                                 + 16.0 * f[at(i - 1, j)] - f[at(i - 2, j)];
                const double fyy = -f[at(i, j + 2)] + 16.0 * f[at(i, j + 1)] - 30.0 * f[at(i, j)]
                                 + 16.0 * f[at(i, j - 1)] - f[at(i, j - 2)];
                out[at(i, j)] = c * (fxx + fyy);
            }
        return out;
    }

private:
    [[nodiscard]] std::size_t at(int i, int j) const {
        i = ((i % n_) + n_) % n_;
        j = ((j % n_) + n_) % n_;
        return static_cast<std::size_t>(i) * n_ + j;
    }

    [[nodiscard]] std::vector<double> first(const std::vector<double>& f, bool along_x) const {
        std::vector<double> out(f.size());
        const double c = 1.0 / (12.0 * dx_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                auto g = [&](int s) { return along_x ? f[at(i + s, j)] : f[at(i, j + s)]; };
                out[at(i, j)] = c * (-g(2) + 8.0 * g(1) - 8.0 * g(-1) + g(-2));
            }
        return out;
    }

    int n_;
    double dx_;
};

void require_finite(const FieldSnapshot& s) {
    for (double v : s.phi)
        if (!std::isfinite(v)) throw Error(Errc::corrupted_state, "field snapshot contains NaN or Inf");
}

}  // namespace

VectorField gradient(const FieldSnapshot& snap) {
    const PeriodicOps ops(snap.n, snap.dx);
    return {snap.n, ops.d_x(snap.phi), ops.d_y(snap.phi)};
}

std::vector<double> divergence(const VectorField& v, double dx) {
    const PeriodicOps ops(v.n, dx);
    std::vector<double> out = ops.d_x(v.x);
    const std::vector<double> dy = ops.d_y(v.y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dy[i];
    return out;
}

VectorField s_field(const FieldSnapshot& snap) {
    require_finite(snap);
    const PeriodicOps ops(snap.n, snap.dx);
    const double c = 0.5 * snap.params.xi * snap.params.xi;
    // S = -grad(phi - (xi^2/2) lap phi)
    std::vector<double> psi = snap.phi;
    if (c != 0.0) {
        const std::vector<double> lap = ops.laplacian(snap.phi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] -= c * lap[i];
    }
    VectorField s{snap.n, ops.d_x(psi), ops.d_y(psi)};
    for (double& v : s.x) v = -v;
    for (double& v : s.y) v = -v;
    return s;
}

VectorField drift_velocity_field(const FieldSnapshot& snap) {
    const VectorField s = s_field(snap);
    const double inv_2omega = 1.0 / (2.0 * kOmegaWave);
    VectorField v{snap.n, std::vector<double>(s.x.size()), std::vector<double>(s.x.size())};
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        v.x[i] = -s.y[i] * inv_2omega;
        v.y[i] = s.x[i] * inv_2omega;
    }
    return v;
}

VectorField polarization_velocity_field(const FieldSnapshot& snap, const FieldSnapshot& dphi_dt) {
    if (snap.n != dphi_dt.n || snap.dx != dphi_dt.dx)
        throw Error(Errc::shape_mismatch, "field and time-derivative snapshots are on different grids");
    const PeriodicOps ops(snap.n, snap.dx);
    const VectorField s = s_field(snap);
    FieldSnapshot rate = dphi_dt;
    rate.params = snap.params;
    const VectorField ds = s_field(rate);  // S is linear in phi

    const double w = kOmegaWave;
    const double c_t = 1.0 / (4.0 * w * w);
    const double c_a = 1.0 / (8.0 * w * w * w);
    const auto sx_x = ops.d_x(s.x), sx_y = ops.d_y(s.x);
    const auto sy_x = ops.d_x(s.y), sy_y = ops.d_y(s.y);

    VectorField v{snap.n, std::vector<double>(s.x.size()), std::vector<double>(s.x.size())};
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        // (z x S) . grad = -S_y d_x + S_x d_y
        const double adv_x = -s.y[i] * sx_x[i] + s.x[i] * sx_y[i];
        const double adv_y = -s.y[i] * sy_x[i] + s.x[i] * sy_y[i];
        v.x[i] = c_t * ds.x[i] + c_a * adv_x;
        v.y[i] = c_t * ds.y[i] + c_a * adv_y;
    }
    return v;
}

std::vector<double> continuity_residual(const FieldSnapshot& snap, const FieldSnapshot& dphi_dt) {
    const VectorField v0 = drift_velocity_field(snap);
    const VectorField vp = polarization_velocity_field(snap, dphi_dt);
    const VectorField grad = gradient(snap);
    const std::vector<double> div_p = divergence(vp, snap.dx);
    const double background = -snap.params.v_r;

    std::vector<double> res(snap.phi.size());
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = dphi_dt.phi[i] + v0.x[i] * (grad.x[i] + background) + v0.y[i] * grad.y[i] + div_p[i];
    return res;
}

}  // namespace rossby
