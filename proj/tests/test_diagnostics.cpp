#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rossby/diagnostics.hpp"
#include "rossby/error.hpp"
#include "rossby/params.hpp"
#include "rossby/spectral.hpp"

using namespace rossby;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected rossby::Error");
    return Errc::io;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// phi = eps cos(k.x + phase) sampled on an n x n periodic box of side 2 pi.
FieldSnapshot plane_wave(int n, WaveVector k, double eps, double phase, const ModelParams& m) {
    FieldSnapshot s = make_snapshot(n, 2.0 * kPi, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.at(i, j) = eps * std::cos(k.k_r * s.x(i) + k.k_theta * s.x(j) + phase);
    return s;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("invariants") {
    const auto g = build_mode_grid(8, 4.0);
    const Invariants z = energy_enstrophy(SpectralState::zero(g, {0.1, 0.7}));
    CHECK(z.energy == 0.0);
    CHECK(z.enstrophy == 0.0);
    CHECK(z.energy_xi == 0.0);

    const double a = 0.3;
    const SpectralState s0 = single_mode_state(g, {0.1, 0.0}, 0, 1, a);
    const Invariants i0 = energy_enstrophy(s0);
    // (1 + k^2) = k^2 (1 + k^2) = 2 per mode, and the sum runs over k and -k
    CHECK(i0.energy == doctest::Approx(4 * a * a).epsilon(1e-15));
    CHECK(i0.enstrophy == doctest::Approx(4 * a * a).epsilon(1e-15));
    CHECK(i0.energy_xi == i0.energy);

    const SpectralState s1 = single_mode_state(g, {0.1, 0.7}, 0, 1, a);
    CHECK(energy_enstrophy(s1).energy_xi == doctest::Approx(2 * a * a * (2.0 + 0.49 / 2)).epsilon(1e-15));

    const SpectralState r = oracle::random_symmetric_state(g, {0.1, 0.0}, 4);
    const Invariants ir = energy_enstrophy(r);
    CHECK(ir.energy_xi == ir.energy);
    CHECK(max_amplitude(r) == doctest::Approx(oracle::max_abs(r.amplitudes)).epsilon(1e-15));
}

TEST_CASE("zonal spectrum partitions the power") {
    const auto g = build_mode_grid(16, 4.0);
    const SpectralState z = SpectralState::zero(g, {0.1, 0.0});
    for (const ZonalBin& b : zonal_spectrum(z)) CHECK(b.power == 0.0);

    const SpectralState one = single_mode_state(g, {0.1, 0.0}, 2, 0, {0.1, 0.2});
    int nonzero = 0;
    for (const ZonalBin& b : zonal_spectrum(one))
        if (b.power != 0.0) {
            ++nonzero;
            CHECK(b.k_theta == 0.0);
        }
    CHECK(nonzero == 1);

    const SpectralState r = random_spectrum_state(g, {0.1, 0.0}, 42, 1.0, 0.3);
    const auto bins = zonal_spectrum(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        sum += bins[i].power;
        if (i > 0) CHECK(bins[i - 1].k_theta < bins[i].k_theta);
    }
    CHECK(std::abs(sum - total_power(r)) <= 1e-14);
}

TEST_CASE("Parseval") {
    const auto g = build_mode_grid(16, 4.0);
    const SpectralState r = random_spectrum_state(g, {0.1, 0.0}, 11, 1.0, 0.5);
    const FieldSnapshot f = to_field(r);
    CHECK(f.n == 16);
    CHECK(f.dx == doctest::Approx(2.0 * kPi / 0.5 / 16).epsilon(1e-15));
    const double mean_sq = std::inner_product(f.phi.begin(), f.phi.end(), f.phi.begin(), 0.0) / f.phi.size();
    CHECK(std::abs(mean_sq - total_power(r)) <= 1e-12);

    // the inverse transform follows phi(x) = sum phi_k exp(i k.x)
    const SpectralState one = single_mode_state(g, {0.1, 0.0}, 1, 2, Complex(0.2, -0.1));
    const FieldSnapshot p = to_field(one);
    double err = 0.0;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            const double ph = 0.5 * p.x(i) + 1.0 * p.x(j);
            err = std::max(err, std::abs(p.at(i, j) - 2.0 * (0.2 * std::cos(ph) + 0.1 * std::sin(ph))));
        }
    CHECK(err <= 1e-14);
    CHECK(code_of([&] { (void)to_field(std::vector<Complex>(10), *g, one.params); }) == Errc::shape_mismatch);
}

TEST_CASE("drift velocity") {
    const ModelParams m{0.1, 0.0};
    FieldSnapshot c = make_snapshot(32, 10.0, m);
    for (double& v : c.phi) v = 0.7;
    const VectorField v0 = drift_velocity_field(c);
    CHECK(max_abs(v0.x) <= 1e-15);
    CHECK(max_abs(v0.y) <= 1e-15);

    // phi = eps cos(k x) -> v0 = (0, eps k sin(k x))
    const double eps = 0.01, k = 2.0;
    auto error_at = [&](int n) {
        const FieldSnapshot s = plane_wave(n, {k, 0.0}, eps, 0.0, m);
        const VectorField v = drift_velocity_field(s);
        double e = max_abs(v.x);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                e = std::max(e, std::abs(v.y[static_cast<std::size_t>(i) * n + j] - eps * k * std::sin(k * s.x(i))));
        return e;
    };
    const double e32 = error_at(32), e64 = error_at(64);
    CHECK(e32 < 2e-3 * eps * k);
    CHECK(e32 / e64 == doctest::Approx(16.0).epsilon(0.05));

    // xi = 0: v0 is a rotated gradient, so its discrete divergence vanishes
    const auto g = build_mode_grid(16, 4.0);
    const FieldSnapshot rf = to_field(random_spectrum_state(g, m, 8, 1.0, 0.2));
    CHECK(max_abs(divergence(drift_velocity_field(rf), rf.dx)) <= 1e-14);
}

TEST_CASE("polarization velocity") {
    const ModelParams m{0.1, 0.0};
    FieldSnapshot c = make_snapshot(32, 10.0, m);
    for (double& v : c.phi) v = 0.7;
    const FieldSnapshot still = make_snapshot(32, 10.0, m);
    const VectorField vp = polarization_velocity_field(c, still);
    CHECK(max_abs(vp.x) <= 1e-15);
    CHECK(max_abs(vp.y) <= 1e-15);

    // plane wave: |v_p| / |v0| = |omega| / (2 Omega)
    for (double xi : {0.0, 0.7}) {
        const ModelParams mx{0.1, xi};
        const WaveVector k{1.0, 2.0};
        const double w = omega(k, mx);
        const FieldSnapshot s = plane_wave(128, k, 0.01, 0.0, mx);
        const FieldSnapshot dt = plane_wave(128, k, 0.01 * w, -kPi / 2, mx);  // d/dt cos(k.x - w t) = w sin(...)
        const VectorField v0 = drift_velocity_field(s);
        const VectorField v1 = polarization_velocity_field(s, dt);
        auto norm_max = [](const VectorField& v) {
            double m2 = 0.0;
            for (std::size_t i = 0; i < v.x.size(); ++i) m2 = std::max(m2, std::hypot(v.x[i], v.y[i]));
            return m2;
        };
        CHECK(norm_max(v1) / norm_max(v0) == doctest::Approx(std::abs(w) / (2 * kOmegaWave)).epsilon(1e-3));

        // linear eigenmode satisfies the continuity balance
        const std::vector<double> res = continuity_residual(s, dt);
        CHECK(max_abs(res) / (0.01 * std::abs(w)) < 1e-3);

        // wrong frequency leaves a large residual
        const FieldSnapshot wrong = plane_wave(128, k, 0.02 * w, -kPi / 2, mx);
        CHECK(max_abs(continuity_residual(s, wrong)) / (0.01 * std::abs(w)) > 0.1);
    }
}

TEST_CASE("continuity balance holds for the nonlinear spectral dynamics") {
    // Low modes on a fine lattice keep every product resolved and the field smooth.
    const auto g = build_mode_grid(128, 16.0);
    for (double xi : {0.0, 0.7}) {
        const ModelParams m{0.1, xi};
        SpectralState s = SpectralState::zero(g, m);
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int mr = -3; mr <= 3; ++mr)
            for (int mt = 0; mt <= 3; ++mt) {
                if (mt == 0 && mr <= 0) continue;
                const Complex z(0.05 * u(rng), 0.05 * u(rng));
                s.at(mr, mt) = z;
                s.at(-mr, -mt) = std::conj(z);
            }
        const SpectralSolver solver(g, m, {Convolution::transform, 1});
        const auto rate = solver.rhs(s);
        const auto nl = solver.nonlinear(s.amplitudes);
        REQUIRE(oracle::max_abs(nl) > 1e-2 * oracle::max_abs(rate));

        const FieldSnapshot f = to_field(s);
        const FieldSnapshot dfdt = to_field(rate, *g, m);
        const double scale = max_abs(dfdt.phi);
        CHECK(max_abs(continuity_residual(f, dfdt)) / scale < 1e-4);

        // dropping the nonlinear term breaks the balance
        std::vector<Complex> linear = rate;
        for (std::size_t i = 0; i < linear.size(); ++i) linear[i] -= nl[i];
        CHECK(max_abs(continuity_residual(f, to_field(linear, *g, m))) / scale > 1e-3);
    }
}

TEST_CASE("errors") {
    const ModelParams m{0.1, 0.0};
    CHECK(code_of([&] { (void)drift_velocity_field(make_snapshot(8, 1.0, m)); }) == Errc::resolution);
    CHECK(code_of([&] { (void)polarization_velocity_field(make_snapshot(32, 1.0, m), make_snapshot(16, 1.0, m)); }) ==
          Errc::shape_mismatch);
    CHECK(code_of([&] { (void)polarization_velocity_field(make_snapshot(32, 1.0, m), make_snapshot(32, 2.0, m)); }) ==
          Errc::shape_mismatch);
    CHECK(code_of([&] { (void)make_snapshot(0, 1.0, m); }) == Errc::invalid_argument);
    FieldSnapshot bad = make_snapshot(32, 1.0, m);
    bad.phi[3] = std::nan("");
    CHECK(code_of([&] { (void)drift_velocity_field(bad); }) == Errc::corrupted_state);
}

}  // TEST_SUITE
