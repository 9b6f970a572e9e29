#include <doctest.h>

#include <cmath>
#include <limits>

#include "rossby/equilibrium.hpp"
#include "rossby/error.hpp"
#include "rossby/params.hpp"

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

}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("radii for the reference trap") {
    // frozen from a 30-digit evaluation of the quadratic in r^2
    const TfEquilibrium disk = tf_radii(0.2, 2.4, 1.6);
    CHECK(disk.r_plus_sq == doctest::Approx(3.05678526724748168).epsilon(1e-14));
    CHECK(disk.r_minus_sq == doctest::Approx(-0.08178526724748168).epsilon(1e-13));
    CHECK(disk.r_plus() == doctest::Approx(1.74837).epsilon(1e-5));
    CHECK_FALSE(disk.is_annulus());
    CHECK(disk.r_inner() == 0.0);

    const TfEquilibrium ring = tf_radii(-0.2, 2.4, 1.6);
    CHECK(ring.r_plus_sq == doctest::Approx(2.88844833951862765).epsilon(1e-14));
    CHECK(ring.r_minus_sq == doctest::Approx(0.08655166048137235).epsilon(1e-13));
    CHECK(ring.r_plus() == doctest::Approx(1.69954356799660409).epsilon(1e-14));
    CHECK(ring.r_inner() == doctest::Approx(0.294196635741084493).epsilon(1e-13));
    CHECK(ring.is_annulus());
}

TEST_CASE("Vieta identities") {
    for (double mu : {-0.3, -0.2, -0.05, 0.0, 0.1, 0.2, 1.5})
        for (double w : {1.2, 2.4, 3.0})
            for (double beta : {0.5, 1.6}) {
                const double a = (w * w - 1.0) / (2.0 * beta);
                if (a * a + 2.0 * mu / beta < 0.0) continue;
                const TfEquilibrium eq = tf_radii(mu, w, beta);
                CHECK(std::abs(eq.r_plus_sq * eq.r_minus_sq + 2.0 * mu / beta) <= 1e-12);
                CHECK(std::abs(eq.r_plus_sq + eq.r_minus_sq - (w * w - 1.0) / beta) <= 1e-12);
            }
}

TEST_CASE("profile agrees with the trap potential") {
    for (double mu : {-0.2, 0.2}) {
        const TfEquilibrium eq = tf_radii(mu, 2.4, 1.6);
        for (int i = 0; i <= 200; ++i) {
            const double r = eq.r_inner() + (eq.r_plus() - eq.r_inner()) * i / 200.0;
            const double direct = (mu - effective_potential(r, 2.4, 1.6)) * 2.0 / 1.6;
            CHECK(std::abs(tf_profile(r, eq) - std::max(direct, 0.0)) <= 1e-12);
        }
    }
}

TEST_CASE("profile values and clipping") {
    const TfEquilibrium disk = tf_radii(0.2, 2.4, 1.6);
    CHECK(tf_profile(0.0, disk) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(tf_profile(2.0, disk) == 0.0);
    CHECK(tf_profile(disk.r_plus() + 1e-9, disk) == 0.0);

    const TfEquilibrium ring = tf_radii(-0.2, 2.4, 1.6);
    CHECK(tf_profile(0.1, ring) == 0.0);
    const ProfilePeak peak = profile_peak(ring);
    const double half = (ring.r_plus_sq - ring.r_minus_sq) / 2.0;
    CHECK(peak.density == doctest::Approx(half * half).epsilon(1e-14));
    CHECK(peak.density == doctest::Approx(1.9627).epsilon(1e-4));
    CHECK(peak.r * peak.r == doctest::Approx((ring.r_plus_sq + ring.r_minus_sq) / 2.0).epsilon(1e-14));
    CHECK(peak.density > 1.0);

    const ProfilePeak center = profile_peak(disk);
    CHECK(center.density >= tf_profile(0.0, disk));
}

TEST_CASE("log gradient") {
    const TfEquilibrium disk = tf_radii(0.2, 2.4, 1.6);
    CHECK(log_density_gradient(0.0, disk) == 0.0);
    CHECK(log_density_gradient(1.0, disk) == doctest::Approx(0.876404494382022472).epsilon(1e-13));

    const double h = 1e-5;
    for (double mu : {-0.2, 0.2}) {
        const TfEquilibrium eq = tf_radii(mu, 2.4, 1.6);
        for (int i = 1; i < 20; ++i) {
            const double r = eq.r_inner() + (eq.r_plus() - eq.r_inner()) * i / 20.0;
            const double fd = (std::log(tf_profile(r + h, eq)) - std::log(tf_profile(r - h, eq))) / (2 * h);
            const double g = log_density_gradient(r, eq);
            CHECK(std::abs(g - fd) <= 1e-6 * std::max(1.0, std::abs(g)));
            CHECK(local_drift_speed(r, eq, 0.72) == doctest::Approx(-0.72 * g));
        }
    }
    CHECK(code_of([&] { (void)log_density_gradient(disk.r_plus(), disk); }) == Errc::singular_gradient);
    CHECK(code_of([&] { (void)log_density_gradient(3.0, disk); }) == Errc::singular_gradient);
    const TfEquilibrium ring = tf_radii(-0.2, 2.4, 1.6);
    CHECK(code_of([&] { (void)log_density_gradient(ring.r_inner(), ring); }) == Errc::singular_gradient);
    CHECK(code_of([&] { (void)log_density_gradient(0.1, ring); }) == Errc::singular_gradient);
    // pole at R_+
    CHECK(log_density_gradient(disk.r_plus() - 1e-6, disk) < -1e5);
}

TEST_CASE("mu = 0 touches the origin") {
    const TfEquilibrium eq = tf_radii(0.0, 2.4, 1.6);
    CHECK(eq.r_minus_sq == 0.0);
    CHECK(eq.r_plus_sq == doctest::Approx(4.76 / 1.6).epsilon(1e-14));
    CHECK(tf_profile(0.0, eq) == 0.0);
}

TEST_CASE("error paths") {
    CHECK(code_of([] { (void)tf_radii(0.2, 2.4, 0.0); }) == Errc::invalid_parameter);
    CHECK(code_of([] { (void)tf_radii(0.2, 2.4, -1.0); }) == Errc::invalid_parameter);
    CHECK(code_of([] { (void)tf_radii(std::numeric_limits<double>::quiet_NaN(), 2.4, 1.6); }) ==
          Errc::invalid_parameter);
    // A = 1.4875, A^2 = 2.2127: 2 mu / beta below -A^2 has no real radii
    CHECK(code_of([] { (void)tf_radii(-2.0, 2.4, 1.6); }) == Errc::no_equilibrium);
    // slow rotation: A < 0, mu < 0 leaves both roots negative
    CHECK(code_of([] { (void)tf_radii(-0.01, 0.5, 1.6); }) == Errc::empty_cloud);
}

}  // TEST_SUITE
