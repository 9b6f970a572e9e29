#pragma once

// Order-0 and order-1 Bessel functions of the first and second kind.

namespace rossby {

struct BesselPair {
    double j0 = 0.0;
    double y0 = 0.0;
};

[[nodiscard]] double bessel_j0(double x);
[[nodiscard]] double bessel_j1(double x);
/// Throws Error(domain_error) for x <= 0.
[[nodiscard]] double bessel_y0(double x);
[[nodiscard]] double bessel_y1(double x);
[[nodiscard]] BesselPair bessel_j0_y0(double x);

/// n-th positive zero of J0 (n >= 1), by sign-change scan and bisection.
[[nodiscard]] double j0_zero(int n);

}  // namespace rossby
