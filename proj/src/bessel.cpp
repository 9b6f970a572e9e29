#include "rossby/bessel.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "rossby/error.hpp"

namespace rossby {

namespace {

void require_positive(double x) {
    if (!(x > 0.0)) throw Error(Errc::domain_error, "Y_n(x) requires x > 0, got " + std::to_string(x));
}

}  // namespace

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }
double bessel_j1(double x) { return boost::math::cyl_bessel_j(1, x); }

double bessel_y0(double x) {
    require_positive(x);
    return boost::math::cyl_neumann(0, x);
}

double bessel_y1(double x) {
    require_positive(x);
    return boost::math::cyl_neumann(1, x);
}

BesselPair bessel_j0_y0(double x) { return {bessel_j0(x), bessel_y0(x)}; }

double j0_zero(int n) {
    if (n < 1) throw Error(Errc::invalid_argument, "zero index must be >= 1");
    // Zeros of J0 are separated by roughly pi, so a 0.1 scan cannot skip one.
    constexpr double step = 0.1;
    int found = 0;
    double lo = step;
    double f_lo = bessel_j0(lo);
    for (int i = 2;; ++i) {
        const double hi = i * step;
        const double f_hi = bessel_j0(hi);
        if (f_lo * f_hi <= 0.0 && ++found == n) {
            double a = lo, b = hi, fa = f_lo;
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = bessel_j0(m);
                if (fm == 0.0) return m;
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
}

}  // namespace rossby
