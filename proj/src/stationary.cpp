#include "rossby/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rossby/bessel.hpp"
#include "rossby/error.hpp"
#include "rossby/params.hpp"

namespace rossby {

namespace {

constexpr double kScanStep = 0.01;
constexpr double kBisectTol = 1e-12;
constexpr int kMinPoints = 16;

double bisect(auto&& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
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

// Location of max |phi| on [lo, hi]: dense sample, then golden section around the best sample.
double argmax_abs(const StationaryStructure& s, double lo, double hi) {
    constexpr int samples = 2000;
    const double h = (hi - lo) / samples;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i <= samples; ++i) {
        const double v = std::abs(evaluate_structure(s, lo + i * h));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = lo + std::max(0, best - 1) * h;
    double b = lo + std::min(samples, best + 1) * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double r) { return std::abs(evaluate_structure(s, r)); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double r_star = 0.5 * (a + b);
    return f(r_star) >= best_val ? r_star : lo + best * h;
}

void normalize(StationaryStructure& s) {
    const double r_star = argmax_abs(s, s.r_inner, s.r_outer);
    const double peak = evaluate_structure(s, r_star);
    s.a_coef /= peak;
    s.b_coef /= peak;
}

// A field plus the range of rings [lo, hi] on which its values are valid.
struct Work {
    std::vector<double> v;
    int lo = 0;
    int hi = 0;
};

class PolarOps {
public:
    explicit PolarOps(const PolarField& f)
        : nr_(f.n_r()), nt_(f.n_theta()), dr_(f.dr()), dt_(f.dtheta()), r0_(f.r(0)) {}

    [[nodiscard]] Work load(const PolarField& f) const {
        Work w{std::vector<double>(static_cast<std::size_t>(nr_) * nt_), 0, nr_ - 1};
        for (int i = 0; i < nr_; ++i)
            for (int j = 0; j < nt_; ++j) w.v[idx(i, j)] = f.at(i, j);
        return w;
    }

    [[nodiscard]] Work d_r(const Work& f) const {
        Work out = shrink(f, 2);
        for (int i = out.lo; i <= out.hi; ++i)
            for (int j = 0; j < nt_; ++j)
                out.v[idx(i, j)] = (-f.v[idx(i + 2, j)] + 8.0 * f.v[idx(i + 1, j)]
                                    - 8.0 * f.v[idx(i - 1, j)] + f.v[idx(i - 2, j)]) / (12.0 * dr_);
        return out;
    }

    [[nodiscard]] Work d_theta(const Work& f) const {
        Work out = shrink(f, 0);
        for (int i = out.lo; i <= out.hi; ++i)
            for (int j = 0; j < nt_; ++j)
                out.v[idx(i, j)] = (-f.v[idx(i, j + 2)] + 8.0 * f.v[idx(i, j + 1)]
                                    - 8.0 * f.v[idx(i, j - 1)] + f.v[idx(i, j - 2)]) / (12.0 * dt_);
        return out;
    }

    [[nodiscard]] Work laplacian(const Work& f) const {
        Work out = shrink(f, 2);
        for (int i = out.lo; i <= out.hi; ++i) {
            const double r = r0_ + i * dr_;
            for (int j = 0; j < nt_; ++j) {
                const double frr = (-f.v[idx(i + 2, j)] + 16.0 * f.v[idx(i + 1, j)] - 30.0 * f.v[idx(i, j)]
                                    + 16.0 * f.v[idx(i - 1, j)] - f.v[idx(i - 2, j)]) / (12.0 * dr_ * dr_);
                const double fr = (-f.v[idx(i + 2, j)] + 8.0 * f.v[idx(i + 1, j)]
                                   - 8.0 * f.v[idx(i - 1, j)] + f.v[idx(i - 2, j)]) / (12.0 * dr_);
                const double ftt = (-f.v[idx(i, j + 2)] + 16.0 * f.v[idx(i, j + 1)] - 30.0 * f.v[idx(i, j)]
                                    + 16.0 * f.v[idx(i, j - 1)] - f.v[idx(i, j - 2)]) / (12.0 * dt_ * dt_);
                out.v[idx(i, j)] = frr + fr / r + ftt / (r * r);
            }
        }
        return out;
    }

    [[nodiscard]] Work bracket(const Work& a, const Work& b) const {
        const Work ar = d_r(a), at = d_theta(a), br = d_r(b), bt = d_theta(b);
        Work out{std::vector<double>(a.v.size()), std::max(ar.lo, br.lo), std::min(ar.hi, br.hi)};
        for (int i = out.lo; i <= out.hi; ++i) {
            const double r = r0_ + i * dr_;
            for (int j = 0; j < nt_; ++j) {
                const std::size_t k = idx(i, j);
                out.v[k] = (ar.v[k] * bt.v[k] - br.v[k] * at.v[k]) / r;
            }
        }
        return out;
    }

    [[nodiscard]] double max_norm(const Work& f) const {
        double m = 0.0;
        for (int i = f.lo; i <= f.hi; ++i)
            for (int j = 0; j < nt_; ++j) m = std::max(m, std::abs(f.v[idx(i, j)]));
        return m;
    }

private:
    [[nodiscard]] std::size_t idx(int i, int j) const {
        j = ((j % nt_) + nt_) % nt_;
        return static_cast<std::size_t>(i) * nt_ + j;
    }

    [[nodiscard]] Work shrink(const Work& f, int by) const {
        Work out{std::vector<double>(f.v.size()), f.lo + by, f.hi - by};
        if (out.lo > out.hi) throw Error(Errc::resolution, "polar grid too small for nested stencils");
        return out;
    }

    int nr_, nt_;
    double dr_, dt_, r0_;
};

void require_resolution(const PolarField& f) {
    if (f.n_r() < kMinPoints || f.n_theta() < kMinPoints)
        throw Error(Errc::resolution, "polar grid needs at least 16 points per dimension");
}

}  // namespace

StationaryStructure solve_disk_mode(const TfEquilibrium& eq, int mode_index) {
    if (eq.mu <= 0.0) throw Error(Errc::wrong_topology, "disk mode requires mu > 0");
    if (mode_index < 1) throw Error(Errc::invalid_argument, "mode_index must be >= 1");
    StationaryStructure s;
    s.r_inner = 0.0;
    s.r_outer = eq.r_plus();
    s.kappa = j0_zero(mode_index) / s.r_outer;
    s.a_coef = 1.0;  // max |J0| on [0, R_+] is J0(0) = 1
    s.b_coef = 0.0;
    s.mode_index = mode_index;
    return s;
}

double annulus_determinant(double kappa, double r_inner, double r_outer) {
    return bessel_j0(kappa * r_inner) * bessel_y0(kappa * r_outer)
         - bessel_j0(kappa * r_outer) * bessel_y0(kappa * r_inner);
}

StationaryStructure solve_annulus_mode(const TfEquilibrium& eq, int mode_index) {
    if (eq.mu >= 0.0) throw Error(Errc::wrong_topology, "annulus mode requires mu < 0");
    if (mode_index < 1) throw Error(Errc::invalid_argument, "mode_index must be >= 1");
    const double r_in = eq.r_inner();
    const double r_out = eq.r_plus();
    if (!(r_in > 0.0 && r_in < r_out)) throw Error(Errc::wrong_topology, "annulus needs 0 < R_- < R_+");

    auto det = [&](double k) { return annulus_determinant(k, r_in, r_out); };
    const double k_max = 20.0 / (r_out - r_in);
    const int steps = static_cast<int>(std::floor(k_max / kScanStep));

    int found = 0;
    double min_abs = INFINITY;
    double lo = kScanStep;
    double d_lo = det(lo);
    for (int i = 2; i <= steps; ++i) {
        const double hi = i * kScanStep;
        const double d_hi = det(hi);
        min_abs = std::min(min_abs, std::abs(d_hi));
        if (d_lo * d_hi <= 0.0 && ++found == mode_index) {
            StationaryStructure s;
            s.kappa = bisect(det, lo, hi, kBisectTol);
            s.r_inner = r_in;
            s.r_outer = r_out;
            s.mode_index = mode_index;
            // Null vector of the better-conditioned boundary row.
            const BesselPair in = bessel_j0_y0(s.kappa * r_in);
            const BesselPair out = bessel_j0_y0(s.kappa * r_out);
            const BesselPair& row = std::hypot(in.j0, in.y0) >= std::hypot(out.j0, out.y0) ? in : out;
            s.a_coef = row.y0;
            s.b_coef = -row.j0;
            normalize(s);
            return s;
        }
        lo = hi;
        d_lo = d_hi;
    }
    std::ostringstream msg;
    msg << "annulus root " << mode_index << " not bracketed: scanned kappa in (" << kScanStep << ", "
        << k_max << "] with step " << kScanStep << ", found " << found << " sign change(s), min |D| = "
        << min_abs;
    throw Error(Errc::numerical_failure, msg.str());
}

double evaluate_structure(const StationaryStructure& s, double r) {
    const double slack = 1e-12 * std::max(1.0, s.r_outer);
    if (!(r >= s.r_inner - slack && r <= s.r_outer + slack) || r < 0.0)
        throw Error(Errc::domain_error, "radius outside the structure's support");
    const double x = s.kappa * r;
    double v = s.a_coef * bessel_j0(x);
    if (s.b_coef != 0.0) v += s.b_coef * bessel_y0(x);
    return v;
}

std::vector<double> evaluate_structure(const StationaryStructure& s, std::span<const double> r_grid) {
    std::vector<double> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) out.push_back(evaluate_structure(s, r));
    return out;
}

int interior_sign_changes(const StationaryStructure& s, int samples) {
    const double h = (s.r_outer - s.r_inner) / samples;
    int changes = 0;
    double prev = evaluate_structure(s, s.r_inner + 0.5 * h);
    for (int i = 1; i < samples; ++i) {
        const double v = evaluate_structure(s, s.r_inner + (i + 0.5) * h);
        if ((v < 0.0) != (prev < 0.0)) ++changes;
        prev = v;
    }
    return changes;
}

PolarField::PolarField(double r_min, double r_max, int n_r, int n_theta)
    : r_min_(r_min), r_max_(r_max), n_r_(n_r), n_theta_(n_theta) {
    if (n_r < 2 || n_theta < 1 || !(r_max > r_min) || r_min < 0.0)
        throw Error(Errc::invalid_argument, "invalid polar grid");
    dr_ = (r_max - r_min) / (n_r - 1);
    values_.assign(static_cast<std::size_t>(n_r) * n_theta, 0.0);
}

double PolarField::theta(int j) const { return 2.0 * kPi * j / n_theta_; }
double PolarField::dtheta() const { return 2.0 * kPi / n_theta_; }

bool PolarField::same_grid(const PolarField& o) const {
    return r_min_ == o.r_min_ && r_max_ == o.r_max_ && n_r_ == o.n_r_ && n_theta_ == o.n_theta_;
}

PolarField structure_field(const StationaryStructure& s, int n_r, int n_theta) {
    PolarField f(s.r_inner, s.r_outer, n_r, n_theta);
    for (int i = 0; i < n_r; ++i) {
        const double v = evaluate_structure(s, std::min(f.r(i), s.r_outer));
        for (int j = 0; j < n_theta; ++j) f.at(i, j) = v;
    }
    return f;
}

double stationarity_residual(const PolarField& phi, double xi) {
    require_resolution(phi);
    const PolarOps ops(phi);
    const Work p = ops.load(phi);
    const Work lap1 = ops.laplacian(p);
    const Work lap2 = ops.laplacian(lap1);
    const Work b1 = ops.bracket(p, lap1);
    const Work b2 = ops.bracket(p, lap2);
    const Work lap_b1 = ops.laplacian(b1);

    const double c = 0.5 * xi * xi;
    Work res{std::vector<double>(p.v.size()), std::max(lap_b1.lo, b2.lo), std::min(lap_b1.hi, b2.hi)};
    for (int i = res.lo; i <= res.hi; ++i)
        for (int j = 0; j < phi.n_theta(); ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * phi.n_theta() + j;
            res.v[k] = b1.v[k] + c * lap_b1.v[k] - c * b2.v[k];
        }
    return ops.max_norm(res);
}

double poisson_bracket_norm(const PolarField& a, const PolarField& b) {
    require_resolution(a);
    if (!a.same_grid(b)) throw Error(Errc::shape_mismatch, "bracket operands on different grids");
    const PolarOps ops(a);
    return ops.max_norm(ops.bracket(ops.load(a), ops.load(b)));
}

}  // namespace rossby
