#include "asianld/variational.hpp"

#include <cmath>
#include <limits>

namespace asianld {

namespace detail {

double t1_integral(double delta, double rho) {
    if (delta == 0.0) return 1.0 + 0.5 * rho;
    const double sh = std::sinh(0.5 * delta);
    return std::sinh(delta) / delta + 2.0 * rho * sh * sh / (delta * delta);
}

double t2_integral(double xi, double rho) {
    if (xi == 0.0) return 1.0 + 0.5 * rho;
    const double s = std::sin(xi);
    return std::sin(2.0 * xi) / (2.0 * xi) + 0.5 * rho * s * s / (xi * xi);
}

double j1_value(double delta, double rho) {
    const double s = std::sinh(0.5 * delta);
    const double c = std::cosh(0.5 * delta);
    // 2 tanh(delta/2)/(delta + rho tanh(delta/2)) without the tanh quotient
    const double ratio = 2.0 * s / (delta * c + rho * s);
    return 0.5 * (delta * delta - rho * rho) * (1.0 - ratio) -
           2.0 * rho * std::log(c + rho * s / delta) + rho * rho;
}

double j2_value(double xi, double rho) {
    const double s = std::sin(xi);
    const double c = std::cos(xi);
    // tan(xi)/(xi + (rho/2) tan(xi)); this form stays finite through xi = pi/2
    const double ratio = s / (xi * c + 0.5 * rho * s);
    return 2.0 * (xi * xi + 0.25 * rho * rho) * (ratio - 1.0) -
           2.0 * rho * std::log(c + 0.5 * rho * s / xi) + rho * rho;
}

double j_seam(double rho) {
    return rho * rho * (rho + 4.0) / (2.0 * (rho + 2.0)) - 2.0 * rho * std::log1p(0.5 * rho);
}

double j_series(double u, double rho) {
    const double r = rho;
    const double d = r + 2.0;
    const double c0 = j_seam(r);
    const double c1 = r * r * (r + 4.0) / (12.0 * d * d);
    const double c2 =
        (((r + 18.0) * r + 132.0) * r * r + 360.0 * r + 480.0) / (1440.0 * d * d * d);
    const double c3 = ((((r + 26.0) * r + 288.0) * r + 1656.0) * r * r + 4536.0 * r + 6048.0) /
                      (90720.0 * d * d * d * d);
    const double c4 =
        (((((3.0 * r + 102.0) * r + 1512.0) * r + 12560.0) * r + 60560.0) * r * r +
         156960.0 * r + 195840.0) /
        (14515200.0 * d * d * d * d * d);
    const double c5 =
        ((((((r + 42.0) * r + 780.0) * r + 8416.0) * r + 56808.0) * r + 237792.0) * r * r +
         570240.0 * r + 654720.0) /
        (239500800.0 * d * d * d * d * d * d);
    return c0 + u * (c1 + u * (c2 + u * (c3 + u * (c4 + u * c5))));
}

namespace {

// cos(z/2) + (rho/z) sin(z/2) as a function of u = z^2, both branches.
double c_of_u(double u, double rho) {
    if (u > 0.0) {
        const double z = std::sqrt(u);
        return std::cos(0.5 * z) + rho * std::sin(0.5 * z) / z;
    }
    if (u < 0.0) {
        const double d = std::sqrt(-u);
        return std::cosh(0.5 * d) + rho * std::sinh(0.5 * d) / d;
    }
    return 1.0 + 0.5 * rho;
}

// sin(z)/z
double p_of_u(double u) {
    if (u > 0.0) {
        const double z = std::sqrt(u);
        return std::sin(z) / z;
    }
    if (u < 0.0) {
        const double d = std::sqrt(-u);
        return std::sinh(d) / d;
    }
    return 1.0;
}

// (sin(z/2)/z)^2
double q_of_u(double u) {
    if (u > 0.0) {
        const double z = std::sqrt(u);
        const double s = std::sin(0.5 * z) / z;
        return s * s;
    }
    if (u < 0.0) {
        const double d = std::sqrt(-u);
        const double s = std::sinh(0.5 * d) / d;
        return s * s;
    }
    return 0.25;
}

}  // namespace

}  // namespace detail

namespace {

// Generic bisection on a monotone function with a known sign change.
// `increasing` states the direction of f on [lo, hi].
RootSolve bisect(double lo, double hi, double target, bool increasing,
                 double (*f)(double, double), double rho, const VariationalConfig& cfg) {
    int it = 0;
    while (hi - lo > cfg.root_tol * (1.0 + hi) && it < cfg.max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
        const bool below = f(mid, rho) < target;
        if (below == increasing)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    if (it >= cfg.max_iter) throw ConvergenceError("bisection: max_iter exceeded");
    RootSolve out;
    out.root = 0.5 * (lo + hi);
    out.residual = std::fabs(f(out.root, rho) - target) / std::fmax(1.0, std::fabs(target));
    out.iterations = it;
    return out;
}

}  // namespace

RootSolve solve_delta_fixed(double x_ratio, double rho, const VariationalConfig& cfg) {
    const double seam = 1.0 + 0.5 * rho;
    if (!(x_ratio > 0.0)) throw DomainError("solve_delta_fixed: x_ratio must be > 0");
    if (x_ratio < seam)
        throw DomainError("solve_delta_fixed: x_ratio below 1 + rho/2 (trigonometric regime)");
    if (x_ratio == seam) return RootSolve{0.0, 0.0, 0};

    double hi = 1.0;
    int doublings = 0;
    while (detail::t1_integral(hi, rho) < x_ratio) {
        hi *= 2.0;
        if (++doublings > 64) throw ConvergenceError("solve_delta_fixed: bracket expansion failed");
    }
    return bisect(0.0, hi, x_ratio, /*increasing=*/true, detail::t1_integral, rho, cfg);
}

double xi_upper_bound(double rho) {
    if (rho == 0.0) return 1.5707963267948966192;  // pi/2 exactly
    const double pi = 3.14159265358979323846;
    double lo = 0.0;
    double hi = (rho > 0.0) ? pi : 0.5 * pi;
    // h(xi) = 2 xi cos(xi) + rho sin(xi): positive near 0 (requires rho > -2),
    // negative at the right end.
    if (rho <= -2.0) throw DomainError("xi_upper_bound: rho must exceed -2");
    auto h = [rho](double x) { return 2.0 * x * std::cos(x) + rho * std::sin(x); };
    if (rho < 0.0 && h(hi) > 0.0)
        throw ConvergenceError("xi_upper_bound: no sign change in bracket");
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RootSolve solve_xi_fixed(double x_ratio, double rho, const VariationalConfig& cfg) {
    const double seam = 1.0 + 0.5 * rho;
    if (!(x_ratio > 0.0)) throw DomainError("solve_xi_fixed: x_ratio must be > 0");
    if (!(seam > 0.0) || x_ratio > seam)
        throw DomainError("solve_xi_fixed: x_ratio outside (0, 1 + rho/2]");
    if (x_ratio == seam) return RootSolve{0.0, 0.0, 0};

    const double xi_max = xi_upper_bound(rho);
    // T2 decreases from 1 + rho/2 at 0+ to 0 at xi_max.
    return bisect(0.0, xi_max, x_ratio, /*increasing=*/false, detail::t2_integral, rho, cfg);
}

RateValue rate_j(double x_ratio, double rho, const VariationalConfig& cfg) {
    if (!(x_ratio > 0.0)) throw DomainError("rate_j: x_ratio must be > 0 (rate is infinite)");
    const double seam = 1.0 + 0.5 * rho;

    RateValue out;
    RootSolve rs;
    bool hyperbolic;
    if (x_ratio >= seam) {
        rs = solve_delta_fixed(x_ratio, rho, cfg);
        hyperbolic = true;
    } else {
        rs = solve_xi_fixed(x_ratio, rho, cfg);
        hyperbolic = false;
    }
    out.root = rs.root;
    out.residual = rs.residual;
    out.iterations = rs.iterations;

    // The truncated Taylor expansion of the unified z-form beats the direct
    // branch formulas on a window well beyond the configured root threshold;
    // near the zero of J at u = -rho^2 it is the only way to keep relative
    // accuracy in double precision.
    const double u = hyperbolic ? -rs.root * rs.root : 4.0 * rs.root * rs.root;
    if (std::fabs(rs.root) < cfg.series_threshold || std::fabs(u) < 2.5e-3) {
        out.value = detail::j_series(u, rho);
        out.branch = Branch::SeriesBoundary;
    } else {
        out.value = hyperbolic ? detail::j1_value(rs.root, rho) : detail::j2_value(rs.root, rho);
        out.branch = hyperbolic ? Branch::Hyperbolic : Branch::Trigonometric;
    }
    // The rate is nonnegative; rounding at the evaluation scale may leave a
    // sub-1e-10 negative residue near the zero of J.
    if (out.value < 0.0 && out.value > -1e-10) out.value = 0.0;
    return out;
}

double rate_i(double x, double spot, double beta, double rho, const VariationalConfig& cfg) {
    if (!(beta > 0.0)) throw DomainError("rate_i: beta must be > 0");
    if (!(spot > 0.0)) throw DomainError("rate_i: spot must be > 0");
    if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
    return rate_j(x / spot, rho, cfg).value / (2.0 * beta);
}

RateValue lambda_mgf(double a, double b, double rho, const VariationalConfig& cfg) {
    if (!(a > 0.0)) throw DomainError("lambda_mgf: a must be > 0");
    if (!(b > 0.0)) throw DomainError("lambda_mgf: b must be > 0");

    const double ab2 = a * b * b;
    const double tie = 2.0 * rho * rho / ((2.0 + rho) * (2.0 + rho));
    const double b2 = b * b;

    auto lambda_at = [&](double u) {
        const double q = detail::q_of_u(u);
        const double p = detail::p_of_u(u);
        const double c = detail::c_of_u(u, rho);
        return a * (1.0 - u * q - (4.0 * rho - rho * rho) * q + (rho - 2.0) * p) +
               2.0 * rho / b2 * std::log(c) - rho * rho / b2;
    };
    auto g = [&](double u) {
        const double c = detail::c_of_u(u, rho);
        return u + rho * rho - 2.0 * ab2 * c * c;
    };

    RateValue out;
    const double rel = (tie > 0.0) ? (ab2 - tie) / tie : 1.0;
    if (std::fabs(rel) < 1e-12) {
        // Boundary case: both equations degenerate to the root-0 limit.
        out.value = lambda_at(0.0);
        out.branch = Branch::SeriesBoundary;
        out.root = 0.0;
        out.residual = 0.0;
        out.iterations = 0;
        return out;
    }

    double lo, hi;
    bool trig = ab2 > tie;
    if (trig) {
        lo = 0.0;
        const double zmax = 2.0 * xi_upper_bound(rho);
        hi = zmax * zmax;
    } else {
        lo = -rho * rho;
        hi = 0.0;
    }
    // g is increasing in u on either bracket: g(lo) < 0 < g(hi).
    int it = 0;
    while (hi - lo > cfg.root_tol * (1.0 + std::fabs(hi) + std::fabs(lo)) && it < cfg.max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    if (it >= cfg.max_iter) throw ConvergenceError("lambda_mgf: max_iter exceeded");
    const double u = 0.5 * (lo + hi);

    out.value = lambda_at(u);
    out.branch = trig ? Branch::Trigonometric : Branch::Hyperbolic;
    out.root = trig ? 0.5 * std::sqrt(u) : std::sqrt(-u);  // xi or delta
    out.residual = std::fabs(g(u)) / std::fmax(1.0, ab2);
    out.iterations = it;
    return out;
}

double mgf_log_limit(double theta, double spot, double beta, double rho,
                     const VariationalConfig& cfg) {
    if (!(beta > 0.0)) throw DomainError("mgf_log_limit: beta must be > 0");
    if (!(spot > 0.0)) throw DomainError("mgf_log_limit: spot must be > 0");
    if (theta > 0.0) return std::numeric_limits<double>::infinity();
    if (theta == 0.0) return 0.0;
    return lambda_mgf(-theta * spot, std::sqrt(2.0 * beta), rho, cfg).value;
}

double floating_rate_h0(double kappa, double beta, double rho, const VariationalConfig& cfg) {
    if (!(kappa > 0.0)) throw DomainError("floating_rate_h0: kappa must be > 0");
    if (!(beta > 0.0)) throw DomainError("floating_rate_h0: beta must be > 0");
    return rate_j(kappa, -rho, cfg).value / (2.0 * beta);
}

}  // namespace asianld
