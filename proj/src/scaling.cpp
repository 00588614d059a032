#include "asianld/scaling.hpp"

#include <cmath>

namespace asianld {

namespace {

// Below this |rho| the difference-of-exponentials forms lose too many digits
// and the Taylor expansions take over.
constexpr double kSeriesThreshold = 1e-4;

}  // namespace

ScaledParams scaled_params(const MarketParams& market, const AveragingGrid& grid) {
    const double n = static_cast<double>(grid.n);
    const double beta = 0.5 * market.sigma * market.sigma * grid.tau * n * n;
    const double rho = (market.rate - market.dividend) * grid.tau * n;
    return ScaledParams(beta, rho);
}

double a_infinity(double spot, double rho) {
    if (!(spot > 0.0)) throw DomainError("a_infinity: spot must be > 0");
    if (std::fabs(rho) < kSeriesThreshold)
        return spot * (1.0 + rho * (0.5 + rho * (1.0 / 6.0 + rho / 24.0)));
    return spot * std::expm1(rho) / rho;
}

double fluctuation_variance(double rho) {
    const double a = rho;
    if (std::fabs(a) < kSeriesThreshold) {
        // v(a) = 1/3 + 5a/12 + 17a^2/60 + 49a^3/360 + ...
        return 1.0 / 3.0 +
               a * (5.0 / 12.0 + a * (17.0 / 60.0 + a * (49.0 / 360.0 + a * (43.0 / 840.0))));
    }
    // a e^{2a} - (3/2) e^{2a} + 2 e^a - 1/2 regrouped through E = e^a - 1 so the
    // cancellation happens between exactly representable small terms:
    //   N = (a - E) + 2 a E + (a - 3/2) E^2.
    // Evaluated in extended precision; near the series threshold the plain form
    // would lose ~8 digits.
    const long double al = a;
    const long double E = expm1l(al);
    const long double N = (al - E) + 2.0L * al * E + (al - 1.5L) * E * E;
    return static_cast<double>(N / (al * al * al));
}

double discrete_forward(double spot, double rho, long n) {
    if (!(spot > 0.0)) throw DomainError("discrete_forward: spot must be > 0");
    if (n < 1) throw DomainError("discrete_forward: n must be >= 1");
    if (rho == 0.0) return spot;
    const double nn = static_cast<double>(n);
    return spot * std::expm1(rho) / (nn * (-std::expm1(-rho / nn)));
}

double floating_atm_variance(double beta, double rho) {
    if (!(beta >= 0.0)) throw DomainError("floating_atm_variance: beta must be >= 0");
    const double a = rho;
    double factor;  // s^2 / (2 beta)
    if (std::fabs(a) < kSeriesThreshold) {
        factor = 1.0 / 3.0 +
                 a * (1.0 / 4.0 + a * (7.0 / 60.0 + a * (1.0 / 24.0 + a * (31.0 / 2520.0))));
    } else {
        // (1/rho^3) [rho - 2(e^rho - 1) + (e^{2rho} - 1)/2] = (1/rho^3) [(rho - E) + E^2/2]
        const long double al = a;
        const long double E = expm1l(al);
        const long double N = (al - E) + 0.5L * E * E;
        factor = static_cast<double>(N / (al * al * al));
    }
    return 2.0 * beta * factor;
}

}  // namespace asianld
