#pragma once

#include <cstdint>
#include <optional>

#include "asianld/types.hpp"

namespace asianld {

struct McConfig {
    long paths = 100000;
    std::uint64_t seed = 0;
    bool antithetic = true;
    long batch = 4096;  // accumulation block size; results are independent of threading
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long paths = 0;
    double elapsed = 0.0;  // seconds
};

/// Sample moments of the discrete average and its scaled fluctuation.
/// The fluctuation is centered on the known A_inf, matching the limit law.
struct McMoments {
    double mean_a = 0.0;
    double a_se = 0.0;
    double scaled_var = 0.0;  // sample variance of sqrt(n) (A_n - A_inf)/S0
    double scaled_var_se = 0.0;
    double terminal_mean = 0.0;  // sample mean of S_{t_n}, for martingale checks
    double terminal_se = 0.0;
    long paths = 0;
};

/// Monte Carlo price with exact-in-distribution GBM sampling at the fixing
/// dates (the only error is statistical). Deterministic for a given seed.
McEstimate mc_price(const OptionSpec& spec, const MarketParams& market, const AveragingGrid& grid,
                    const McConfig& cfg);

McMoments mc_average_moments(const MarketParams& market, const AveragingGrid& grid,
                             const McConfig& cfg);

/// Discretized variational optimizer for the limit MGF exponent: maximizes
///   theta S0 Int e^{sqrt(2 beta) g} - (1/2) Int (g' - rho/sqrt(2 beta))^2
/// over piecewise-linear g on a uniform grid with g(0) = 0, using exact
/// per-interval integrals of the exponential. Requires theta <= 0.
double brute_force_lambda(double theta, double spot, double beta, double rho, int grid_points);

/// Discretized constrained optimizer for the rate function J(x_ratio, rho):
/// minimizes (1/2) Int (f' - rho)^2 subject to Int e^f = x_ratio over
/// piecewise-linear f with f(0) = 0, by an augmented-Lagrangian iteration.
/// `penalty_weight` is the initial penalty; `multiplier_hint` optionally
/// warm-starts the constraint multiplier.
double brute_force_rate(double x_ratio, double rho, int grid_points, double penalty_weight = 10.0,
                        std::optional<double> multiplier_hint = std::nullopt);

}  // namespace asianld
