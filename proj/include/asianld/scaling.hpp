#pragma once

#include "asianld/types.hpp"

namespace asianld {

/// Map model inputs to the scaled regime coordinates
/// (beta, rho) = (sigma^2 tau n^2 / 2, (r - q) tau n).
ScaledParams scaled_params(const MarketParams& market, const AveragingGrid& grid);

/// Almost-sure limit of the discrete average: A_inf = S0 (e^rho - 1)/rho.
double a_infinity(double spot, double rho);

/// Limiting variance v(rho) of the scaled fluctuation sqrt(n)(A_n - A_inf)/S0,
/// divided by 2 beta:
///   v(a) = a^-3 [a e^{2a} - (3/2) e^{2a} + 2 e^a - 1/2],  v(0) = 1/3.
double fluctuation_variance(double rho);

/// Exact mean of the discrete average, E[A_n] = S0 (e^rho - 1)/(n (1 - e^{-rho/n})).
double discrete_forward(double spot, double rho, long n);

/// Variance parameter s^2 of the at-the-money floating-strike fluctuation:
///   s^2 = (2 beta/rho^2) [1 - (2/rho)(e^rho - 1) + (e^{2rho} - 1)/(2rho)],
/// with limit 2 beta/3 as rho -> 0.
double floating_atm_variance(double beta, double rho);

}  // namespace asianld
