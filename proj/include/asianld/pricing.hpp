#pragma once

#include "asianld/types.hpp"

namespace asianld {

/// Undiscounted Black-Scholes value on a forward: F Phi(d1) - K Phi(d2) for a
/// call. Returns intrinsic value at zero total volatility.
double bs_kernel(double forward, double strike, double vol_sqrt_t, Flavor flavor);

/// Undiscounted Bachelier value: (F - K) Phi(d) + w phi(d), d = (F - K)/w.
double bachelier_kernel(double forward, double strike, double normal_vol_sqrt_t, Flavor flavor);

/// Equivalent log-normal volatility of the Asian option,
///   Sigma_LN = sigma sqrt(log^2(K/A_inf) / (2 J(K/S0, rho))),
/// switching to the at-the-money limit sigma (S0/A_inf) sqrt(v(rho)) inside
/// the ATM window.
double implied_lognormal_vol(double strike, const MarketParams& market, const AveragingGrid& grid);

/// Equivalent normal (Bachelier) volatility,
///   Sigma_N = sigma sqrt((K - A_inf)^2 / (2 J(K/S0, rho))),
/// with ATM limit sigma S0 sqrt(v(rho)).
double implied_normal_vol(double strike, const MarketParams& market, const AveragingGrid& grid);

/// Price a fixed-strike Asian option through the equivalent-vol pipeline:
/// discounted Black-Scholes on forward A_inf at Sigma_LN.
PriceResult price_fixed(const OptionSpec& spec, const MarketParams& market,
                        const AveragingGrid& grid);

/// Price a floating-strike Asian option via the change-of-measure equivalence
/// with a fixed-strike option at strike kappa S0 and drift -rho; the
/// at-the-money weight kappa = (1 - e^{-rho})/rho uses the sqrt(n) law instead.
PriceResult price_floating(const OptionSpec& spec, const MarketParams& market,
                           const AveragingGrid& grid);

/// Leading at-the-money asymptotic price (strike pinned at A_inf):
///   e^{-rT} S0 sqrt(beta v(rho)/pi) / sqrt(n); identical for call and put.
double atm_price_asymptotic(const MarketParams& market, const AveragingGrid& grid, Flavor flavor);

/// In-the-money expansion: discounted intrinsic plus the 1/(2n) correction
/// (the correction vanishes at rho = 0, where the remainder is exponentially
/// small). Throws RegimeError unless the option is ITM.
double itm_expansion(const OptionSpec& spec, const MarketParams& market,
                     const AveragingGrid& grid);

/// Leading OTM decay exponent n I(K); the price behaves as e^{-n I(K) + o(n)}.
/// Throws RegimeError unless the option is OTM.
double otm_decay(const OptionSpec& spec, const MarketParams& market, const AveragingGrid& grid);

namespace detail {

// ITM expansion value without the regime guard; used for the algebraic
// parity identity between the displayed call and put expansions.
double itm_expansion_value(Flavor flavor, double strike, const MarketParams& market,
                           const AveragingGrid& grid);

// |log(K/A_inf)| below this routes to the ATM limit formulas.
inline constexpr double kAtmLogThreshold = 1e-6;

}  // namespace detail

}  // namespace asianld
