#include "asianld/pricing.hpp"

#include <cmath>

#include "asianld/math.hpp"
#include "asianld/scaling.hpp"
#include "asianld/variational.hpp"

namespace asianld {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

struct Derived {
    double beta;
    double rho;
    double maturity;
    double a_inf;
    double discount;  // e^{-r n tau}, always from primitive inputs
};

Derived derive(const MarketParams& market, const AveragingGrid& grid) {
    const ScaledParams sp = scaled_params(market, grid);
    Derived d;
    d.beta = sp.beta;
    d.rho = sp.rho;
    d.maturity = grid.maturity();
    d.a_inf = a_infinity(market.spot, sp.rho);
    d.discount = std::exp(-market.rate * d.maturity);
    return d;
}

double intrinsic(double forward, double strike, Flavor flavor) {
    const double diff = (flavor == Flavor::Call) ? forward - strike : strike - forward;
    return std::fmax(diff, 0.0);
}

Regime classify(double strike, double a_inf, Flavor flavor) {
    const double log_m = std::log(strike / a_inf);
    if (std::fabs(log_m) < detail::kAtmLogThreshold) return Regime::ATM;
    const bool above = log_m > 0.0;
    if (flavor == Flavor::Call) return above ? Regime::OTM : Regime::ITM;
    return above ? Regime::ITM : Regime::OTM;
}

}  // namespace

double bs_kernel(double forward, double strike, double vol_sqrt_t, Flavor flavor) {
    if (!(forward > 0.0) || !(strike > 0.0))
        throw DomainError("bs_kernel: forward and strike must be > 0");
    if (!(vol_sqrt_t >= 0.0)) throw DomainError("bs_kernel: vol_sqrt_t must be >= 0");
    if (vol_sqrt_t == 0.0) return intrinsic(forward, strike, flavor);
    const double d1 = std::log(forward / strike) / vol_sqrt_t + 0.5 * vol_sqrt_t;
    const double d2 = d1 - vol_sqrt_t;
    if (flavor == Flavor::Call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

double bachelier_kernel(double forward, double strike, double normal_vol_sqrt_t, Flavor flavor) {
    if (!(normal_vol_sqrt_t >= 0.0))
        throw DomainError("bachelier_kernel: normal_vol_sqrt_t must be >= 0");
    if (normal_vol_sqrt_t == 0.0) return intrinsic(forward, strike, flavor);
    const double d = (forward - strike) / normal_vol_sqrt_t;
    if (flavor == Flavor::Call)
        return (forward - strike) * norm_cdf(d) + normal_vol_sqrt_t * norm_pdf(d);
    return (strike - forward) * norm_cdf(-d) + normal_vol_sqrt_t * norm_pdf(d);
}

double implied_lognormal_vol(double strike, const MarketParams& market,
                             const AveragingGrid& grid) {
    if (!(strike > 0.0)) throw DomainError("implied_lognormal_vol: strike must be > 0");
    const Derived d = derive(market, grid);
    const double log_m = std::log(strike / d.a_inf);
    if (std::fabs(log_m) < detail::kAtmLogThreshold)
        return market.sigma * (market.spot / d.a_inf) * std::sqrt(fluctuation_variance(d.rho));
    const double j = rate_j(strike / market.spot, d.rho).value;
    return market.sigma * std::sqrt(0.5 * log_m * log_m / j);
}

double implied_normal_vol(double strike, const MarketParams& market, const AveragingGrid& grid) {
    if (!(strike > 0.0)) throw DomainError("implied_normal_vol: strike must be > 0");
    const Derived d = derive(market, grid);
    if (std::fabs(std::log(strike / d.a_inf)) < detail::kAtmLogThreshold)
        return market.sigma * market.spot * std::sqrt(fluctuation_variance(d.rho));
    const double j = rate_j(strike / market.spot, d.rho).value;
    const double diff = strike - d.a_inf;
    return market.sigma * std::sqrt(0.5 * diff * diff / j);
}

PriceResult price_fixed(const OptionSpec& spec, const MarketParams& market,
                        const AveragingGrid& grid) {
    if (spec.style != Style::FixedStrike)
        throw DomainError("price_fixed: spec must be fixed-strike");
    const Derived d = derive(market, grid);
    const double k = spec.strike;

    PriceResult out;
    out.regime = classify(k, d.a_inf, spec.flavor);
    out.implied_ln_vol = implied_lognormal_vol(k, market, grid);
    out.implied_n_vol = implied_normal_vol(k, market, grid);
    out.diagnostics = rate_j(k / market.spot, d.rho);
    out.price =
        d.discount * bs_kernel(d.a_inf, k, out.implied_ln_vol * std::sqrt(d.maturity), spec.flavor);
    if (out.regime == Regime::OTM)
        out.decay_rate = static_cast<double>(grid.n) * out.diagnostics.value / (2.0 * d.beta);
    return out;
}

double atm_price_asymptotic(const MarketParams& market, const AveragingGrid& grid,
                            Flavor /*flavor*/) {
    // The leading sqrt(n) law is flavor-symmetric.
    const Derived d = derive(market, grid);
    const double pi = 3.14159265358979323846;
    return d.discount * market.spot * std::sqrt(d.beta * fluctuation_variance(d.rho) / pi) /
           std::sqrt(static_cast<double>(grid.n));
}

namespace detail {

double itm_expansion_value(Flavor flavor, double strike, const MarketParams& market,
                           const AveragingGrid& grid) {
    const Derived d = derive(market, grid);
    const double sign = (flavor == Flavor::Call) ? 1.0 : -1.0;
    const double lead = d.discount * sign * (d.a_inf - strike);
    if (d.rho == 0.0) return lead;  // remainder is e^{-n I(K) + o(n)}
    const double corr =
        d.discount * market.spot * std::expm1(d.rho) / (2.0 * static_cast<double>(grid.n));
    return lead + sign * corr;
}

}  // namespace detail

double itm_expansion(const OptionSpec& spec, const MarketParams& market,
                     const AveragingGrid& grid) {
    if (spec.style != Style::FixedStrike)
        throw DomainError("itm_expansion: spec must be fixed-strike");
    const Derived d = derive(market, grid);
    if (classify(spec.strike, d.a_inf, spec.flavor) != Regime::ITM)
        throw RegimeError("itm_expansion: option is not in-the-money");
    return detail::itm_expansion_value(spec.flavor, spec.strike, market, grid);
}

double otm_decay(const OptionSpec& spec, const MarketParams& market, const AveragingGrid& grid) {
    if (spec.style != Style::FixedStrike) throw DomainError("otm_decay: spec must be fixed-strike");
    const Derived d = derive(market, grid);
    if (classify(spec.strike, d.a_inf, spec.flavor) != Regime::OTM)
        throw RegimeError("otm_decay: option is not out-of-the-money");
    return static_cast<double>(grid.n) * rate_i(spec.strike, market.spot, d.beta, d.rho);
}

PriceResult price_floating(const OptionSpec& spec, const MarketParams& market,
                           const AveragingGrid& grid) {
    if (spec.style != Style::FloatingStrike)
        throw DomainError("price_floating: spec must be floating-strike");
    const Derived d = derive(market, grid);
    const double kappa = spec.kappa;

    // ATM weight (1 - e^{-rho})/rho; equals A_inf(S0 = 1) under the reversed drift.
    const double kappa_atm = (d.rho == 0.0) ? 1.0 : -std::expm1(-d.rho) / d.rho;
    const double rho_star = -d.rho;
    const double a_inf_star = market.spot * kappa_atm;
    const double strike_star = kappa * market.spot;
    const double discount_star = std::exp(-market.dividend * d.maturity);

    // Star-measure equivalent vols: the fixed-strike pipeline at drift -rho.
    MarketParams star(market.spot, market.dividend, market.rate, market.sigma);
    PriceResult out;
    out.implied_ln_vol = implied_lognormal_vol(strike_star, star, grid);
    out.implied_n_vol = implied_normal_vol(strike_star, star, grid);
    out.diagnostics = rate_j(kappa, rho_star);

    const double log_m = std::log(kappa / kappa_atm);
    if (std::fabs(log_m) < detail::kAtmLogThreshold) {
        out.regime = Regime::ATM;
        const double s2 = floating_atm_variance(d.beta, d.rho);
        out.price = d.discount * market.spot * std::sqrt(s2 / kTwoPi) /
                    std::sqrt(static_cast<double>(grid.n));
        return out;
    }

    // A floating call maps to a fixed-strike put on A_n at strike kappa S0 in
    // the starred measure (and the floating put to a fixed call), discounted
    // at the dividend yield.
    const Flavor mapped = (spec.flavor == Flavor::Call) ? Flavor::Put : Flavor::Call;
    out.regime = classify(strike_star, a_inf_star, mapped);
    out.price = discount_star * bs_kernel(a_inf_star, strike_star,
                                          out.implied_ln_vol * std::sqrt(d.maturity), mapped);
    if (out.regime == Regime::OTM)
        out.decay_rate =
            static_cast<double>(grid.n) * floating_rate_h0(kappa, d.beta, d.rho);
    return out;
}

}  // namespace asianld
