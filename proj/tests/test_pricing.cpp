#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asianld/math.hpp"
#include "asianld/pricing.hpp"
#include "asianld/scaling.hpp"
#include "asianld/variational.hpp"

using namespace asianld;

namespace {
const MarketParams kScenario1(2.0, 0.02, 0.0, 0.1);
const AveragingGrid kGrid250(250, 1.0 / 250.0);
}  // namespace

TEST_CASE("Black-Scholes kernel") {
    CHECK(bs_kernel(1.0, 1.0, 0.0, Flavor::Call) == 0.0);
    CHECK(bs_kernel(1.2, 1.0, 0.0, Flavor::Call) == doctest::Approx(0.2));
    CHECK(bs_kernel(1.2, 1.0, 0.0, Flavor::Put) == 0.0);
    // ATM-forward identity: C = F (2 Phi(v/2) - 1)
    CHECK(bs_kernel(1.0, 1.0, 0.2, Flavor::Call) ==
          doctest::Approx(2.0 * norm_cdf(0.1) - 1.0).epsilon(1e-15));
    // call/put symmetry at the forward
    CHECK(bs_kernel(1.0, 1.0, 0.37, Flavor::Call) ==
          doctest::Approx(bs_kernel(1.0, 1.0, 0.37, Flavor::Put)).epsilon(1e-15));
}

TEST_CASE("Bachelier kernel") {
    CHECK(bachelier_kernel(1.0, 1.0, 0.25, Flavor::Call) ==
          doctest::Approx(0.25 / std::sqrt(2.0 * 3.14159265358979324)).epsilon(1e-15));
    CHECK(bachelier_kernel(1.1, 1.0, 0.0, Flavor::Call) == doctest::Approx(0.1));
    CHECK(bachelier_kernel(1.1, 1.0, 0.0, Flavor::Put) == 0.0);
    // put-call parity: C - P = F - K
    CHECK(bachelier_kernel(1.07, 1.0, 0.3, Flavor::Call) -
              bachelier_kernel(1.07, 1.0, 0.3, Flavor::Put) ==
          doctest::Approx(0.07).epsilon(1e-13));
}

TEST_CASE("implied vols: ATM limits and seam continuity") {
    // rho = 0: Sigma_LN -> sigma/sqrt(3) at K = A_inf = S0
    MarketParams m(1.0, 0.0, 0.0, 0.2);
    AveragingGrid g(100, 0.01);
    CHECK(implied_lognormal_vol(1.0, m, g) ==
          doctest::Approx(0.2 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(implied_normal_vol(1.0, m, g) == doctest::Approx(0.2 / std::sqrt(3.0)).epsilon(1e-12));

    // rho != 0 ATM limit
    const ScaledParams sp = scaled_params(kScenario1, kGrid250);
    const double a_inf = a_infinity(2.0, sp.rho);
    CHECK(implied_lognormal_vol(a_inf, kScenario1, kGrid250) ==
          doctest::Approx(0.1 * (2.0 / a_inf) * std::sqrt(fluctuation_variance(sp.rho)))
              .epsilon(1e-12));

    // continuity across the ATM switch
    const double sig_atm = implied_lognormal_vol(a_inf, kScenario1, kGrid250);
    for (double bump : {1e-6, -1e-6}) {
        const double sig = implied_lognormal_vol(a_inf * (1.0 + bump), kScenario1, kGrid250);
        CHECK(std::fabs(sig - sig_atm) < 1e-6 * 0.1);
    }

    // Sigma_N / Sigma_LN -> A_inf at the money
    const double k_near = a_inf * (1.0 + 3e-6);
    CHECK(implied_normal_vol(k_near, kScenario1, kGrid250) /
              implied_lognormal_vol(k_near, kScenario1, kGrid250) ==
          doctest::Approx(a_inf).epsilon(1e-5));

    // positive and finite across the strike range for the benchmark scenarios
    const double scen[][3] = {{0.02, 1, 0.1}, {0.18, 1, 0.3},  {0.0125, 2, 0.25},
                              {0.05, 1, 0.5}, {0.05, 2, 0.5}};
    for (const auto& s : scen) {
        MarketParams ms(2.0, s[0], 0.0, s[2]);
        AveragingGrid gs(250, s[1] / 250.0);
        for (double x = 0.5; x <= 2.0; x += 0.125) {
            const double sig = implied_lognormal_vol(2.0 * x, ms, gs);
            CHECK(sig > 0.0);
            CHECK(std::isfinite(sig));
        }
    }
}

TEST_CASE("log-normal and normal vol routes price within 0.5% of each other") {
    // scenario 1 priced independently through both kernels
    const ScaledParams sp = scaled_params(kScenario1, kGrid250);
    const double a_inf = a_infinity(2.0, sp.rho);
    const double disc = std::exp(-0.02);
    const double sqrt_t = std::sqrt(kGrid250.maturity());
    const double via_ln =
        disc * bs_kernel(a_inf, 2.0, implied_lognormal_vol(2.0, kScenario1, kGrid250) * sqrt_t,
                         Flavor::Call);
    const double via_n =
        disc * bachelier_kernel(a_inf, 2.0, implied_normal_vol(2.0, kScenario1, kGrid250) * sqrt_t,
                                Flavor::Call);
    CHECK(std::fabs(via_n / via_ln - 1.0) < 0.005);
}

TEST_CASE("fixed-strike pricing: frozen scenario values") {
    auto price = [](double r, double t, double s0, double k, double sigma) {
        MarketParams m(s0, r, 0.0, sigma);
        AveragingGrid g(250, t / 250.0);
        return price_fixed(OptionSpec::fixed_strike(Flavor::Call, k), m, g).price;
    };
    CHECK(price(0.05, 1, 2, 2, 0.5) == doctest::Approx(0.246945001225319).epsilon(1e-10));
    CHECK(price(0.02, 1, 2, 2, 0.1) == doctest::Approx(0.0559903732162489).epsilon(1e-10));
    CHECK(price(0.05, 2, 2, 2, 0.5) == doctest::Approx(0.351517).epsilon(3e-6));
}

TEST_CASE("put-call parity holds exactly through the BS kernel") {
    const ScaledParams sp = scaled_params(kScenario1, kGrid250);
    const double a_inf = a_infinity(2.0, sp.rho);
    const double disc = std::exp(-0.02 * 1.0);
    for (double k = 1.0; k <= 4.01; k += 0.25) {
        const double c =
            price_fixed(OptionSpec::fixed_strike(Flavor::Call, k), kScenario1, kGrid250).price;
        const double p =
            price_fixed(OptionSpec::fixed_strike(Flavor::Put, k), kScenario1, kGrid250).price;
        CHECK(c - p == doctest::Approx(disc * (a_inf - k)).epsilon(1e-13));
    }
}

TEST_CASE("Merton bounds hold for every priced scenario") {
    const double scen[][5] = {{0.02, 1, 2, 2, 0.1},  {0.18, 1, 2, 2, 0.3},
                              {0.0125, 2, 2, 2, 0.25}, {0.05, 1, 1.9, 2, 0.5},
                              {0.05, 1, 2, 2, 0.5},  {0.05, 1, 2.1, 2, 0.5},
                              {0.05, 2, 2, 2, 0.5}};
    for (const auto& s : scen) {
        MarketParams m(s[2], s[0], 0.0, s[4]);
        AveragingGrid g(250, s[1] / 250.0);
        const double a_inf = a_infinity(s[2], scaled_params(m, g).rho);
        const double undisc =
            price_fixed(OptionSpec::fixed_strike(Flavor::Call, s[3]), m, g).price *
            std::exp(s[0] * s[1]);
        CHECK(undisc >= std::fmax(a_inf - s[3], 0.0) - 1e-12);
        CHECK(undisc <= a_inf + 1e-12);
    }
}

TEST_CASE("regimes and decay rate") {
    const ScaledParams sp = scaled_params(kScenario1, kGrid250);
    const double a_inf = a_infinity(2.0, sp.rho);

    const auto call_otm =
        price_fixed(OptionSpec::fixed_strike(Flavor::Call, 2.5), kScenario1, kGrid250);
    CHECK(call_otm.regime == Regime::OTM);
    REQUIRE(call_otm.decay_rate.has_value());
    CHECK(*call_otm.decay_rate ==
          doctest::Approx(250.0 * rate_i(2.5, 2.0, sp.beta, sp.rho)).epsilon(1e-13));

    const auto call_itm =
        price_fixed(OptionSpec::fixed_strike(Flavor::Call, 1.5), kScenario1, kGrid250);
    CHECK(call_itm.regime == Regime::ITM);
    CHECK(!call_itm.decay_rate.has_value());

    const auto put_otm =
        price_fixed(OptionSpec::fixed_strike(Flavor::Put, 1.5), kScenario1, kGrid250);
    CHECK(put_otm.regime == Regime::OTM);

    const auto atm = price_fixed(OptionSpec::fixed_strike(Flavor::Call, a_inf), kScenario1,
                                 kGrid250);
    CHECK(atm.regime == Regime::ATM);
}

TEST_CASE("ATM asymptotic price") {
    // sigma = 0.2, T = 1, S0 = 100, r = q = 0, n = 100: beta = 2,
    // price = 100 sqrt(beta/(3 pi)) / 10
    MarketParams m(100.0, 0.0, 0.0, 0.2);
    AveragingGrid g(100, 0.01);
    const double want = 100.0 * std::sqrt(2.0 / (3.0 * 3.14159265358979324)) / 10.0;
    CHECK(atm_price_asymptotic(m, g, Flavor::Call) == doctest::Approx(want).epsilon(1e-14));
    CHECK(atm_price_asymptotic(m, g, Flavor::Call) ==
          atm_price_asymptotic(m, g, Flavor::Put));

    // n^{-1/2} decay at fixed (beta, rho): tau n^2 held constant
    CHECK(atm_price_asymptotic(m, AveragingGrid(400, 0.01 / 16.0), Flavor::Call) ==
          doctest::Approx(atm_price_asymptotic(m, g, Flavor::Call) / 2.0).epsilon(1e-12));

    // consistency with price_fixed at K = A_inf within 0.5% for n >= 100
    const ScaledParams sp = scaled_params(m, g);
    const double a_inf = a_infinity(100.0, sp.rho);
    const double via_bs =
        price_fixed(OptionSpec::fixed_strike(Flavor::Call, a_inf), m, g).price;
    CHECK(std::fabs(via_bs / atm_price_asymptotic(m, g, Flavor::Call) - 1.0) < 0.005);
}

TEST_CASE("ITM expansion") {
    MarketParams m(2.0, 0.02, 0.0, 0.1);
    AveragingGrid g(250, 1.0 / 250.0);
    const ScaledParams sp = scaled_params(m, g);
    const double a_inf = a_infinity(2.0, sp.rho);
    const double disc = std::exp(-0.02);

    const double c = itm_expansion(OptionSpec::fixed_strike(Flavor::Call, 1.0), m, g);
    CHECK(c == doctest::Approx(disc * (a_inf - 1.0) + disc * 2.0 * std::expm1(0.02) / 500.0)
                   .epsilon(1e-14));

    // correction halves when n doubles
    AveragingGrid g2(500, 1.0 / 500.0);
    const double c2 = itm_expansion(OptionSpec::fixed_strike(Flavor::Call, 1.0), m, g2);
    const double lead = disc * (a_inf - 1.0);
    CHECK(c - lead == doctest::Approx(2.0 * (c2 - lead)).epsilon(1e-12));

    // the displayed call and put expansions differ by twice the intrinsic
    // plus e^{-rT} S0 (e^rho - 1)/n, an algebraic identity of the two forms
    for (double k : {1.0, 1.5, 3.0}) {
        const double ce = detail::itm_expansion_value(Flavor::Call, k, m, g);
        const double pe = detail::itm_expansion_value(Flavor::Put, k, m, g);
        const double want = 2.0 * disc * (a_inf - k) + disc * 2.0 * std::expm1(0.02) / 250.0;
        CHECK(ce - pe == doctest::Approx(want).epsilon(1e-13));
    }

    // rho = 0 returns discounted intrinsic only
    MarketParams m0(2.0, 0.03, 0.03, 0.1);
    CHECK(itm_expansion(OptionSpec::fixed_strike(Flavor::Call, 1.0), m0, g) ==
          doctest::Approx(std::exp(-0.03) * 1.0).epsilon(1e-14));

    CHECK_THROWS_AS(itm_expansion(OptionSpec::fixed_strike(Flavor::Call, 2.5), m, g),
                    RegimeError);
    CHECK_THROWS_AS(itm_expansion(OptionSpec::fixed_strike(Flavor::Call, a_inf), m, g),
                    RegimeError);
}

TEST_CASE("OTM decay exponent") {
    MarketParams m(1.0, 0.0, 0.0, 0.2);
    AveragingGrid g(100, 0.01);
    const ScaledParams sp = scaled_params(m, g);  // beta = 2, rho = 0

    const double d = otm_decay(OptionSpec::fixed_strike(Flavor::Put, 0.5), m, g);
    CHECK(d == doctest::Approx(100.0 * rate_j(0.5, 0.0).value / (2.0 * sp.beta)).epsilon(1e-13));

    // linear growth in n at fixed (beta, rho): rescale sigma to keep beta = 2
    MarketParams m2(1.0, 0.0, 0.0, 0.1);
    AveragingGrid g2(200, 0.01);
    CHECK(scaled_params(m2, g2).beta == doctest::Approx(sp.beta).epsilon(1e-15));
    CHECK(otm_decay(OptionSpec::fixed_strike(Flavor::Put, 0.5), m2, g2) ==
          doctest::Approx(2.0 * d).epsilon(1e-12));

    // decay vanishes as the strike approaches the limit point
    const double near_atm = otm_decay(
        OptionSpec::fixed_strike(Flavor::Call, a_infinity(1.0, 0.0) * (1.0 + 1e-5)), m, g);
    CHECK(near_atm < 1e-8);
    CHECK(near_atm >= 0.0);

    CHECK_THROWS_AS(otm_decay(OptionSpec::fixed_strike(Flavor::Call, 0.5), m, g), RegimeError);
}

TEST_CASE("floating-strike pricing") {
    // ATM at kappa = 1, rho = 0: call = put = e^{-rT} S0 sqrt(s^2/(2 pi))/sqrt(n)
    MarketParams m(1.0, 0.0, 0.0, 0.2);
    AveragingGrid g(100, 0.01);
    const ScaledParams sp = scaled_params(m, g);
    const double s2 = floating_atm_variance(sp.beta, sp.rho);
    const double want = std::sqrt(s2 / (2.0 * 3.14159265358979324)) / 10.0;
    const auto call = price_floating(OptionSpec::floating_strike(Flavor::Call, 1.0), m, g);
    const auto put = price_floating(OptionSpec::floating_strike(Flavor::Put, 1.0), m, g);
    CHECK(call.price == doctest::Approx(want).epsilon(1e-14));
    CHECK(call.price == put.price);
    CHECK(call.regime == Regime::ATM);
    CHECK(s2 == doctest::Approx(2.0 * sp.beta / 3.0).epsilon(1e-12));

    // OTM floating call decay equals the fixed-put decay at (kappa S0, -rho)
    MarketParams md(1.0, 0.05, 0.0, 0.2);
    AveragingGrid gd(250, 1.0 / 250.0);
    const ScaledParams spd = scaled_params(md, gd);
    const auto fc = price_floating(OptionSpec::floating_strike(Flavor::Call, 0.8), md, gd);
    CHECK(fc.regime == Regime::OTM);
    REQUIRE(fc.decay_rate.has_value());
    CHECK(*fc.decay_rate ==
          doctest::Approx(250.0 * floating_rate_h0(0.8, spd.beta, spd.rho)).epsilon(1e-13));
    // independent evaluation through the reversed-drift fixed-strike machinery
    MarketParams star(1.0, 0.0, 0.05, 0.2);
    const double put_decay =
        otm_decay(OptionSpec::fixed_strike(Flavor::Put, 0.8), star, gd);
    CHECK(*fc.decay_rate == doctest::Approx(put_decay).epsilon(1e-13));
    CHECK(*fc.decay_rate ==
          doctest::Approx(250.0 * rate_j(0.8, -spd.rho).value / (2.0 * spd.beta)).epsilon(1e-13));

    // ITM floating call: bounded below by the leading constant
    // kappa S0 e^{-qT} - e^{-rT} S0 (e^rho - 1)/rho and close to it
    const auto itm = price_floating(OptionSpec::floating_strike(Flavor::Call, 1.2), md, gd);
    CHECK(itm.regime == Regime::ITM);
    const double lead = 1.2 * std::exp(-0.0) - std::exp(-0.05) * std::expm1(0.05) / 0.05;
    CHECK(itm.price >= lead - 1e-12);
    CHECK(itm.price - lead < 0.02);

    // mirrored put
    const auto fp = price_floating(OptionSpec::floating_strike(Flavor::Put, 1.2), md, gd);
    CHECK(fp.regime == Regime::OTM);

    CHECK_THROWS_AS(price_floating(OptionSpec::fixed_strike(Flavor::Call, 1.0), md, gd),
                    DomainError);
}
