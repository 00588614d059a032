#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace asianld {

// Thrown when an input is outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative solver exhausts its iteration budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an expansion valid only in one moneyness regime is applied in another.
struct RegimeError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Black-Scholes model inputs: spot, risk-free rate, dividend yield, volatility.
struct MarketParams {
    double spot;
    double rate;
    double dividend;
    double sigma;

    MarketParams(double spot_, double rate_, double dividend_, double sigma_)
        : spot(spot_), rate(rate_), dividend(dividend_), sigma(sigma_) {
        if (!(spot > 0.0)) throw DomainError("MarketParams: spot must be > 0");
        if (!(sigma >= 0.0)) throw DomainError("MarketParams: sigma must be >= 0");
        if (!std::isfinite(rate) || !std::isfinite(dividend))
            throw DomainError("MarketParams: rate and dividend must be finite");
    }
};

/// Uniform averaging grid t_i = i*tau, i = 1..n.
struct AveragingGrid {
    long n;
    double tau;

    AveragingGrid(long n_, double tau_) : n(n_), tau(tau_) {
        if (n < 1) throw DomainError("AveragingGrid: n must be >= 1");
        if (!(tau > 0.0)) throw DomainError("AveragingGrid: tau must be > 0");
    }

    double maturity() const { return static_cast<double>(n) * tau; }
};

/// Scaled regime coordinates: beta = sigma^2 tau n^2 / 2, rho = (r - q) tau n.
/// Constructible directly for pure-math use, or from a market/grid pair.
struct ScaledParams {
    double beta;
    double rho;

    ScaledParams(double beta_, double rho_) : beta(beta_), rho(rho_) {
        if (!(beta >= 0.0)) throw DomainError("ScaledParams: beta must be >= 0");
        if (!std::isfinite(rho)) throw DomainError("ScaledParams: rho must be finite");
    }
};

enum class Flavor { Call, Put };
enum class Style { FixedStrike, FloatingStrike };
enum class Regime { OTM, ATM, ITM };
enum class Branch { Hyperbolic, Trigonometric, SeriesBoundary };

/// Option contract: fixed strike pays (A_n - K)^+ / (K - A_n)^+, floating strike
/// pays (kappa S_T - A_n)^+ / (A_n - kappa S_T)^+.
struct OptionSpec {
    Style style;
    Flavor flavor;
    double strike = 0.0;  // fixed-strike only
    double kappa = 0.0;   // floating-strike only

    static OptionSpec fixed_strike(Flavor f, double strike) {
        if (!(strike > 0.0)) throw DomainError("OptionSpec: strike must be > 0");
        OptionSpec s;
        s.style = Style::FixedStrike;
        s.flavor = f;
        s.strike = strike;
        return s;
    }

    static OptionSpec floating_strike(Flavor f, double kappa) {
        if (!(kappa > 0.0)) throw DomainError("OptionSpec: kappa must be > 0");
        OptionSpec s;
        s.style = Style::FloatingStrike;
        s.flavor = f;
        s.kappa = kappa;
        return s;
    }

  private:
    OptionSpec() = default;
};

/// Result of a rate-function or MGF-limit evaluation.
/// `root` is the branch-equation solution (delta for the hyperbolic branch,
/// xi for the trigonometric one); `residual` is the relative equation residual
/// at that root.
struct RateValue {
    double value = 0.0;
    Branch branch = Branch::SeriesBoundary;
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct VariationalConfig {
    double root_tol = 1e-13;
    double series_threshold = 1e-4;
    int max_iter = 200;
};

/// Asymptotic price plus the diagnostics that produced it. `decay_rate` is
/// n*I(K), the leading exponential decay exponent, filled for OTM options only.
struct PriceResult {
    double price = 0.0;
    Regime regime = Regime::ATM;
    double implied_ln_vol = 0.0;
    double implied_n_vol = 0.0;
    std::optional<double> decay_rate;
    RateValue diagnostics;
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::OTM: return "OTM";
        case Regime::ATM: return "ATM";
        case Regime::ITM: return "ITM";
    }
    return "?";
}

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::Hyperbolic: return "hyperbolic";
        case Branch::Trigonometric: return "trigonometric";
        case Branch::SeriesBoundary: return "series";
    }
    return "?";
}

inline const char* to_string(Flavor f) { return f == Flavor::Call ? "call" : "put"; }
inline const char* to_string(Style s) { return s == Style::FixedStrike ? "fixed" : "floating"; }

}  // namespace asianld
