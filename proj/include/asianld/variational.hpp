#pragma once

#include "asianld/types.hpp"

namespace asianld {

struct RootSolve {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Solve the hyperbolic branch equation
///   sinh(delta)/delta + (2 rho/delta^2) sinh^2(delta/2) = x_ratio
/// for delta >= 0. Defined for x_ratio >= 1 + rho/2; the equation is even in
/// delta and the nonnegative root is returned.
RootSolve solve_delta_fixed(double x_ratio, double rho, const VariationalConfig& cfg = {});

/// Solve the trigonometric branch equation
///   sin(2 xi)/(2 xi) (1 + (rho/2) tan(xi)/xi) = x_ratio
/// on (0, xi_max), where xi_max is the smallest positive root of
/// 2 xi cos(xi) + rho sin(xi) = 0. Defined for 0 < x_ratio <= 1 + rho/2.
RootSolve solve_xi_fixed(double x_ratio, double rho, const VariationalConfig& cfg = {});

/// Upper end of the trigonometric bracket (pi/2 exactly at rho = 0).
double xi_upper_bound(double rho);

/// Rate function J(x_ratio, rho) of the scaled average, selecting the
/// hyperbolic or trigonometric branch by x_ratio vs 1 + rho/2. Values within
/// the series window of the branch seam are evaluated by the Taylor expansion
/// of the unified z-form. Throws DomainError for x_ratio <= 0.
RateValue rate_j(double x_ratio, double rho, const VariationalConfig& cfg = {});

/// Large-deviations rate I(x) = J(x/S0, rho)/(2 beta); +infinity for x <= 0.
double rate_i(double x, double spot, double beta, double rho, const VariationalConfig& cfg = {});

/// Limit MGF exponent lambda(a, b; rho) for a, b > 0. The branch is selected
/// by the complementarity condition a b^2 vs 2 rho^2/(2 + rho)^2; equality
/// evaluates the common root->0 limit.
RateValue lambda_mgf(double a, double b, double rho, const VariationalConfig& cfg = {});

/// lim (1/n) log E[exp(theta n A_n)]: +infinity for theta > 0, 0 at theta = 0,
/// lambda(-theta S0, sqrt(2 beta); rho) for theta < 0.
double mgf_log_limit(double theta, double spot, double beta, double rho,
                     const VariationalConfig& cfg = {});

/// Floating-strike decay rate H(0; rho) = I(kappa S0; -rho) = J(kappa, -rho)/(2 beta).
double floating_rate_h0(double kappa, double beta, double rho, const VariationalConfig& cfg = {});

namespace detail {

// Raw branch evaluators, exposed for property tests (evenness, monotonicity,
// residuals). T1/T2 are the constraint integrals, J1/J2 the rate values at a
// solved root.
double t1_integral(double delta, double rho);
double t2_integral(double xi, double rho);
double j1_value(double delta, double rho);
double j2_value(double xi, double rho);

// Taylor evaluation of the unified z-form in u = z^2 (u < 0 on the hyperbolic
// side where z = i delta, u = (2 xi)^2 on the trigonometric side).
double j_series(double u, double rho);

// J at the branch seam x_ratio = 1 + rho/2 (the z = 0 limit shared by both
// branches): -rho^3/(4(1 + rho/2)) - 2 rho log(1 + rho/2) + rho^2.
double j_seam(double rho);

}  // namespace detail

}  // namespace asianld
