#include "asianld/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "asianld/math.hpp"
#include "asianld/rng.hpp"
#include "asianld/scaling.hpp"

namespace asianld {

namespace {

struct PathStats {
    double payoff = 0.0;
    double average = 0.0;
    double terminal = 0.0;
};

// One GBM path sampled exactly at the fixing dates; z-draws come from the
// path's own Philox stream, optionally sign-flipped for the antithetic leg.
PathStats simulate_path(std::uint64_t seed, std::uint64_t path, const OptionSpec& spec,
                        const MarketParams& market, const AveragingGrid& grid, bool flip) {
    const double tau = grid.tau;
    const double drift = (market.rate - market.dividend - 0.5 * market.sigma * market.sigma) * tau;
    const double vol = market.sigma * std::sqrt(tau);

    PhiloxStream rng(seed, path);
    double log_s = 0.0;
    double sum = 0.0;
    for (long i = 0; i < grid.n; ++i) {
        double z = norm_ppf(rng.next_uniform());
        if (flip) z = -z;
        log_s += drift + vol * z;
        sum += std::exp(log_s);
    }
    PathStats st;
    st.average = market.spot * sum / static_cast<double>(grid.n);
    st.terminal = market.spot * std::exp(log_s);
    if (spec.style == Style::FixedStrike) {
        const double d = st.average - spec.strike;
        st.payoff = (spec.flavor == Flavor::Call) ? std::fmax(d, 0.0) : std::fmax(-d, 0.0);
    } else {
        const double d = spec.kappa * st.terminal - st.average;
        st.payoff = (spec.flavor == Flavor::Call) ? std::fmax(d, 0.0) : std::fmax(-d, 0.0);
    }
    return st;
}

struct BlockSums {
    double payoff = 0.0, payoff2 = 0.0;
    double avg = 0.0, avg2 = 0.0;
    double fluct = 0.0, fluct2 = 0.0;
    double term = 0.0, term2 = 0.0;
};

// Runs `units` sample units split into fixed-size blocks. Blocks are computed
// in parallel but combined in index order, so the result does not depend on
// the thread count.
template <typename UnitFn>
std::vector<BlockSums> run_blocks(long units, long block_size, UnitFn unit) {
    const long nblocks = (units + block_size - 1) / block_size;
    std::vector<BlockSums> blocks(static_cast<size_t>(nblocks));

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned nthreads = std::min<unsigned>(hw, 16);

    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (long b = static_cast<long>(t); b < nblocks; b += nthreads) {
                BlockSums acc;
                const long lo = b * block_size;
                const long hi = std::min(units, lo + block_size);
                for (long u = lo; u < hi; ++u) unit(u, acc);
                blocks[static_cast<size_t>(b)] = acc;
            }
        });
    }
    for (auto& th : pool) th.join();
    return blocks;
}

struct MeanVar {
    double mean, std_error;
};

// Accumulators hold sums of (x - shift) and (x - shift)^2; centering on a
// representative sample keeps degenerate runs (all payoffs equal) at exactly
// zero variance.
MeanVar reduce(const std::vector<BlockSums>& blocks, long units, double shift,
               double BlockSums::* sum, double BlockSums::* sum2) {
    long double s = 0.0L, s2 = 0.0L;
    for (const auto& b : blocks) {
        s += b.*sum;
        s2 += b.*sum2;
    }
    const double mean_c = static_cast<double>(s / units);
    double var = static_cast<double>(s2 / units) - mean_c * mean_c;
    if (units > 1) var *= static_cast<double>(units) / static_cast<double>(units - 1);
    if (var < 0.0) var = 0.0;
    return {shift + mean_c, std::sqrt(var / static_cast<double>(units))};
}

}  // namespace

McEstimate mc_price(const OptionSpec& spec, const MarketParams& market, const AveragingGrid& grid,
                    const McConfig& cfg) {
    if (cfg.paths < 1) throw DomainError("mc_price: paths must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    const long units = cfg.antithetic ? (cfg.paths + 1) / 2 : cfg.paths;
    const double discount = std::exp(-market.rate * grid.maturity());

    auto unit_payoff = [&](long u) {
        const double p1 =
            simulate_path(cfg.seed, static_cast<std::uint64_t>(u), spec, market, grid, false)
                .payoff;
        if (!cfg.antithetic) return p1;
        const double p2 =
            simulate_path(cfg.seed, static_cast<std::uint64_t>(u), spec, market, grid, true).payoff;
        return 0.5 * (p1 + p2);
    };

    const double shift = unit_payoff(0);
    auto unit = [&](long u, BlockSums& acc) {
        const double pay = unit_payoff(u) - shift;
        acc.payoff += pay;
        acc.payoff2 += pay * pay;
    };

    const auto blocks = run_blocks(units, cfg.batch, unit);
    const MeanVar mv = reduce(blocks, units, shift, &BlockSums::payoff, &BlockSums::payoff2);

    McEstimate est;
    est.mean = discount * mv.mean;
    est.std_error = discount * mv.std_error;
    est.paths = cfg.antithetic ? 2 * units : units;
    est.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

McMoments mc_average_moments(const MarketParams& market, const AveragingGrid& grid,
                             const McConfig& cfg) {
    if (cfg.paths < 1) throw DomainError("mc_average_moments: paths must be >= 1");
    const ScaledParams sp = scaled_params(market, grid);
    const double a_inf = a_infinity(market.spot, sp.rho);
    const double sqrt_n = std::sqrt(static_cast<double>(grid.n));
    const OptionSpec dummy = OptionSpec::fixed_strike(Flavor::Call, market.spot);

    const long units = cfg.antithetic ? (cfg.paths + 1) / 2 : cfg.paths;
    struct UnitValues {
        double avg, term, fluct;
    };
    auto unit_values = [&](long u) {
        const PathStats p1 =
            simulate_path(cfg.seed, static_cast<std::uint64_t>(u), dummy, market, grid, false);
        const double f1 = sqrt_n * (p1.average - a_inf) / market.spot;
        if (!cfg.antithetic) return UnitValues{p1.average, p1.terminal, f1 * f1};
        const PathStats p2 =
            simulate_path(cfg.seed, static_cast<std::uint64_t>(u), dummy, market, grid, true);
        const double f2 = sqrt_n * (p2.average - a_inf) / market.spot;
        // Second moments are averaged per antithetic pair.
        return UnitValues{0.5 * (p1.average + p2.average), 0.5 * (p1.terminal + p2.terminal),
                          0.5 * (f1 * f1 + f2 * f2)};
    };

    const UnitValues shift = unit_values(0);
    auto unit = [&](long u, BlockSums& acc) {
        const UnitValues v = unit_values(u);
        const double avg = v.avg - shift.avg;
        const double fluct = v.fluct - shift.fluct;
        const double term = v.term - shift.term;
        acc.avg += avg;
        acc.avg2 += avg * avg;
        acc.fluct += fluct;
        acc.fluct2 += fluct * fluct;
        acc.term += term;
        acc.term2 += term * term;
    };

    const auto blocks = run_blocks(units, cfg.batch, unit);
    McMoments m;
    const MeanVar a = reduce(blocks, units, shift.avg, &BlockSums::avg, &BlockSums::avg2);
    const MeanVar f = reduce(blocks, units, shift.fluct, &BlockSums::fluct, &BlockSums::fluct2);
    const MeanVar t = reduce(blocks, units, shift.term, &BlockSums::term, &BlockSums::term2);
    m.mean_a = a.mean;
    m.a_se = a.std_error;
    m.scaled_var = f.mean;
    m.scaled_var_se = f.std_error;
    m.terminal_mean = t.mean;
    m.terminal_se = t.std_error;
    m.paths = cfg.antithetic ? 2 * units : units;
    return m;
}

// ---------------------------------------------------------------------------
// Discretized variational optimizers
// ---------------------------------------------------------------------------

namespace {

// Exact integrals of exp over a linear segment and their derivatives:
//   phi0(w) = (e^w - 1)/w, phi1(w) = (e^w (w - 1) + 1)/w^2,
//   phi2(w) = (e^w (w^2 - 2w + 2) - 2)/w^3.
// Series kick in where the direct forms cancel.
double phi0(double w) {
    if (w == 0.0) return 1.0;
    return std::expm1(w) / w;
}

double phi1(double w) {
    if (std::fabs(w) < 0.05)
        return 0.5 +
               w * (1.0 / 3.0 +
                    w * (0.125 + w * (1.0 / 30.0 + w * (1.0 / 144.0 + w * (1.0 / 840.0)))));
    return (std::exp(w) * (w - 1.0) + 1.0) / (w * w);
}

double phi2(double w) {
    if (std::fabs(w) < 0.05)
        return 1.0 / 3.0 +
               w * (0.25 + w * (0.1 + w * (1.0 / 36.0 + w * (1.0 / 168.0 + w * (1.0 / 960.0)))));
    return (std::exp(w) * (w * w - 2.0 * w + 2.0) - 2.0) / (w * w * w);
}

// Solve tridiagonal system (diag, off) x = r in place; returns false on a
// degenerate pivot.
bool thomas_solve(std::vector<double>& diag, std::vector<double>& off, std::vector<double>& r) {
    const size_t m = diag.size();
    for (size_t i = 1; i < m; ++i) {
        if (diag[i - 1] == 0.0) return false;
        const double w = off[i - 1] / diag[i - 1];
        diag[i] -= w * off[i - 1];
        r[i] -= w * r[i - 1];
    }
    if (diag[m - 1] == 0.0) return false;
    r[m - 1] /= diag[m - 1];
    for (size_t i = m - 1; i-- > 0;) r[i] = (r[i] - off[i] * r[i + 1]) / diag[i];
    return true;
}

// Piecewise-linear nodal values with f_0 = 0: integral of e^f, its gradient
// and tridiagonal Hessian with respect to the free nodes f_1..f_m.
struct ExpIntegral {
    double value = 0.0;
    std::vector<double> grad;       // size m
    std::vector<double> hess_diag;  // size m
    std::vector<double> hess_off;   // size m-1; couples (f_j, f_{j+1})
};

ExpIntegral exp_integral(const std::vector<double>& f, int m) {
    ExpIntegral out;
    out.grad.assign(m, 0.0);
    out.hess_diag.assign(m, 0.0);
    out.hess_off.assign(m - 1, 0.0);
    const double h = 1.0 / m;
    double prev = 0.0;  // f_0
    for (int k = 0; k < m; ++k) {
        const double cur = f[k];
        const double w = cur - prev;
        const double e = std::exp(prev);
        const double p0 = phi0(w), p1 = phi1(w), p2 = phi2(w);
        out.value += e * p0 * h;
        // d/d prev, d/d cur of e^{prev} phi0(cur - prev)
        const double g_prev = e * (p0 - p1) * h;
        const double g_cur = e * p1 * h;
        const double h_pp = e * (p0 - 2.0 * p1 + p2) * h;
        const double h_cc = e * p2 * h;
        const double h_pc = e * (p1 - p2) * h;
        if (k > 0) {
            out.grad[k - 1] += g_prev;
            out.hess_diag[k - 1] += h_pp;
            out.hess_off[k - 1] += h_pc;
        }
        out.grad[k] += g_cur;
        out.hess_diag[k] += h_cc;
        prev = cur;
    }
    return out;
}

double action_value(const std::vector<double>& f, int m, double rho) {
    double s = 0.0;
    double prev = 0.0;
    for (int k = 0; k < m; ++k) {
        const double d = f[k] - prev - rho / m;
        s += d * d;
        prev = f[k];
    }
    return 0.5 * m * s;
}

// Gradient of the action wrt free nodes; Hessian is the fixed tridiagonal
// m * T with T = tridiag(-1, 2, -1) except T[m-1][m-1] = 1.
void action_grad(const std::vector<double>& f, int m, double rho, std::vector<double>& grad) {
    grad.assign(m, 0.0);
    double prev = 0.0;
    for (int k = 0; k < m; ++k) {
        const double r = m * (f[k] - prev - rho / m);
        grad[k] += r;
        if (k > 0) grad[k - 1] -= r;
        prev = f[k];
    }
}

}  // namespace

double brute_force_lambda(double theta, double spot, double beta, double rho, int grid_points) {
    if (theta > 0.0) throw DomainError("brute_force_lambda: theta must be <= 0");
    if (!(spot > 0.0)) throw DomainError("brute_force_lambda: spot must be > 0");
    if (!(beta > 0.0)) throw DomainError("brute_force_lambda: beta must be > 0");
    if (grid_points < 50) throw DomainError("brute_force_lambda: grid_points must be >= 50");
    if (theta == 0.0) return 0.0;

    const int m = grid_points;
    const double b = std::sqrt(2.0 * beta);
    const double a = -theta * spot;  // > 0

    // Work in f = b g; the functional becomes
    //   F(f) = -(a/1) Int e^f - (1/(2 b^2)) Int (f' - rho)^2  ... times 1,
    // evaluated as F = -a*I(f) - action(f)/b^2 with the action in f-units.
    std::vector<double> f(m);
    for (int k = 0; k < m; ++k) f[k] = rho * (k + 1) / m;  // drift line

    auto objective = [&](const std::vector<double>& ff) {
        return -a * exp_integral(ff, m).value - action_value(ff, m, rho) / (b * b);
    };

    std::vector<double> grad(m), diag(m), off(m - 1), step(m), agrad(m);
    double f_val = objective(f);
    for (int it = 0; it < 200; ++it) {
        const ExpIntegral ei = exp_integral(f, m);
        action_grad(f, m, rho, agrad);
        double gmax = 0.0;
        for (int k = 0; k < m; ++k) {
            grad[k] = -a * ei.grad[k] - agrad[k] / (b * b);
            gmax = std::fmax(gmax, std::fabs(grad[k]));
        }
        if (gmax < 1e-12 * (1.0 + a) * m) break;
        if (it == 199) throw ConvergenceError("brute_force_lambda: Newton did not converge");

        // Newton on the concave objective: solve (-H) step = grad
        for (int k = 0; k < m; ++k)
            diag[k] = a * ei.hess_diag[k] + ((k == m - 1) ? 1.0 : 2.0) * m / (b * b);
        for (int k = 0; k + 1 < m; ++k) off[k] = a * ei.hess_off[k] - m / (b * b);
        std::vector<double> rhs = grad;
        if (!thomas_solve(diag, off, rhs))
            throw ConvergenceError("brute_force_lambda: singular Newton system");
        step = rhs;

        double t = 1.0;
        while (t > 1e-12) {
            std::vector<double> trial = f;
            for (int k = 0; k < m; ++k) trial[k] += t * step[k];
            const double v = objective(trial);
            if (v >= f_val - 1e-15 * std::fabs(f_val)) {
                f = std::move(trial);
                f_val = v;
                break;
            }
            t *= 0.5;
        }
        if (t <= 1e-12) break;  // no further progress at machine precision
    }
    return f_val;
}

double brute_force_rate(double x_ratio, double rho, int grid_points, double penalty_weight,
                        std::optional<double> multiplier_hint) {
    if (!(x_ratio > 0.0)) throw DomainError("brute_force_rate: x_ratio must be > 0");
    if (grid_points < 50) throw DomainError("brute_force_rate: grid_points must be >= 50");
    if (!(penalty_weight > 0.0)) throw DomainError("brute_force_rate: penalty_weight must be > 0");

    const int m = grid_points;
    std::vector<double> f(m);
    for (int k = 0; k < m; ++k) f[k] = rho * (k + 1) / m;

    double lam = multiplier_hint.value_or(0.0);
    double mu = penalty_weight;

    auto constraint = [&](const std::vector<double>& ff) {
        return exp_integral(ff, m).value - x_ratio;
    };
    auto merit = [&](const std::vector<double>& ff) {
        const double cv = constraint(ff);
        return action_value(ff, m, rho) + lam * cv + 0.5 * mu * cv * cv;
    };

    std::vector<double> grad(m), diag(m), off(m - 1), agrad(m);
    for (int outer = 0; outer < 60; ++outer) {
        // Inner minimization of the augmented Lagrangian by Newton with a
        // Sherman-Morrison update for the rank-one penalty term.
        for (int it = 0; it < 120; ++it) {
            const ExpIntegral ei = exp_integral(f, m);
            const double cv = ei.value - x_ratio;
            const double s = lam + mu * cv;
            action_grad(f, m, rho, agrad);
            double gmax = 0.0;
            for (int k = 0; k < m; ++k) {
                grad[k] = agrad[k] + s * ei.grad[k];
                gmax = std::fmax(gmax, std::fabs(grad[k]));
            }
            if (gmax < 1e-10 * m * (1.0 + std::fabs(s))) break;

            double ridge = 0.0;
            for (int attempt = 0; attempt < 8; ++attempt) {
                for (int k = 0; k < m; ++k)
                    diag[k] =
                        ((k == m - 1) ? 1.0 : 2.0) * m + s * ei.hess_diag[k] + ridge;
                for (int k = 0; k + 1 < m; ++k) off[k] = -static_cast<double>(m) + s * ei.hess_off[k];
                // (T + mu v v^T) step = -grad via Sherman-Morrison
                std::vector<double> y1(m), y2(m);
                std::vector<double> d1 = diag, o1 = off, r1 = grad;
                for (int k = 0; k < m; ++k) r1[k] = -grad[k];
                if (!thomas_solve(d1, o1, r1)) {
                    ridge = (ridge == 0.0) ? m * 1e-8 : ridge * 100.0;
                    continue;
                }
                y1 = r1;
                std::vector<double> d2 = diag, o2 = off, r2 = ei.grad;
                if (!thomas_solve(d2, o2, r2)) {
                    ridge = (ridge == 0.0) ? m * 1e-8 : ridge * 100.0;
                    continue;
                }
                y2 = r2;
                double vy1 = 0.0, vy2 = 0.0;
                for (int k = 0; k < m; ++k) {
                    vy1 += ei.grad[k] * y1[k];
                    vy2 += ei.grad[k] * y2[k];
                }
                const double denom = 1.0 + mu * vy2;
                if (denom == 0.0) {
                    ridge = (ridge == 0.0) ? m * 1e-8 : ridge * 100.0;
                    continue;
                }
                const double scale = mu * vy1 / denom;
                double m0 = merit(f);
                double t = 1.0;
                bool moved = false;
                while (t > 1e-12) {
                    std::vector<double> trial = f;
                    for (int k = 0; k < m; ++k) trial[k] += t * (y1[k] - scale * y2[k]);
                    if (merit(trial) <= m0 + 1e-15 * (1.0 + std::fabs(m0))) {
                        f = std::move(trial);
                        moved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if (moved) break;
                ridge = (ridge == 0.0) ? m * 1e-8 : ridge * 100.0;
            }
        }
        const double cv = constraint(f);
        lam += mu * cv;
        if (std::fabs(cv) < 1e-11 * std::fmax(1.0, x_ratio)) return action_value(f, m, rho);
        mu *= 5.0;
    }
    throw ConvergenceError("brute_force_rate: augmented Lagrangian did not converge");
}

}  // namespace asianld
