// Command-line front end: price Asian options with the large-n asymptotics,
// evaluate rate functions and MGF limits, run Monte Carlo validations, and
// regenerate the benchmark tables as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asianld/mc.hpp"
#include "asianld/pricing.hpp"
#include "asianld/scaling.hpp"
#include "asianld/variational.hpp"
#include "reference_tables.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void emit_record(const std::string& format, const std::vector<std::pair<std::string, json>>& kv) {
    if (format == "json") {
        json j;
        for (const auto& [k, v] : kv) j[k] = v;
        std::cout << j.dump() << "\n";
        return;
    }
    // CSV: header then one row, stable field order
    for (size_t i = 0; i < kv.size(); ++i) std::cout << kv[i].first << (i + 1 < kv.size() ? "," : "\n");
    for (size_t i = 0; i < kv.size(); ++i) {
        const json& v = kv[i].second;
        if (v.is_number())
            std::cout << fmt(v.get<double>());
        else if (v.is_string())
            std::cout << v.get<std::string>();
        std::cout << (i + 1 < kv.size() ? "," : "\n");
    }
}

struct ScenarioFlags {
    double s0 = 1.0, r = 0.0, q = 0.0, sigma = 0.2, maturity = 1.0;
    std::optional<double> strike, kappa, tau;
    long n = 250;
    std::string type = "call", style = "fixed";
};

// Scenario config file: a JSON object mirroring the flag names; explicit
// flags override file values.
void apply_config(const std::string& path, ScenarioFlags& f, long& paths, std::uint64_t& seed) {
    std::ifstream in(path);
    if (!in) throw asianld::DomainError("config file not readable: " + path);
    json j;
    in >> j;
    if (j.contains("s0")) f.s0 = j["s0"].get<double>();
    if (j.contains("r")) f.r = j["r"].get<double>();
    if (j.contains("q")) f.q = j["q"].get<double>();
    if (j.contains("sigma")) f.sigma = j["sigma"].get<double>();
    if (j.contains("maturity")) f.maturity = j["maturity"].get<double>();
    if (j.contains("strike")) f.strike = j["strike"].get<double>();
    if (j.contains("kappa")) f.kappa = j["kappa"].get<double>();
    if (j.contains("tau")) f.tau = j["tau"].get<double>();
    if (j.contains("n")) f.n = j["n"].get<long>();
    if (j.contains("type")) f.type = j["type"].get<std::string>();
    if (j.contains("style")) f.style = j["style"].get<std::string>();
    if (j.contains("paths")) paths = j["paths"].get<long>();
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
}

struct ResolvedScenario {
    asianld::MarketParams market;
    asianld::AveragingGrid grid;
    asianld::OptionSpec spec;
};

ResolvedScenario resolve(const ScenarioFlags& f) {
    const double tau = f.tau ? *f.tau : f.maturity / static_cast<double>(f.n);
    asianld::MarketParams market(f.s0, f.r, f.q, f.sigma);
    asianld::AveragingGrid grid(f.n, tau);
    const asianld::Flavor flavor =
        (f.type == "put") ? asianld::Flavor::Put : asianld::Flavor::Call;
    if (f.style == "floating") {
        const double kappa = f.kappa.value_or(1.0);
        return {market, grid, asianld::OptionSpec::floating_strike(flavor, kappa)};
    }
    if (!f.strike) throw asianld::DomainError("fixed-strike pricing requires --strike");
    return {market, grid, asianld::OptionSpec::fixed_strike(flavor, *f.strike)};
}

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
    cmd->add_option("--s0", f.s0, "spot price");
    cmd->add_option("--r", f.r, "risk-free rate");
    cmd->add_option("--q", f.q, "dividend yield");
    cmd->add_option("--sigma", f.sigma, "volatility");
    cmd->add_option("--maturity", f.maturity, "maturity in years");
    cmd->add_option("--strike", [&f](const std::vector<std::string>& v) {
        f.strike = std::stod(v[0]);
        return true;
    }, "fixed strike")->type_name("FLOAT");
    cmd->add_option("--kappa", [&f](const std::vector<std::string>& v) {
        f.kappa = std::stod(v[0]);
        return true;
    }, "floating-strike weight")->type_name("FLOAT");
    cmd->add_option("--n", f.n, "number of fixings");
    cmd->add_option("--tau", [&f](const std::vector<std::string>& v) {
        f.tau = std::stod(v[0]);
        return true;
    }, "fixing step in years (overrides maturity/n)")->type_name("FLOAT");
    cmd->add_option("--type", f.type, "call or put")->check(CLI::IsMember({"call", "put"}));
    cmd->add_option("--style", f.style, "fixed or floating")
        ->check(CLI::IsMember({"fixed", "floating"}));
}

int cmd_price(const ScenarioFlags& f, const std::string& format) {
    const ResolvedScenario sc = resolve(f);
    const asianld::ScaledParams sp = asianld::scaled_params(sc.market, sc.grid);
    const asianld::PriceResult res = (sc.spec.style == asianld::Style::FixedStrike)
                                         ? asianld::price_fixed(sc.spec, sc.market, sc.grid)
                                         : asianld::price_floating(sc.spec, sc.market, sc.grid);
    emit_record(format,
                {{"style", asianld::to_string(sc.spec.style)},
                 {"type", asianld::to_string(sc.spec.flavor)},
                 {"s0", f.s0},
                 {"strike_or_kappa",
                  sc.spec.style == asianld::Style::FixedStrike ? sc.spec.strike : sc.spec.kappa},
                 {"r", f.r},
                 {"q", f.q},
                 {"sigma", f.sigma},
                 {"maturity", sc.grid.maturity()},
                 {"n", static_cast<double>(sc.grid.n)},
                 {"beta", sp.beta},
                 {"rho", sp.rho},
                 {"regime", asianld::to_string(res.regime)},
                 {"sigma_ln", res.implied_ln_vol},
                 {"sigma_n", res.implied_n_vol},
                 {"price", res.price},
                 {"decay_rate", res.decay_rate ? json(*res.decay_rate) : json()}});
    return 0;
}

int cmd_table(const std::string& name) {
    using namespace asianld;
    if (name == "fmw7") {
        std::cout << "scenario,r,maturity,s0,strike,sigma,computed,fpp3,mae3,mellin500,vecer,"
                     "pz_published,ln,linetsky\n";
        for (const auto& row : tables::kFmw7) {
            MarketParams m(row.s0, row.r, 0.0, row.sigma);
            AveragingGrid g(250, row.maturity / 250.0);
            const auto res = price_fixed(OptionSpec::fixed_strike(Flavor::Call, row.strike), m, g);
            std::printf("%d,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", row.scenario,
                        fmt(row.r).c_str(), fmt(row.maturity).c_str(), fmt(row.s0).c_str(),
                        fmt(row.strike).c_str(), fmt(row.sigma).c_str(), fmt(res.price).c_str(),
                        fmt(row.fpp3).c_str(), fmt(row.mae3).c_str(), fmt(row.mellin500).c_str(),
                        fmt(row.vecer).c_str(), fmt(row.pz).c_str(), fmt(row.ln).c_str(),
                        fmt(row.linetsky).c_str());
        }
        return 0;
    }
    if (name == "smallvol") {
        std::cout << "maturity,strike,computed,pz_published,fpp3,mae3,mellin500\n";
        for (const auto& row : tables::kSmallVol) {
            MarketParams m(100.0, 0.05, 0.0, 0.01);
            AveragingGrid g(250, row.maturity / 250.0);
            const auto res = price_fixed(OptionSpec::fixed_strike(Flavor::Call, row.strike), m, g);
            std::printf("%s,%s,%s,%s,%s,%s,%s\n", fmt(row.maturity).c_str(),
                        fmt(row.strike).c_str(), fmt(res.price).c_str(), fmt(row.pz).c_str(),
                        fmt(row.fpp3).c_str(), fmt(row.mae3).c_str(), fmt(row.mellin500).c_str());
        }
        return 0;
    }
    if (name == "discrete") {
        std::cout << "s0,computed,pz_published,vecer_n250,vecer_n500,vecer_n1000,vecer_inf,"
                     "tr_n250,tr_n500,tr_n1000,tr_inf,curran_n250,curran_n500,curran_n1000\n";
        for (const auto& row : tables::kDiscrete) {
            MarketParams m(row.s0, 0.1, 0.0, 0.4);
            AveragingGrid g(250, 1.0 / 250.0);
            const auto res = price_fixed(OptionSpec::fixed_strike(Flavor::Call, 100.0), m, g);
            std::printf("%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", fmt(row.s0).c_str(),
                        fmt(res.price).c_str(), fmt(row.pz).c_str(), fmt(row.vecer[0]).c_str(),
                        fmt(row.vecer[1]).c_str(), fmt(row.vecer[2]).c_str(),
                        fmt(row.vecer[3]).c_str(), fmt(row.tavella_randall[0]).c_str(),
                        fmt(row.tavella_randall[1]).c_str(), fmt(row.tavella_randall[2]).c_str(),
                        fmt(row.tavella_randall[3]).c_str(), fmt(row.curran[0]).c_str(),
                        fmt(row.curran[1]).c_str(), fmt(row.curran[2]).c_str());
        }
        return 0;
    }
    std::cerr << "unknown table: " << name << " (expected fmw7, smallvol, discrete)\n";
    return kExitUsage;
}

bool parse_sweep(const std::string& sweep, double& lo, double& hi, int& steps) {
    return std::sscanf(sweep.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) == 3 && steps >= 1;
}

int cmd_rate(double x_ratio, double rho, const std::string& sweep, const std::string& format) {
    if (!sweep.empty()) {
        double lo, hi;
        int steps;
        if (!parse_sweep(sweep, lo, hi, steps)) {
            std::cerr << "bad --sweep, expected lo:hi:steps\n";
            return kExitUsage;
        }
        std::cout << "x_ratio,j,branch,root,residual\n";
        for (int i = 0; i < steps; ++i) {
            const double x = lo + (hi - lo) * i / std::max(1, steps - 1);
            const auto rv = asianld::rate_j(x, rho);
            std::printf("%s,%s,%s,%s,%s\n", fmt(x).c_str(), fmt(rv.value).c_str(),
                        asianld::to_string(rv.branch), fmt(rv.root).c_str(),
                        fmt(rv.residual).c_str());
        }
        return 0;
    }
    const auto rv = asianld::rate_j(x_ratio, rho);
    emit_record(format, {{"x_ratio", x_ratio},
                         {"rho", rho},
                         {"j", rv.value},
                         {"branch", asianld::to_string(rv.branch)},
                         {"root", rv.root},
                         {"residual", rv.residual},
                         {"iterations", static_cast<double>(rv.iterations)}});
    return 0;
}

int cmd_mgf(double theta, double s0, double beta, double rho, const std::string& sweep,
            const std::string& format) {
    auto one = [&](double th) {
        const double lam = asianld::mgf_log_limit(th, s0, beta, rho);
        std::string branch = "none";
        if (th < 0.0)
            branch = asianld::to_string(
                asianld::lambda_mgf(-th * s0, std::sqrt(2.0 * beta), rho).branch);
        return std::pair<double, std::string>(lam, branch);
    };
    if (!sweep.empty()) {
        double lo, hi;
        int steps;
        if (!parse_sweep(sweep, lo, hi, steps)) {
            std::cerr << "bad --sweep, expected lo:hi:steps\n";
            return kExitUsage;
        }
        std::cout << "theta,lambda,branch\n";
        for (int i = 0; i < steps; ++i) {
            const double th = lo + (hi - lo) * i / std::max(1, steps - 1);
            const auto [lam, branch] = one(th);
            std::printf("%s,%s,%s\n", fmt(th).c_str(), fmt(lam).c_str(), branch.c_str());
        }
        return 0;
    }
    const auto [lam, branch] = one(theta);
    emit_record(format, {{"theta", theta},
                         {"s0", s0},
                         {"beta", beta},
                         {"rho", rho},
                         {"lambda", std::isinf(lam) ? json("inf") : json(lam)},
                         {"branch", branch}});
    return 0;
}

int cmd_mc(const ScenarioFlags& f, long paths, std::uint64_t seed, bool antithetic,
           const std::string& format) {
    const ResolvedScenario sc = resolve(f);
    asianld::McConfig cfg;
    cfg.paths = paths;
    cfg.seed = seed;
    cfg.antithetic = antithetic;
    const asianld::McEstimate est = asianld::mc_price(sc.spec, sc.market, sc.grid, cfg);
    const asianld::PriceResult asym = (sc.spec.style == asianld::Style::FixedStrike)
                                          ? asianld::price_fixed(sc.spec, sc.market, sc.grid)
                                          : asianld::price_floating(sc.spec, sc.market, sc.grid);
    const double z =
        est.std_error > 0.0 ? (est.mean - asym.price) / est.std_error
                            : (est.mean == asym.price ? 0.0 : INFINITY);
    emit_record(format, {{"mean", est.mean},
                         {"stderr", est.std_error},
                         {"paths", static_cast<double>(est.paths)},
                         {"asymptotic", asym.price},
                         {"z_score", z}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-average Asian option pricing via large-n asymptotics"};
    app.require_subcommand(1);
    std::string format = "csv";
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    ScenarioFlags flags;
    long paths = 100000;
    std::uint64_t seed = 42;
    bool antithetic = true;
    std::string config_path, sweep;
    double x_ratio = 1.0, rho = 0.0, theta = -1.0, beta = 0.5, s0 = 1.0;

    CLI::App* price = app.add_subcommand("price", "price one option via the asymptotic pipeline");
    price->fallthrough();
    add_scenario_flags(price, flags);
    price->add_option("--config", config_path, "JSON scenario file (flags override)");

    CLI::App* table = app.add_subcommand("table", "reproduce a benchmark table as CSV");
    table->fallthrough();
    std::string table_name;
    table->add_option("name", table_name, "fmw7, smallvol, or discrete")->required();

    CLI::App* rate = app.add_subcommand("rate", "evaluate the rate function J(x_ratio, rho)");
    rate->fallthrough();
    rate->add_option("--x-ratio", x_ratio, "x/S0");
    rate->add_option("--rho", rho, "drift parameter");
    rate->add_option("--sweep", sweep, "lo:hi:steps sweep of x_ratio");

    CLI::App* mgf = app.add_subcommand("mgf", "evaluate the limit MGF exponent");
    mgf->fallthrough();
    mgf->add_option("--theta", theta, "MGF argument");
    mgf->add_option("--s0", s0, "spot");
    mgf->add_option("--beta", beta, "scaled variance parameter");
    mgf->add_option("--rho", rho, "drift parameter");
    mgf->add_option("--sweep", sweep, "lo:hi:steps sweep of theta");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo estimate with asymptotic comparison");
    mc->fallthrough();
    add_scenario_flags(mc, flags);
    mc->add_option("--paths", paths, "number of paths");
    mc->add_option("--seed", seed, "RNG seed");
    mc->add_flag("--antithetic,!--no-antithetic", antithetic, "antithetic variates");
    mc->add_option("--config", config_path, "JSON scenario file (flags override)");

    // Config files seed the defaults, so parse them before argv.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config(argv[i + 1], flags, paths, seed);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
        }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (price->parsed()) return cmd_price(flags, format);
        if (table->parsed()) return cmd_table(table_name);
        if (rate->parsed()) return cmd_rate(x_ratio, rho, sweep, format);
        if (mgf->parsed()) return cmd_mgf(theta, s0, beta, rho, sweep, format);
        if (mc->parsed()) return cmd_mc(flags, paths, seed, antithetic, format);
    } catch (const asianld::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
