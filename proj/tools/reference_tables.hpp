#pragma once

// Published benchmark values shipped for display and comparison columns only;
// they never feed a computation. Source tags name the method column they were
// taken from.

namespace asianld::tables {

struct Fmw7Row {
    int scenario;
    double r, maturity, s0, strike, sigma;
    double fpp3, mae3, mellin500, vecer, pz, ln, linetsky;
};

// Benchmark scenarios (q = 0) with the published method columns:
// FPP3 (3rd-order expansion), MAE3 (matched asymptotics), Mellin500,
// Vecer (PDE), PZ (asymptotic implied-vol result), LN (log-normal approx),
// Linetsky (spectral expansion).
inline constexpr Fmw7Row kFmw7[] = {
    {1, 0.02, 1, 2, 2, 0.1, 0.055986, 0.055986, 0.056036, 0.055986, 0.055998, 0.056054, 0.055986},
    {2, 0.18, 1, 2, 2, 0.3, 0.218387, 0.218369, 0.218360, 0.218388, 0.218480, 0.219829, 0.218387},
    {3, 0.0125, 2, 2, 2, 0.25, 0.172267, 0.172263, 0.172369, 0.172269, 0.172460, 0.173490,
     0.172269},
    {4, 0.05, 1, 1.9, 2, 0.5, 0.193164, 0.193188, 0.192972, 0.193174, 0.193692, 0.195379,
     0.193174},
    {5, 0.05, 1, 2, 2, 0.5, 0.246406, 0.246382, 0.246519, 0.246416, 0.246944, 0.249791, 0.246416},
    {6, 0.05, 1, 2.1, 2, 0.5, 0.306210, 0.306139, 0.306497, 0.306220, 0.306744, 0.310646,
     0.306220},
    {7, 0.05, 2, 2, 2, 0.5, 0.350040, 0.349909, 0.348926, 0.350095, 0.351517, 0.359204, 0.350095},
};

struct SmallVolRow {
    double maturity, strike;
    double pz, fpp3, mae3, mellin500;
};

// Small-volatility scenarios: sigma = 0.01, S0 = 100, r = 0.05, q = 0.
inline constexpr SmallVolRow kSmallVol[] = {
    {0.25, 99, 1.60739, 1.60739, 1.60739, 1.51718},
    {0.25, 100, 0.621359, 0.621359, 0.621359, 0.696855},
    {0.25, 101, 0.0137615, 0.0137618, 0.0137615, 0.0160361},
    {1.00, 97, 5.2719, 5.27190, 5.27190, 5.27474},
    {1.00, 100, 2.41821, 2.41821, 2.41821, 2.43303},
    {1.00, 103, 0.0724339, 0.0726910, 0.0724337, 0.0850816},
    {5.00, 80, 26.1756, 26.1756, 26.1756, 26.1756},
    {5.00, 100, 10.5996, 10.5996, 10.5996, 10.5993},
    {5.00, 120, 5.8331e-6, 2.06699e-5, 5.73317e-6, 1.42235e-3},
};

struct DiscreteRow {
    double s0;
    double pz;
    double vecer[4];            // n = 250, 500, 1000, infinity
    double tavella_randall[4];  // same fixings
    double curran[3];           // n = 250, 500, 1000
};

// Discretely sampled scenarios: r = 0.1, q = 0, sigma = 0.4, T = 1, K = 100.
inline constexpr DiscreteRow kDiscrete[] = {
    {95, 8.3789, {8.4001, 8.3826, 8.3741, 8.3661}, {8.3972, 8.3804, 8.3719, 8.3640},
     {8.3972, 8.3801, 8.3715}},
    {100, 11.1362, {11.1600, 11.1416, 11.1322, 11.1233}, {11.1573, 11.1392, 11.1300, 11.1215},
     {11.1572, 11.1388, 11.1296}},
    {105, 14.2818, {14.3073, 14.2881, 14.2786, 14.2696}, {14.3054, 14.2866, 14.2771, 14.2681},
     {14.3048, 14.2857, 14.2762}},
};

}  // namespace asianld::tables
