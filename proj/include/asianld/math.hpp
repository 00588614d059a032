#pragma once

#include <cmath>

#include "asianld/types.hpp"

namespace asianld {

inline double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

/// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16).
/// Accurate to about 1e-16 over the full open interval (0, 1).
double norm_ppf(double p);

}  // namespace asianld
