#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace plsec_test {

inline double exponential_cdf(double x, double mean) {
    return -std::expm1(-x / mean);
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against
/// Exponential(mean).
inline double ks_statistic_exponential(std::vector<double> sample, double mean) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = exponential_cdf(sample[i], mean);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    return d;
}

/// Asymptotic two-sided KS critical value at significance 0.01.
inline double ks_critical_001(std::size_t n) {
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

inline double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace plsec_test
