#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sentiscope/error.hpp"

namespace sentiscope {

/// Sample Pearson correlation of two equal-length series.
///
/// Two-pass (centered) accumulation; the result is clamped to [-1, 1].
/// Throws InputError on length mismatch or fewer than two points and
/// UndefinedCorrelation when either series is constant.
[[nodiscard]] inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InputError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
    }
    const std::size_t n = x.size();
    if (n < 2) throw InputError("pearson: need at least 2 points, got " + std::to_string(n));

    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
    };
    if (constant(x) || constant(y)) throw UndefinedCorrelation("pearson: zero-variance series");

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw UndefinedCorrelation("pearson: zero-variance series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

[[nodiscard]] inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace sentiscope
