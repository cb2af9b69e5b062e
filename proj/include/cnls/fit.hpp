// Growth-exponent fitting: least squares of log(value) against log(1+t).

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cnls/errors.hpp"

namespace cnls {

struct GrowthFit {
    double exponent = 0.0;  // α in value ≈ C (1+t)^α
    double constant = 0.0;  // C
    double t_min = 0.0;
    double t_max = 0.0;
    double residual = 0.0;  // rms of log-residuals
    std::size_t points = 0;
};

inline GrowthFit fit_growth(const std::vector<std::pair<double, double>>& series,
                            double t_min, double t_max) {
    std::vector<double> xs, ys;
    for (const auto& [t, v] : series) {
        if (t < t_min || t > t_max) continue;
        if (!(v > 0.0))
            throw InvalidArgument("fit_growth: nonpositive value in window");
        xs.push_back(std::log1p(t));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 8)
        throw InvalidArgument("fit_growth: need at least 8 points in window, have " +
                              std::to_string(xs.size()));

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    GrowthFit fit;
    fit.t_min = t_min;
    fit.t_max = t_max;
    fit.points = xs.size();
    if (det <= 1e-30 * n * sxx) {
        // All abscissae equal (degenerate window): report the mean level.
        fit.exponent = 0.0;
        fit.constant = std::exp(sy / n);
    } else {
        fit.exponent = (n * sxy - sx * sy) / det;
        fit.constant = std::exp((sy - fit.exponent * sx) / n);
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (std::log(fit.constant) + fit.exponent * xs[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace cnls
