#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hurdle/rng.hpp"

namespace hurdle {

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0;
    for (double v : xs) s += v;
    return s / static_cast<double>(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_sd: need >= 2 samples");
    const double m = mean(xs);
    double ss = 0;
    for (double v : xs) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct Interval {
    double lo = 0, hi = 0;
};

/// Linear-interpolation quantile of a sorted vector.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double idx = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// Percentile bootstrap of the mean. Deterministic given the stream; the
/// interval is widened (rarely needed) to contain the sample mean.
inline Interval bootstrap_ci(const std::vector<double>& samples, double level,
                             std::size_t resamples, RandomStream& rng) {
    if (samples.size() < 2) throw std::invalid_argument("bootstrap_ci: need >= 2 samples");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_ci: need 0 < level < 1");
    if (resamples < 1) throw std::invalid_argument("bootstrap_ci: need >= 1 resamples");
    const std::size_t m = samples.size();
    std::vector<double> means(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i)
            s += samples[rng.uniform_index(m)];
        means[r] = s / static_cast<double>(m);
    }
    std::sort(means.begin(), means.end());
    const double alpha = 1.0 - level;
    Interval ci{quantile_sorted(means, alpha / 2), quantile_sorted(means, 1.0 - alpha / 2)};
    const double pt = mean(samples);
    ci.lo = std::min(ci.lo, pt);
    ci.hi = std::max(ci.hi, pt);
    return ci;
}

struct LinFit {
    double slope = 0, intercept = 0, r2 = 1;
};

/// Ordinary least squares y = intercept + slope*x. r2 = 1 on a perfect fit,
/// including the degenerate all-equal-y case.
inline LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("least_squares: need >= 2 paired points");
    const double mx = mean(xs), my = mean(ys);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0) throw std::invalid_argument("least_squares: x values are all equal");
    LinFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pred = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    fit.r2 = ss_tot > 1e-30 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

} // namespace hurdle
