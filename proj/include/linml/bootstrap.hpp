#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "linml/asymptotics.hpp"
#include "linml/estimators.hpp"
#include "linml/parallel.hpp"
#include "linml/params.hpp"
#include "linml/rng.hpp"

// Nonparametric percentile bootstrap over raw observations. Each replicate
// draws its resample from an RngStream keyed by (seed, replicate index), so
// interval endpoints are identical for any worker count.

namespace linml {

struct BootstrapConfig {
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Per-parameter bootstrap summary. `degenerate` marks a parameter whose
/// refitted values had zero spread across all usable replicates (the interval
/// collapses to a point, which the percentile method reports rather than
/// hides).
struct BootstrapResult {
    IntervalEstimate alpha, delta, mu;
    bool alpha_degenerate = false;
    bool delta_degenerate = false;
    bool mu_degenerate = false;
    std::size_t failures = 0; // replicates whose refit threw; excluded
    std::size_t used = 0;     // replicates contributing to the quantiles
};

namespace detail {

// Type-7 (linear interpolation) quantile of sorted values.
inline double quantile_type7_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t m = sorted.size();
    if (m == 1) return sorted[0];
    const double h = p * static_cast<double>(m - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= m) return sorted[m - 1];
    const double w = h - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[lo + 1] - sorted[lo]);
}

} // namespace detail

/// Percentile bootstrap intervals for one of the fit operations. Resamples
/// the raw data n-with-replacement `replicates` times, refits each resample,
/// and returns per-parameter intervals at the (1 -+ level)/2 type-7 quantiles
/// around the full-data point estimate. Replicates whose refit throws are
/// excluded and counted; more than 20% failures raises
/// excessive_failure_error. A full-data fit failure propagates as-is.
inline BootstrapResult bootstrap_ci(const std::vector<double>& data,
                                    const std::function<FitResult(const std::vector<double>&)>& fitter,
                                    const BootstrapConfig& cfg) {
    if (data.empty()) throw std::invalid_argument("bootstrap_ci: empty data");
    if (cfg.replicates < 2) throw std::invalid_argument("bootstrap_ci: need at least 2 replicates");
    if (!(cfg.level > 0.0 && cfg.level < 1.0))
        throw std::invalid_argument("bootstrap_ci: level must lie in (0, 1)");

    const FitResult point = fitter(data);
    const std::size_t n = data.size();
    const std::size_t B = cfg.replicates;

    std::vector<double> alpha_hat(B), delta_hat(B), mu_hat(B);
    std::vector<char> ok(B, 0);
    detail::parallel_for(B, cfg.threads, [&](std::size_t b) {
        RngStream rng(cfg.seed, b);
        std::vector<double> resample(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j =
                std::min(static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n)), n - 1);
            resample[i] = data[j];
        }
        try {
            const FitResult f = fitter(resample);
            alpha_hat[b] = f.alpha_hat;
            delta_hat[b] = f.delta_hat;
            mu_hat[b] = f.mu_hat;
            ok[b] = 1;
        } catch (const std::exception&) {
            ok[b] = 0; // counted below; slot order keeps the count deterministic
        }
    });

    BootstrapResult out;
    for (std::size_t b = 0; b < B; ++b)
        if (!ok[b]) ++out.failures;
    out.used = B - out.failures;
    if (out.failures * 5 > B) {
        std::ostringstream msg;
        msg << "bootstrap_ci: " << out.failures << " of " << B
            << " replicate refits failed (more than 20%)";
        throw excessive_failure_error(msg.str());
    }
    if (out.used < 2)
        throw excessive_failure_error("bootstrap_ci: fewer than 2 usable replicates");

    const auto summarize = [&](const std::vector<double>& values, double point_est,
                               bool& degenerate) {
        std::vector<double> v;
        v.reserve(out.used);
        for (std::size_t b = 0; b < B; ++b)
            if (ok[b]) v.push_back(values[b]);
        std::sort(v.begin(), v.end());
        degenerate = v.front() == v.back();
        IntervalEstimate ie;
        ie.point = point_est;
        ie.lower = detail::quantile_type7_sorted(v, 0.5 * (1.0 - cfg.level));
        ie.upper = detail::quantile_type7_sorted(v, 0.5 * (1.0 + cfg.level));
        ie.level = cfg.level;
        ie.method = CiMethod::bootstrap;
        return ie;
    };
    out.alpha = summarize(alpha_hat, point.alpha_hat, out.alpha_degenerate);
    out.delta = summarize(delta_hat, point.delta_hat, out.delta_degenerate);
    out.mu = summarize(mu_hat, point.mu_hat, out.mu_degenerate);
    return out;
}

} // namespace linml
