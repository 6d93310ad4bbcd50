#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linml/constants.hpp"
#include "linml/moments.hpp"
#include "linml/params.hpp"
#include "linml/special.hpp"

// Method-of-log-moments estimators. The two-parameter fits (delta fixed at 1)
// invert the closed-form mean/variance expressions; the three-parameter fits
// minimize the squared distance between the (mu-free) theoretical variance and
// third central moment and their sample counterparts over (alpha, delta), then
// recover mu by inverting the mean.

namespace linml {

/// Outcome of a parameter fit.
struct FitResult {
    Family family = Family::gml;
    int nparams = 2;          // 2 (delta fixed at 1) or 3
    double alpha_hat = 0.0;
    double delta_hat = 1.0;
    double mu_hat = 0.0;
    double objective = 0.0;   // final minimized value; 0 for closed-form fits
    bool converged = false;
    bool boundary = false;    // argmin pinned to the optimization box edge
    std::size_t n = 0;        // observations actually used
    std::size_t dropped = 0;  // observations removed before the log transform
};

/// Empirical log-moments: applies x -> ln(x) (or ln|x| with zeros excluded
/// when take_abs) and returns the sample mean and the central sample moments
/// of orders 2-4 with divisor n.
inline LogMomentSet sample_log_moments(const std::vector<double>& data, bool take_abs) {
    std::vector<double> logs;
    logs.reserve(data.size());
    for (double v : data) {
        if (take_abs) {
            if (v == 0.0) continue;
            v = std::fabs(v);
        } else if (!(v > 0.0)) {
            throw std::domain_error(
                "sample_log_moments: non-positive value with take_abs = false");
        }
        const double lv = std::log(v);
        if (!std::isfinite(lv))
            throw std::domain_error("sample_log_moments: non-finite value after log transform");
        logs.push_back(lv);
    }
    if (logs.empty())
        throw std::invalid_argument("sample_log_moments: no usable values after filtering");

    const std::size_t n = logs.size();
    long double sum = 0.0L;
    for (double lv : logs) sum += lv;
    const long double mean = sum / static_cast<long double>(n);
    long double s2 = 0.0L, s3 = 0.0L, s4 = 0.0L;
    for (double lv : logs) {
        const long double d = lv - mean;
        const long double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    LogMomentSet m;
    m.mean = static_cast<double>(mean);
    m.variance = static_cast<double>(s2 / static_cast<long double>(n));
    m.mu3 = static_cast<double>(s3 / static_cast<long double>(n));
    m.mu4 = static_cast<double>(s4 / static_cast<long double>(n));
    return m;
}

/// Rectangular optimization domain.
struct Box {
    double x_lo, x_hi, y_lo, y_hi;
};

/// Outcome of a 2-d minimization.
struct MinimizeResult {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    bool converged = false;   // simplex diameter criterion met within budget
    bool on_boundary = false; // argmin within 1e-6 of the box edge (relative)
    int evaluations = 0;
};

/// Derivative-free 2-d minimization over a box: Nelder-Mead simplex
/// (reflection / expansion / contraction / shrink) with candidates projected
/// into the box. Deterministic for fixed inputs: the initial simplex steps
/// 5% of the box span from the start point (flipped inward at the edges).
/// Terminates when the simplex diameter falls below `diameter_tol` or after
/// `max_evals` objective evaluations (converged = false in the latter case).
template <class F>
MinimizeResult minimize_2d(F&& objective, std::pair<double, double> start, const Box& box,
                           double diameter_tol = 1e-8, int max_evals = 10000) {
    if (!(box.x_lo < box.x_hi && box.y_lo < box.y_hi))
        throw std::invalid_argument("minimize_2d: degenerate box");
    using Point = std::array<double, 2>;
    const auto clamp = [&](Point p) {
        p[0] = std::min(std::max(p[0], box.x_lo), box.x_hi);
        p[1] = std::min(std::max(p[1], box.y_lo), box.y_hi);
        return p;
    };
    int evals = 0;
    const auto eval = [&](const Point& p) {
        ++evals;
        const double v = objective(p[0], p[1]);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    Point v0 = clamp({start.first, start.second});
    const double step_x = 0.05 * (box.x_hi - box.x_lo);
    const double step_y = 0.05 * (box.y_hi - box.y_lo);
    Point v1 = v0, v2 = v0;
    v1[0] = (v0[0] + step_x <= box.x_hi) ? v0[0] + step_x : v0[0] - step_x;
    v2[1] = (v0[1] + step_y <= box.y_hi) ? v0[1] + step_y : v0[1] - step_y;

    Point pts[3] = {v0, v1, v2};
    double fv[3] = {eval(pts[0]), eval(pts[1]), eval(pts[2])};

    const auto order = [&]() {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2 - i; ++j)
                if (fv[j + 1] < fv[j]) {
                    std::swap(fv[j], fv[j + 1]);
                    std::swap(pts[j], pts[j + 1]);
                }
    };
    const auto diameter = [&]() {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                d = std::max(d, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
        return d;
    };

    bool converged = false;
    while (evals < max_evals) {
        order();
        if (diameter() < diameter_tol) {
            converged = true;
            break;
        }
        const Point c = {0.5 * (pts[0][0] + pts[1][0]), 0.5 * (pts[0][1] + pts[1][1])};
        const Point xr = clamp({c[0] + (c[0] - pts[2][0]), c[1] + (c[1] - pts[2][1])});
        const double fr = eval(xr);
        if (fr < fv[0]) {
            const Point xe = clamp({c[0] + 2.0 * (c[0] - pts[2][0]), c[1] + 2.0 * (c[1] - pts[2][1])});
            const double fe = eval(xe);
            if (fe < fr) {
                pts[2] = xe;
                fv[2] = fe;
            } else {
                pts[2] = xr;
                fv[2] = fr;
            }
        } else if (fr < fv[1]) {
            pts[2] = xr;
            fv[2] = fr;
        } else {
            bool shrink = false;
            if (fr < fv[2]) { // outside contraction
                const Point xc = clamp({c[0] + 0.5 * (xr[0] - c[0]), c[1] + 0.5 * (xr[1] - c[1])});
                const double fc = eval(xc);
                if (fc <= fr) {
                    pts[2] = xc;
                    fv[2] = fc;
                } else {
                    shrink = true;
                }
            } else { // inside contraction
                const Point xc = {c[0] + 0.5 * (pts[2][0] - c[0]), c[1] + 0.5 * (pts[2][1] - c[1])};
                const double fc = eval(xc);
                if (fc < fv[2]) {
                    pts[2] = xc;
                    fv[2] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (int i = 1; i < 3; ++i) {
                    pts[i] = {pts[0][0] + 0.5 * (pts[i][0] - pts[0][0]),
                              pts[0][1] + 0.5 * (pts[i][1] - pts[0][1])};
                    fv[i] = eval(pts[i]);
                }
            }
        }
    }
    order();

    MinimizeResult r;
    r.x = pts[0][0];
    r.y = pts[0][1];
    r.value = fv[0];
    r.converged = converged;
    r.evaluations = evals;
    const double ex = 1e-6 * (box.x_hi - box.x_lo);
    const double ey = 1e-6 * (box.y_hi - box.y_lo);
    r.on_boundary = (r.x - box.x_lo <= ex) || (box.x_hi - r.x <= ex) ||
                    (r.y - box.y_lo <= ey) || (box.y_hi - r.y <= ey);
    return r;
}

namespace detail {

// Low-discrepancy point for deterministic multistart restarts.
inline double halton(std::size_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

inline std::vector<double> keep_positive(const std::vector<double>& data, std::size_t& dropped) {
    std::vector<double> kept;
    kept.reserve(data.size());
    for (double v : data)
        if (v > 0.0)
            kept.push_back(v);
        else
            ++dropped;
    return kept;
}

inline std::vector<double> keep_nonzero(const std::vector<double>& data, std::size_t& dropped) {
    std::vector<double> kept;
    kept.reserve(data.size());
    for (double v : data)
        if (v != 0.0)
            kept.push_back(v);
        else
            ++dropped;
    return kept;
}

// Closed-form two-parameter inversions from a log-moment set. The gML alpha
// formula maps any variance into (0, sqrt(2)]; the gL one requires
// 12 variance > pi^2 (otherwise no alpha in the family produces the data's
// log-variance and the fit is reported degenerate).
inline FitResult fit_gml2_from_moments(const LogMomentSet& m, std::size_t n, std::size_t dropped) {
    const double pi2 = constants::pi * constants::pi;
    FitResult r;
    r.family = Family::gml;
    r.nparams = 2;
    r.alpha_hat = std::sqrt(2.0) * constants::pi / std::sqrt(6.0 * m.variance + pi2);
    r.delta_hat = 1.0;
    r.mu_hat = std::exp(-r.alpha_hat * (constants::euler_gamma + m.mean));
    r.objective = 0.0;
    r.converged = true;
    r.n = n;
    r.dropped = dropped;
    return r;
}

inline FitResult fit_gl2_from_moments(const LogMomentSet& m, std::size_t n, std::size_t dropped) {
    const double pi2 = constants::pi * constants::pi;
    if (!(12.0 * m.variance > pi2)) {
        std::ostringstream msg;
        msg << "fit_gl2: sample log-variance " << m.variance
            << " does not exceed pi^2/12 = " << pi2 / 12.0
            << "; the alpha estimator is undefined (data inconsistent with the model)";
        throw degenerate_variance_error(msg.str());
    }
    FitResult r;
    r.family = Family::gl;
    r.nparams = 2;
    r.alpha_hat = 2.0 * constants::pi / std::sqrt(12.0 * m.variance - pi2);
    r.delta_hat = 1.0;
    r.mu_hat = std::exp(-r.alpha_hat * (constants::euler_gamma + m.mean));
    r.objective = 0.0;
    r.converged = true;
    r.n = n;
    r.dropped = dropped;
    return r;
}

// Shared three-parameter machinery: minimize the squared mismatch of
// (variance, mu3) over (alpha, delta), then invert the mean for mu. The
// objective is mu-free because both theoretical moments are.
template <class VarianceFn>
FitResult fit3_from_moments(Family family, const LogMomentSet& m, VarianceFn&& variance_of,
                            std::pair<double, double> start, const Box& box, int multistart,
                            std::size_t n, std::size_t dropped) {
    using constants::euler_gamma;
    using constants::zeta3;
    const auto objective = [&](double a, double d) {
        const double ia = 1.0 / a;
        const double dv = variance_of(a, d) - m.variance;
        const double d3 = (polygamma(2, d) - 2.0 * (a * a * a - 1.0) * zeta3) * ia * ia * ia - m.mu3;
        return dv * dv + d3 * d3;
    };
    MinimizeResult best = minimize_2d(objective, start, box);
    for (int k = 1; k <= multistart; ++k) {
        const double a0 = box.x_lo + halton(static_cast<std::size_t>(k), 2) * (box.x_hi - box.x_lo);
        const double d0 = box.y_lo * std::exp(halton(static_cast<std::size_t>(k), 3) *
                                              std::log(box.y_hi / box.y_lo));
        const MinimizeResult cand = minimize_2d(objective, {a0, d0}, box);
        if (cand.value < best.value) best = cand;
    }
    FitResult r;
    r.family = family;
    r.nparams = 3;
    r.alpha_hat = best.x;
    r.delta_hat = best.y;
    r.mu_hat = std::exp(polygamma(0, best.y) -
                        best.x * (m.mean - euler_gamma * (1.0 / best.x - 1.0)));
    r.objective = best.value;
    r.converged = best.converged;
    r.boundary = best.on_boundary;
    r.n = n;
    r.dropped = dropped;
    return r;
}

inline FitResult fit_gml3_from_moments(const LogMomentSet& m, int multistart = 0,
                                       std::size_t n = 0, std::size_t dropped = 0) {
    using constants::pi;
    const auto variance_of = [](double a, double d) {
        const double ia = 1.0 / a;
        return (pi * pi / 6.0) * (ia * ia - 1.0) + polygamma(1, d) * ia * ia;
    };
    return fit3_from_moments(Family::gml, m, variance_of, {0.1, 1.0},
                             Box{0.01, 1.0, 0.01, 50.0}, multistart, n, dropped);
}

inline FitResult fit_gl3_from_moments(const LogMomentSet& m, int multistart = 0,
                                      std::size_t n = 0, std::size_t dropped = 0) {
    using constants::pi;
    const auto variance_of = [](double a, double d) {
        const double ia = 1.0 / a;
        return pi * pi * (a * a + 2.0) / (12.0 * a * a) + polygamma(1, d) * ia * ia;
    };
    return fit3_from_moments(Family::gl, m, variance_of, {1.0, 1.0},
                             Box{0.01, 2.0, 0.01, 50.0}, multistart, n, dropped);
}

} // namespace detail

/// Two-parameter gML fit (delta = 1):
///   alpha_hat = sqrt(2) pi / sqrt(6 sigma^2 + pi^2),
///   mu_hat    = exp(-alpha_hat (C + mean)).
/// Non-positive observations are dropped (strictly positive support) and
/// reported via FitResult::dropped. alpha_hat always lies in (0, sqrt(2)];
/// values above 1 signal model inadequacy and are preserved, not clamped.
inline FitResult fit_gml2(const std::vector<double>& data) {
    std::size_t dropped = 0;
    const std::vector<double> kept = detail::keep_positive(data, dropped);
    if (kept.size() < 4)
        throw std::invalid_argument("fit_gml2: need at least 4 positive observations");
    const LogMomentSet m = sample_log_moments(kept, false);
    return detail::fit_gml2_from_moments(m, kept.size(), dropped);
}

/// Two-parameter gL fit (delta = 1):
///   alpha_hat = 2 pi / sqrt(12 sigma^2 - pi^2),
///   mu_hat    = exp(-alpha_hat (C + mean)),
/// on ln|y| with zeros dropped. Throws degenerate_variance_error when
/// 12 sigma^2 <= pi^2.
inline FitResult fit_gl2(const std::vector<double>& data) {
    std::size_t dropped = 0;
    const std::vector<double> kept = detail::keep_nonzero(data, dropped);
    if (kept.size() < 4)
        throw std::invalid_argument("fit_gl2: need at least 4 nonzero observations");
    const LogMomentSet m = sample_log_moments(kept, true);
    return detail::fit_gl2_from_moments(m, kept.size(), dropped);
}

/// Three-parameter gML fit: (alpha_hat, delta_hat) minimizes
/// (variance(alpha,delta) - sigma_hat^2)^2 + (mu3(alpha,delta) - mu3_hat)^2
/// over [0.01, 1] x [0.01, 50] from start (0.1, 1); then
/// mu_hat = exp(psi(delta_hat) - alpha_hat (mean - C(1/alpha_hat - 1))).
/// `multistart` adds that many deterministic low-discrepancy restarts,
/// keeping the lowest objective.
inline FitResult fit_gml3(const std::vector<double>& data, int multistart = 0) {
    std::size_t dropped = 0;
    const std::vector<double> kept = detail::keep_positive(data, dropped);
    if (kept.size() < 10)
        throw std::invalid_argument("fit_gml3: need at least 10 positive observations");
    const LogMomentSet m = sample_log_moments(kept, false);
    return detail::fit_gml3_from_moments(m, multistart, kept.size(), dropped);
}

/// Three-parameter gL fit: same structure over [0.01, 2] x [0.01, 50] from
/// start (1, 1), with the gL variance formula, on ln|y| with zeros dropped.
inline FitResult fit_gl3(const std::vector<double>& data, int multistart = 0) {
    std::size_t dropped = 0;
    const std::vector<double> kept = detail::keep_nonzero(data, dropped);
    if (kept.size() < 10)
        throw std::invalid_argument("fit_gl3: need at least 10 nonzero observations");
    const LogMomentSet m = sample_log_moments(kept, true);
    return detail::fit_gl3_from_moments(m, multistart, kept.size(), dropped);
}

} // namespace linml
