#pragma once

#include <cmath>
#include <stdexcept>

#include "linml/constants.hpp"
#include "linml/params.hpp"
#include "linml/special.hpp"

// Closed-form theoretical log-moments. With X' = ln X for X ~ gML and
// Y' = ln|Y| for Y ~ gL, the mixture representations give
//   X' = S' + U'/alpha,   Y' = S_alpha' + U'/alpha,
// with S' = ln S, S_alpha' = ln|S_alpha|, U' = ln U independent. The raw
// moments of each summand have closed forms in polygamma values and zeta
// constants; the composed central moments follow by independence.
//
// The fourth central moment is assembled by binomial convolution of the raw
// summand moments rather than from any single printed closed form: the
// condensed delta=1 expressions in circulation evaluate negative at alpha=1
// (impossible for a fourth central moment), so the convolution is treated as
// ground truth throughout.

namespace linml {

/// First four raw moments of a (log-transformed) random variable.
struct RawLogMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

/// Mean and central moments of a log-transformed family member.
struct LogMomentSet {
    double mean = 0.0;
    double variance = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
};

namespace detail {

// Raw moments of S' = ln S for the positive alpha-stable factor. Polynomial
// in 1/alpha with Euler-gamma / pi^2 / zeta(3) / pi^4 coefficients; vanishes
// identically at alpha = 1 (S degenerates to 1). Pure algebra, no domain
// restriction: the analytic continuation in alpha is what the delta-method
// plug-ins evaluate at fitted points.
inline RawLogMoments stable_log_raw_moments_unchecked(double alpha) {
    using constants::euler_gamma;
    using constants::pi;
    using constants::zeta3;
    const double C = euler_gamma;
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double ia = 1.0 / alpha;
    const double am1 = alpha - 1.0;
    RawLogMoments r;
    r.m1 = C * (ia - 1.0);
    r.m2 = (ia - 1.0) * (ia - 1.0) * C * C + (pi2 / 6.0) * (ia * ia - 1.0);
    r.m3 = (-2.0 * am1 * am1 * am1 * C * C * C + C * pi2 * am1 * am1 * (1.0 + alpha) -
            4.0 * (alpha * alpha * alpha - 1.0) * zeta3) /
           (2.0 * alpha * alpha * alpha);
    r.m4 = (1.0 / 60.0) * (ia * ia * ia - ia * ia * ia * ia) *
           (60.0 * C * C * C * C * am1 * am1 * am1 -
            60.0 * C * C * pi2 * am1 * am1 * (1.0 + alpha) +
            pi4 * (alpha - 3.0) * (1.0 + alpha) * (3.0 + alpha) +
            480.0 * C * (alpha * alpha * alpha - 1.0) * zeta3);
    return r;
}

// Raw moments of S_alpha' = ln|S_alpha| for the symmetric alpha-stable
// factor. Same comments as above.
inline RawLogMoments sym_stable_log_raw_moments_unchecked(double alpha) {
    using constants::euler_gamma;
    using constants::pi;
    using constants::zeta3;
    const double C = euler_gamma;
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    const double am1 = alpha - 1.0;
    RawLogMoments r;
    r.m1 = C * (1.0 / alpha - 1.0);
    r.m2 = (12.0 * C * C * am1 * am1 + (a2 + 2.0) * pi2) / (12.0 * a2);
    r.m3 = (1.0 - alpha) *
           (4.0 * am1 * am1 * C * C * C + (a2 + 2.0) * C * pi2 +
            8.0 * (a2 + alpha + 1.0) * zeta3) /
           (4.0 * a2 * alpha);
    r.m4 = (240.0 * am1 * am1 * am1 * am1 * C * C * C * C +
            120.0 * am1 * am1 * (a2 + 2.0) * C * C * pi2 +
            (19.0 * a4 + 20.0 * a2 + 36.0) * pi4 +
            1920.0 * am1 * am1 * (a2 + alpha + 1.0) * C * zeta3) /
           (240.0 * a4);
    return r;
}

// Raw moments of U' = ln U, U ~ Gamma(delta, rate mu), in terms of
// psi^(k)(delta) and ln mu.
inline RawLogMoments gamma_log_raw_moments_unchecked(double delta, double mu) {
    const double psi0 = polygamma(0, delta);
    const double psi1 = polygamma(1, delta);
    const double psi2 = polygamma(2, delta);
    const double psi3 = polygamma(3, delta);
    const double m = psi0 - std::log(mu);
    RawLogMoments r;
    r.m1 = m;
    r.m2 = m * m + psi1;
    r.m3 = m * m * m + 3.0 * m * psi1 + psi2;
    r.m4 = m * m * m * m + 6.0 * m * m * psi1 + 4.0 * m * psi2 + 3.0 * psi1 * psi1 + psi3;
    return r;
}

// Raw moments of A + B for independent A, B with known raw moments
// (binomial convolution). Long double throughout: the raw moments carry
// (ln mu)^4-sized terms that largely cancel in the central moments.
inline RawLogMoments compose_raw(const RawLogMoments& a, const RawLogMoments& b) {
    const long double a1 = a.m1, a2 = a.m2, a3 = a.m3, a4 = a.m4;
    const long double b1 = b.m1, b2 = b.m2, b3 = b.m3, b4 = b.m4;
    RawLogMoments r;
    r.m1 = static_cast<double>(a1 + b1);
    r.m2 = static_cast<double>(a2 + 2.0L * a1 * b1 + b2);
    r.m3 = static_cast<double>(a3 + 3.0L * a2 * b1 + 3.0L * a1 * b2 + b3);
    r.m4 = static_cast<double>(a4 + 4.0L * a3 * b1 + 6.0L * a2 * b2 + 4.0L * a1 * b3 + b4);
    return r;
}

// Scale raw moments: moments of A/s from moments of A.
inline RawLogMoments scale_raw(const RawLogMoments& a, double s) {
    RawLogMoments r;
    r.m1 = a.m1 / s;
    r.m2 = a.m2 / (s * s);
    r.m3 = a.m3 / (s * s * s);
    r.m4 = a.m4 / (s * s * s * s);
    return r;
}

// Fourth central moment from raw moments (long double to absorb the
// cancellation between (ln mu)-sized raw terms).
inline double central4_from_raw(const RawLogMoments& m) {
    const long double m1 = m.m1, m2 = m.m2, m3 = m.m3, m4 = m.m4;
    return static_cast<double>(m4 - 4.0L * m3 * m1 + 6.0L * m2 * m1 * m1 -
                               3.0L * m1 * m1 * m1 * m1);
}

// Composed log-moment sets without parameter-range validation; the public
// operations validate, while the delta-method plug-ins evaluate these at
// fitted values that can fall outside the family's own alpha range.
inline LogMomentSet gml_log_moments_unchecked(double alpha, double delta, double mu) {
    using constants::euler_gamma;
    using constants::pi;
    using constants::zeta3;
    const double psi0 = polygamma(0, delta);
    const double psi1 = polygamma(1, delta);
    const double psi2 = polygamma(2, delta);
    const double ia = 1.0 / alpha;
    LogMomentSet s;
    s.mean = euler_gamma * (ia - 1.0) + (psi0 - std::log(mu)) * ia;
    s.variance = (pi * pi / 6.0) * (ia * ia - 1.0) + psi1 * ia * ia;
    s.mu3 = (psi2 - 2.0 * (alpha * alpha * alpha - 1.0) * zeta3) * ia * ia * ia;
    const RawLogMoments raw = compose_raw(
        stable_log_raw_moments_unchecked(alpha),
        scale_raw(gamma_log_raw_moments_unchecked(delta, mu), alpha));
    s.mu4 = central4_from_raw(raw);
    return s;
}

inline LogMomentSet gl_log_moments_unchecked(double alpha, double delta, double mu) {
    using constants::euler_gamma;
    using constants::pi;
    using constants::zeta3;
    const double psi0 = polygamma(0, delta);
    const double psi1 = polygamma(1, delta);
    const double psi2 = polygamma(2, delta);
    const double ia = 1.0 / alpha;
    LogMomentSet s;
    s.mean = euler_gamma * (ia - 1.0) + (psi0 - std::log(mu)) * ia;
    s.variance = pi * pi * (alpha * alpha + 2.0) / (12.0 * alpha * alpha) + psi1 * ia * ia;
    s.mu3 = (psi2 - 2.0 * (alpha * alpha * alpha - 1.0) * zeta3) * ia * ia * ia;
    const RawLogMoments raw = compose_raw(
        sym_stable_log_raw_moments_unchecked(alpha),
        scale_raw(gamma_log_raw_moments_unchecked(delta, mu), alpha));
    s.mu4 = central4_from_raw(raw);
    return s;
}

} // namespace detail

/// First four raw moments of S' = ln S, S positive alpha-stable, 0 < alpha < 1.
inline RawLogMoments stable_log_raw_moments(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("stable_log_raw_moments: alpha must lie in (0, 1)");
    return detail::stable_log_raw_moments_unchecked(alpha);
}

/// First four raw moments of S_alpha' = ln|S_alpha|, symmetric alpha-stable,
/// 0 < alpha <= 2.
inline RawLogMoments sym_stable_log_raw_moments(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::domain_error("sym_stable_log_raw_moments: alpha must lie in (0, 2]");
    return detail::sym_stable_log_raw_moments_unchecked(alpha);
}

/// First four raw moments of U' = ln U, U ~ Gamma(delta, rate mu).
inline RawLogMoments gamma_log_raw_moments(double delta, double mu) {
    if (!(delta > 0.0)) throw std::domain_error("gamma_log_raw_moments: shape must be positive");
    if (!(mu > 0.0)) throw std::domain_error("gamma_log_raw_moments: rate must be positive");
    return detail::gamma_log_raw_moments_unchecked(delta, mu);
}

/// Mean, variance, third and fourth central moments of X' = ln X,
/// X ~ gML(alpha, delta, mu). At alpha = 1 these are exactly the log-gamma
/// moments (the stable summand's moments vanish identically).
inline LogMomentSet gml_log_moments(const GmlParams& p) {
    return detail::gml_log_moments_unchecked(p.alpha, p.delta, p.mu);
}

/// Mean, variance, third and fourth central moments of Y' = ln|Y|,
/// Y ~ gL(alpha, delta, mu). Mean and mu3 coincide with the gML expressions;
/// only the even moments differ.
inline LogMomentSet gl_log_moments(const GlParams& p) {
    return detail::gl_log_moments_unchecked(p.alpha, p.delta, p.mu);
}

/// Fractional moment E X^q for X ~ gML(alpha, delta, mu), 0 < q < alpha:
///   E X^q = Gamma(delta + q/alpha) Gamma(1 - q/alpha)
///           / (mu^{q/alpha} Gamma(1 - q) Gamma(delta)).
/// At alpha = 1 this reduces exactly to the gamma-mixture moment
/// Gamma(delta + q) / (mu^q Gamma(delta)).
inline double gml_fractional_moment(double q, const GmlParams& p) {
    if (!(q > 0.0 && q < p.alpha))
        throw std::domain_error("gml_fractional_moment: q must lie in (0, alpha)");
    const double qa = q / p.alpha;
    return std::exp(log_gamma(p.delta + qa) + log_gamma(1.0 - qa) - qa * std::log(p.mu) -
                    log_gamma(1.0 - q) - log_gamma(p.delta));
}

/// Absolute fractional moment E|Y|^q for Y ~ gL(alpha, delta, mu),
/// 0 < q < alpha. Computed as the product of the two independent factors
///   E U^{q/alpha} = Gamma(delta + q/alpha) / (mu^{q/alpha} Gamma(delta)),
///   E|S_alpha|^q  = (2/pi) sin(pi q / 2) Gamma(q) Gamma(1 - q/alpha),
/// the second being the reflection-formula simplification of the symmetric
/// stable moment; this form is finite at the removable point q = 1 where the
/// cos(pi q/2) / Gamma(1-q) cancellation would otherwise be 0/0.
inline double gl_abs_fractional_moment(double q, const GlParams& p) {
    if (!(q > 0.0 && q < p.alpha))
        throw std::domain_error("gl_abs_fractional_moment: q must lie in (0, alpha)");
    const double qa = q / p.alpha;
    const double log_part = log_gamma(p.delta + qa) - qa * std::log(p.mu) - log_gamma(p.delta) +
                            log_gamma(q) + log_gamma(1.0 - qa);
    return (2.0 / constants::pi) * std::sin(constants::pi * q / 2.0) * std::exp(log_part);
}

} // namespace linml
