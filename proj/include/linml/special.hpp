#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "linml/constants.hpp"
#include "linml/params.hpp"

// Special functions underpinning the moment formulas and density evaluation:
// log-gamma, polygamma of orders 0..4, the Prabhakar (generalized
// Mittag-Leffler) function, and the gML density built from it.
//
// The Prabhakar series E^eta_{beta,gamma}(z) = sum_r (eta)_r z^r / (r! Gamma(beta r + gamma))
// alternates for z < 0 and its intermediate terms grow like exp((-z)^(1/beta)),
// so fixed-precision summation loses roughly (-z)^(1/beta)/ln(10) decimal digits
// to cancellation. Terms are therefore computed in log-magnitude/sign form and
// accumulated in the widest fixed-precision type available (__float128 on GCC,
// long double otherwise); the result carries an explicit rounding bound and a
// low-precision flag for arguments beyond what the accumulator can absorb.

#if defined(__SIZEOF_FLOAT128__) && defined(__GNUC__) && !defined(LINML_NO_FLOAT128)
#define LINML_HAVE_FLOAT128 1
#include <quadmath.h>
#endif

namespace linml {

namespace detail {

// lgamma for strictly positive arguments. glibc's lgamma writes the global
// signgam (POSIX marks it MT-Unsafe), so prefer the _r variant when present.
inline double log_gamma_pos(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

inline long double log_gamma_pos_l(long double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgammal_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

#if defined(LINML_HAVE_FLOAT128)
// ln Gamma(x) for x > 0 in quad precision: recurrence-shift to x >= 50, then
// the de Moivre series with Bernoulli terms through B20. The first omitted
// term at x = 50 is B22/(22*21*50^21) ~ 3e-35, i.e. below one quad ulp of the
// result. Hand-rolled (instead of lgammaq) to stay thread-safe and to control
// accuracy; only ever called with positive arguments.
inline __float128 log_gamma_quad(__float128 x) {
    static const __float128 half_log_two_pi =
        __float128(0.5) * logq(__float128(2) * M_PIq);
    // B_{2j} / ((2j)(2j-1)) for j = 1..10, as exact rationals.
    static const __float128 stirling[10] = {
        __float128(1) / __float128(12),        -__float128(1) / __float128(360),
        __float128(1) / __float128(1260),      -__float128(1) / __float128(1680),
        __float128(1) / __float128(1188),      -__float128(691) / __float128(360360),
        __float128(1) / __float128(156),       -__float128(3617) / __float128(122400),
        __float128(43867) / __float128(244188), -__float128(174611) / __float128(125400)};

    __float128 shifted = 0;
    if (x < __float128(50)) {
        __float128 prod = 1;
        while (x < __float128(50)) {
            prod *= x;
            x += 1;
        }
        shifted = -logq(prod);
    }
    const __float128 t = __float128(1) / x;
    const __float128 t2 = t * t;
    __float128 s = stirling[9];
    for (int j = 8; j >= 0; --j) s = stirling[j] + s * t2;
    return (x - __float128(0.5)) * logq(x) - x + half_log_two_pi + t * s + shifted;
}
#endif

// Arithmetic shims so the Prabhakar series can be instantiated over different
// accumulator widths. term_eps is the effective per-term relative rounding
// (dominated by the accuracy of the log-gamma evaluation inside the log-form
// term), used for the honest cancellation bound.
template <class Real>
struct real_ops;

template <>
struct real_ops<double> {
    static constexpr double term_eps = 1e-12;
    static double exp(double v) { return std::exp(v); }
    static double log(double v) { return std::log(v); }
    static double fabs(double v) { return std::fabs(v); }
    static double lgamma(double v) { return log_gamma_pos(v); }
    static double to_double(double v) { return v; }
};

template <>
struct real_ops<long double> {
    static constexpr double term_eps = 1e-15;
    static long double exp(long double v) { return std::exp(v); }
    static long double log(long double v) { return std::log(v); }
    static long double fabs(long double v) { return std::fabs(v); }
    static long double lgamma(long double v) { return log_gamma_pos_l(v); }
    static double to_double(long double v) { return static_cast<double>(v); }
};

#if defined(LINML_HAVE_FLOAT128)
template <>
struct real_ops<__float128> {
    static constexpr double term_eps = 1e-30;
    static __float128 exp(__float128 v) { return expq(v); }
    static __float128 log(__float128 v) { return logq(v); }
    static __float128 fabs(__float128 v) { return fabsq(v); }
    static __float128 lgamma(__float128 v) { return log_gamma_quad(v); }
    static double to_double(__float128 v) { return static_cast<double>(v); }
};

using prabhakar_accum = __float128;
#else
using prabhakar_accum = long double;
#endif

} // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    return detail::log_gamma_pos(x);
}

namespace detail {

// B_2 .. B_20 (even-index Bernoulli numbers).
inline constexpr double bernoulli2k[10] = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0,     -1.0 / 30.0,       5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0, 43867.0 / 798.0,  -174611.0 / 330.0};

// Asymptotic expansion of psi^(k)(x) for x >= 10:
//   psi(x)     ~ ln x - 1/(2x) - sum_j B_{2j} / (2j x^{2j})
//   psi^(k)(x) ~ (-1)^{k-1} [ (k-1)!/x^k + k!/(2 x^{k+1})
//                             + sum_j B_{2j} (2j+k-1)!/(2j)! x^{-(2j+k)} ]
// With terms through B20 the first omitted term at x = 10 is below 1e-18
// relative for every order 0..4.
inline double polygamma_asymptotic(int k, double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    if (k == 0) {
        double sum = std::log(x) - 0.5 * inv;
        double xp = inv2;
        for (int j = 1; j <= 10; ++j) {
            sum -= bernoulli2k[j - 1] * xp / (2.0 * j);
            xp *= inv2;
        }
        return sum;
    }
    double km1_fact = 1.0;
    for (int i = 2; i < k; ++i) km1_fact *= i;
    double sum = km1_fact * std::pow(inv, k) + km1_fact * k * 0.5 * std::pow(inv, k + 1);
    double xp = std::pow(inv, k + 2);
    for (int j = 1; j <= 10; ++j) {
        double pochh = 1.0; // (2j+k-1)! / (2j)!
        for (int i = 2 * j + 1; i <= 2 * j + k - 1; ++i) pochh *= i;
        sum += bernoulli2k[j - 1] * pochh * xp;
        xp *= inv2;
    }
    return (k % 2 != 0 ? 1.0 : -1.0) * sum;
}

} // namespace detail

/// Polygamma function psi^(k)(x) for orders k = 0..4 (k = 0 is the digamma)
/// and x > 0, via the recurrence psi^(k)(x) = psi^(k)(x+1) - (-1)^k k! x^{-k-1}
/// shifted to x >= 10 followed by the asymptotic expansion.
inline double polygamma(int k, double x) {
    if (k < 0 || k > 4) throw std::domain_error("polygamma: order must be in 0..4");
    if (!(x > 0.0)) throw std::domain_error("polygamma: argument must be positive");
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0; // (-1)^k
    double shift = 0.0;
    while (x < 10.0) {
        shift -= sign * kfact / std::pow(x, k + 1);
        x += 1.0;
    }
    return detail::polygamma_asymptotic(k, x) + shift;
}

/// Outcome of a Prabhakar series evaluation. `value` is always the best
/// available partial sum; `converged` reports whether the truncation target
/// (1e-10 relative to max(1, |value|)) was met within the term budget;
/// `low_precision` flags results whose alternating-series rounding bound
/// exceeds 1e-8 of the value.
struct PrabhakarResult {
    double value = 0.0;
    double error_bound = 0.0; // truncation tail bound + accumulated rounding bound
    int terms = 0;
    bool converged = false;
    bool low_precision = false;
};

inline constexpr int prabhakar_default_budget = 2000;

namespace detail {

template <class Real>
PrabhakarResult prabhakar_series(double beta, double gamma, double eta, double z, int budget) {
    using ops = real_ops<Real>;
    PrabhakarResult out;

    if (z == 0.0) {
        out.value = ops::to_double(ops::exp(-ops::lgamma(Real(gamma))));
        out.error_bound = std::fabs(out.value) * ops::term_eps;
        out.terms = 1;
        out.converged = true;
        return out;
    }

    const Real log_abs_z = ops::log(ops::fabs(Real(z)));
    const bool negative = z < 0.0;
    Real sum = 0;
    Real max_abs = 0;
    Real log_pf = 0; // ln[ (eta)_r / r! ]
    Real prev_abs = 0;
    double trunc_bound = std::numeric_limits<double>::infinity();
    int decreasing = 0;
    int r = 0;
    for (; r < budget; ++r) {
        const Real lt = log_pf + Real(r) * log_abs_z - ops::lgamma(Real(beta) * Real(r) + Real(gamma));
        Real term = ops::exp(lt);
        if (negative && (r & 1)) term = -term;
        sum += term;
        const Real at = ops::fabs(term);
        if (at > max_abs) max_abs = at;
        log_pf += ops::log((Real(eta) + Real(r)) / (Real(r) + Real(1)));

        if (r > 0) {
            decreasing = (at < prev_abs) ? decreasing + 1 : 0;
            if (decreasing >= 2) {
                const double q = ops::to_double(at / prev_abs);
                const double tail = ops::to_double(at) * q / (1.0 - q);
                trunc_bound = tail;
                const double scale = std::fabs(ops::to_double(sum));
                if (tail <= scale * 1e-17 + 1e-320) {
                    ++r;
                    break;
                }
            }
        }
        prev_abs = at;
    }

    out.value = ops::to_double(sum);
    out.terms = r;
    const double round_bound =
        ops::to_double(max_abs) * ops::term_eps * static_cast<double>(std::max(r, 1));
    out.error_bound = (std::isinf(trunc_bound) ? 0.0 : trunc_bound) + round_bound;
    out.converged = trunc_bound <= 1e-10 * std::max(1.0, std::fabs(out.value));
    out.low_precision = round_bound > 1e-8 * std::max(std::fabs(out.value), 1e-300);
    return out;
}

} // namespace detail

/// Prabhakar (generalized Mittag-Leffler) function
/// E^eta_{beta,gamma}(z) = sum_{r>=0} (eta)_r z^r / (r! Gamma(beta r + gamma)),
/// with full diagnostics. Never throws on hard arguments; inspect `converged`
/// and `low_precision`.
inline PrabhakarResult prabhakar_ml_ex(double beta, double gamma, double eta, double z,
                                       int budget = prabhakar_default_budget) {
    if (!(beta > 0.0)) throw std::domain_error("prabhakar_ml: beta must be positive");
    if (!(gamma > 0.0)) throw std::domain_error("prabhakar_ml: gamma must be positive");
    if (!(eta > 0.0)) throw std::domain_error("prabhakar_ml: eta must be positive");
    if (!std::isfinite(z)) throw std::domain_error("prabhakar_ml: z must be finite");
    if (budget < 1) throw std::invalid_argument("prabhakar_ml: term budget must be >= 1");
    return detail::prabhakar_series<detail::prabhakar_accum>(beta, gamma, eta, z, budget);
}

/// Prabhakar function as a plain value; throws non_convergence_error (carrying
/// the partial sum and bound) if the truncation target is not met within the
/// term budget.
inline double prabhakar_ml(double beta, double gamma, double eta, double z,
                           int budget = prabhakar_default_budget) {
    const PrabhakarResult r = prabhakar_ml_ex(beta, gamma, eta, z, budget);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "prabhakar_ml: series not converged after " << r.terms
            << " terms; partial sum " << r.value << ", error bound " << r.error_bound;
        throw non_convergence_error(msg.str());
    }
    return r.value;
}

/// gML density value with diagnostics.
struct DensityResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool low_precision = false;
};

/// Density of gML(alpha, delta, mu) at x > 0:
///   f(x) = mu^delta x^{delta alpha - 1} E^delta_{alpha, delta alpha}(-mu x^alpha).
/// For delta*alpha < 1 the density diverges as x -> 0+ (integrable singularity);
/// the finite formula value is returned. Deep-tail arguments where the
/// alternating series cancels beyond the accumulator's precision come back
/// flagged low_precision. Propagates the series non-convergence error.
inline DensityResult gml_density_ex(double x, const GmlParams& p,
                                    int budget = prabhakar_default_budget) {
    if (!(x > 0.0)) throw std::domain_error("gml_density: x must be positive");
    const double y = p.mu * std::pow(x, p.alpha);
    const PrabhakarResult e = prabhakar_ml_ex(p.alpha, p.delta * p.alpha, p.delta, -y, budget);
    if (!e.converged) {
        std::ostringstream msg;
        msg << "gml_density: Prabhakar series not converged at x = " << x
            << " (partial sum " << e.value << ", bound " << e.error_bound << ")";
        throw non_convergence_error(msg.str());
    }
    const long double prefactor =
        std::exp(static_cast<long double>(p.delta) * std::log(static_cast<long double>(p.mu)) +
                 (static_cast<long double>(p.delta) * p.alpha - 1.0L) *
                     std::log(static_cast<long double>(x)));
    DensityResult out;
    out.value = static_cast<double>(prefactor * e.value);
    out.error_bound = static_cast<double>(prefactor * e.error_bound);
    out.low_precision = e.low_precision;
    if (out.value < 0.0) out.value = 0.0; // rounding noise in flagged deep-tail regions
    return out;
}

inline double gml_density(double x, const GmlParams& p) { return gml_density_ex(x, p).value; }

} // namespace linml
