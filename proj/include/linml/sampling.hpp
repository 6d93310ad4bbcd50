#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "linml/constants.hpp"
#include "linml/params.hpp"
#include "linml/rng.hpp"

// Exact samplers for the building blocks (positive alpha-stable, symmetric
// alpha-stable, gamma) and the two mixture families built from them:
//   gML: X = U^{1/alpha} * S,      U ~ Gamma(delta, rate mu), S alpha+-stable
//   gL:  Y = U^{1/alpha} * S_alpha, S_alpha symmetric alpha-stable.
// All functions are pure given the RngStream; parallel callers use distinct
// stream ids.

namespace linml {

namespace detail {

// Kanter's deterministic map (u, e) -> S for u in (0, pi), e > 0.
inline double kanter_transform(double alpha, double u, double e) {
    const double inv_alpha = 1.0 / alpha;
    const double a = std::sin(alpha * u);
    const double b = std::pow(std::sin((1.0 - alpha) * u), inv_alpha - 1.0);
    const double c = std::pow(std::sin(u), inv_alpha);
    const double d = std::pow(e, inv_alpha - 1.0);
    return a * b / (c * d);
}

// Chambers-Mallows-Stuck map (u2, e) -> S_alpha for u2 in (-pi/2, pi/2),
// e > 0, for the general branch alpha not in {1, 2}.
inline double cms_transform(double alpha, double u2, double e) {
    const double inv_alpha = 1.0 / alpha;
    const double a = std::sin(alpha * u2) / std::pow(std::cos(u2), inv_alpha);
    const double b = std::pow(std::cos((1.0 - alpha) * u2) / e, inv_alpha - 1.0);
    return a * b;
}

} // namespace detail

/// One draw of the positive stable law with Laplace transform exp(-t^alpha),
/// 0 < alpha < 1, by Kanter's formula
///   S = sin(alpha U) [sin((1-alpha)U)]^{1/alpha-1} / ([sin U]^{1/alpha} E^{1/alpha-1})
/// with U ~ Uniform(0, pi) and E ~ Exp(1). U is drawn on the open interval and
/// E = -ln(u) with u strictly inside (0,1), so no factor is ever 0 or infinite.
inline double sample_alpha_plus_stable(double alpha, RngStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("sample_alpha_plus_stable: alpha must lie in (0, 1)");
    const double u = constants::pi * rng.uniform_open();
    const double e = rng.exp1();
    return detail::kanter_transform(alpha, u, e);
}

/// One draw of the symmetric stable law with characteristic function
/// exp(-|t|^alpha), 0 < alpha <= 2, by the Chambers-Mallows-Stuck formula
///   S_alpha = sin(alpha U2)/[cos U2]^{1/alpha} * (cos((1-alpha)U2)/E)^{1/alpha-1}
/// with U2 ~ Uniform(-pi/2, pi/2), E ~ Exp(1). alpha = 1 takes the Cauchy
/// limit tan(U2); alpha = 2 takes the Gaussian branch 2 sin(U2) sqrt(E),
/// which is exactly Normal(0, 2).
inline double sample_sym_alpha_stable(double alpha, RngStream& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::domain_error("sample_sym_alpha_stable: alpha must lie in (0, 2]");
    const double u2 = constants::pi * (rng.uniform_open() - 0.5);
    if (alpha == 1.0) return std::tan(u2);
    const double e = rng.exp1();
    if (alpha == 2.0) return 2.0 * std::sin(u2) * std::sqrt(e);
    return detail::cms_transform(alpha, u2, e);
}

/// One draw from Gamma(shape delta, rate mu), density
/// mu^delta u^{delta-1} e^{-mu u} / Gamma(delta). Marsaglia-Tsang squeeze for
/// delta >= 1, with the U^{1/delta} boost for delta < 1. Strictly positive.
inline double sample_gamma(double delta, double mu, RngStream& rng) {
    if (!(delta > 0.0)) throw std::domain_error("sample_gamma: shape must be positive");
    if (!(mu > 0.0)) throw std::domain_error("sample_gamma: rate must be positive");
    double boost = 1.0;
    double shape = delta;
    if (shape < 1.0) {
        boost = std::pow(rng.uniform_open(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / mu;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v / mu;
    }
}

/// n draws from gML(alpha, delta, mu). For alpha = 1 the law is exactly
/// Gamma(delta, mu) (the stable factor degenerates to the constant 1), so
/// gamma draws are returned directly.
inline std::vector<double> sample_gml(const GmlParams& p, std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_gml: n must be >= 1");
    std::vector<double> out(n);
    if (p.alpha == 1.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = sample_gamma(p.delta, p.mu, rng);
        return out;
    }
    const double inv_alpha = 1.0 / p.alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = sample_gamma(p.delta, p.mu, rng);
        const double s = sample_alpha_plus_stable(p.alpha, rng);
        out[i] = std::pow(u, inv_alpha) * s;
    }
    return out;
}

/// n draws from gL(alpha, delta, mu).
inline std::vector<double> sample_gl(const GlParams& p, std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_gl: n must be >= 1");
    std::vector<double> out(n);
    const double inv_alpha = 1.0 / p.alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = sample_gamma(p.delta, p.mu, rng);
        const double s = sample_sym_alpha_stable(p.alpha, rng);
        out[i] = std::pow(u, inv_alpha) * s;
    }
    return out;
}

} // namespace linml
