#pragma once

#include <stdexcept>
#include <string>

// Validated parameter triples for the two distribution families, plus the
// error types shared across the estimation and resampling modules.

namespace linml {

enum class Family { gml, gl };

inline const char* family_name(Family f) { return f == Family::gml ? "gML" : "gL"; }

/// Raised when an iterative numeric routine cannot meet its tolerance within
/// its budget; the message carries the partial result and the error bound.
struct non_convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when sample moments are incompatible with the model (for example
/// 12*variance <= pi^2 in the two-parameter Linnik fit, where alpha-hat is
/// undefined). Reported rather than clamped.
struct degenerate_variance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the bootstrap when more than 20% of replicate refits fail.
struct excessive_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
} // namespace detail

/// Parameters of the generalized Mittag-Leffler distribution gML(alpha, delta, mu),
/// supported on (0, inf) with Laplace transform (mu / (mu + t^alpha))^delta.
/// alpha = delta = 1 gives the exponential law, alpha = 1 the gamma law,
/// delta = 1 the classic Mittag-Leffler law.
struct GmlParams {
    double alpha; // stability index in (0, 1]
    double delta; // shape, > 0
    double mu;    // rate (units of x^-alpha), > 0

    GmlParams(double alpha_, double delta_, double mu_)
        : alpha(alpha_), delta(delta_), mu(mu_) {
        detail::require(alpha > 0.0 && alpha <= 1.0,
                        "GmlParams: alpha must lie in (0, 1], got " + std::to_string(alpha_));
        detail::require(delta > 0.0, "GmlParams: delta must be positive");
        detail::require(mu > 0.0, "GmlParams: mu must be positive");
    }
};

/// Parameters of the generalized Linnik distribution gL(alpha, delta, mu),
/// supported on the real line with characteristic function
/// (mu / (mu + |t|^alpha))^delta. delta = 1 is the Linnik law; alpha = 2 is a
/// gamma variance mixture of Gaussians.
struct GlParams {
    double alpha; // stability index in (0, 2]
    double delta; // shape, > 0
    double mu;    // scale-rate, > 0

    GlParams(double alpha_, double delta_, double mu_)
        : alpha(alpha_), delta(delta_), mu(mu_) {
        detail::require(alpha > 0.0 && alpha <= 2.0,
                        "GlParams: alpha must lie in (0, 2], got " + std::to_string(alpha_));
        detail::require(delta > 0.0, "GlParams: delta must be positive");
        detail::require(mu > 0.0, "GlParams: mu must be positive");
    }
};

} // namespace linml
