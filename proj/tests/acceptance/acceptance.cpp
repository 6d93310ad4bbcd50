// Acceptance gate: seeded end-to-end checks of the library against its
// reference targets — simulation-study bias/CV tables, sampler transform
// identities, closed-form log- and fractional-moment formulas, estimator
// round trips, confidence-interval coverage, the financial-index workflow,
// and cross-worker-count determinism.
//
// Prints one [PASS]/[FAIL]/[SKIP] line per criterion; the exit status is the
// number of failed criteria. Everything is seeded, so reruns are identical.
// The financial criterion needs user-supplied Yahoo-style OHLC exports and is
// skipped unless LINML_SPX_CSV / LINML_DJI_CSV point at them.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "linml/linml.hpp"

namespace {

using linml::Family;

constexpr std::uint64_t kSeedTable1 = 9271;
constexpr std::uint64_t kSeedTable2 = 9272;
constexpr std::uint64_t kSeedTransforms = 9273;
constexpr std::uint64_t kSeedMoments = 9274;
constexpr std::uint64_t kSeedCoverage = 9275;

constexpr std::size_t kMomentDraws = 10'000'000;

int g_failed = 0;

void report(int index, const std::string& title, const std::vector<std::string>& failures) {
    if (failures.empty()) {
        std::cout << "[PASS] criterion " << index << ": " << title << "\n";
    } else {
        ++g_failed;
        std::cout << "[FAIL] criterion " << index << ": " << title << "\n";
        for (const std::string& f : failures) std::cout << "       - " << f << "\n";
    }
    std::cout.flush();
}

void report_skip(int index, const std::string& title, const std::string& why) {
    std::cout << "[SKIP] criterion " << index << ": " << title << " (" << why << ")\n";
    std::cout.flush();
}

class Stopwatch {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

public:
    void lap(const std::string& what) {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        std::cerr << "[time] " << what << ": " << static_cast<int>(s + 0.5) << "s\n";
        start_ = now;
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

void expect_close(std::vector<std::string>& fails, const std::string& label, double got,
                  double want, double tol) {
    if (!(std::fabs(got - want) <= tol)) {
        std::ostringstream os;
        os.precision(12);
        os << label << ": got " << got << ", want " << want << " (tolerance " << tol << ")";
        fails.push_back(os.str());
    }
}

void expect_rel(std::vector<std::string>& fails, const std::string& label, double got,
                double want, double rel) {
    expect_close(fails, label, got, want, rel * std::fabs(want));
}

// ------------------------------------------------ criteria 1-2: study grids

// Tolerance for comparing a study statistic with its reference value: the
// reference tables are rounded to three decimals and carry their own Monte
// Carlo noise, so the gate is the larger of 0.01 and 50% of the reference.
double study_tol(double reference) { return std::max(0.01, 0.5 * std::fabs(reference)); }

linml::StudyConfig table_config(Family family, std::uint64_t seed, int threads) {
    linml::StudyConfig cfg;
    cfg.family = family;
    if (family == Family::gml)
        cfg.grid = {{0.5, 0.5, 1.0}, {0.7, 0.5, 1.0}, {0.95, 0.5, 1.0}};
    else
        cfg.grid = {{0.6, 0.5, 1.0}, {1.2, 0.5, 1.0}, {1.8, 0.5, 1.0}};
    cfg.sample_sizes = {10000};
    cfg.replications = 1000;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.multistart = 2;
    return cfg;
}

std::string study_csv(const std::vector<linml::StudyRow>& rows) {
    std::ostringstream os;
    linml::write_study_csv(os, rows);
    return os.str();
}

void check_stat(std::vector<std::string>& fails, double alpha, const char* stat, double got,
                double want) {
    std::ostringstream label;
    label << "alpha=" << alpha << " " << stat;
    expect_close(fails, label.str(), got, want, study_tol(want));
}

std::vector<std::string> criterion1(const std::vector<linml::StudyRow>& rows) {
    std::vector<std::string> fails;
    if (rows.size() != 3) {
        fails.push_back("expected 3 study rows");
        return fails;
    }
    const double alphas[3] = {0.5, 0.7, 0.95};
    const double mb_a[3] = {0.021, 0.020, 0.018};
    const double mb_d[3] = {0.037, 0.037, 0.034};
    const double mb_m[3] = {0.063, 0.061, 0.058};
    const double cv_a[3] = {0.027, 0.026, 0.024};
    const double cv_d[3] = {0.047, 0.045, 0.043};
    const double cv_m[3] = {0.080, 0.076, 0.073};
    for (int i = 0; i < 3; ++i) {
        check_stat(fails, alphas[i], "MB(alpha)", rows[i].mb_alpha, mb_a[i]);
        check_stat(fails, alphas[i], "MB(delta)", rows[i].mb_delta, mb_d[i]);
        check_stat(fails, alphas[i], "MB(mu)", rows[i].mb_mu, mb_m[i]);
        check_stat(fails, alphas[i], "CV(alpha)", rows[i].cv_alpha, cv_a[i]);
        check_stat(fails, alphas[i], "CV(delta)", rows[i].cv_delta, cv_d[i]);
        check_stat(fails, alphas[i], "CV(mu)", rows[i].cv_mu, cv_m[i]);
    }
    return fails;
}

// The reference table for the gL grid gates the alpha and mu statistics; its
// delta column at the largest alpha is internally inconsistent (apparent
// transcription slip), so only MB(alpha) and MB(mu) are compared.
std::vector<std::string> criterion2(const std::vector<linml::StudyRow>& rows) {
    std::vector<std::string> fails;
    if (rows.size() != 3) {
        fails.push_back("expected 3 study rows");
        return fails;
    }
    const double alphas[3] = {0.6, 1.2, 1.8};
    const double mb_a[3] = {0.024, 0.025, 0.031};
    const double mb_m[3] = {0.066, 0.076, 0.098};
    for (int i = 0; i < 3; ++i) {
        check_stat(fails, alphas[i], "MB(alpha)", rows[i].mb_alpha, mb_a[i]);
        check_stat(fails, alphas[i], "MB(mu)", rows[i].mb_mu, mb_m[i]);
    }
    return fails;
}

// --------------------------------------- criterion 3: transform identities

struct TransformRow {
    Family family;
    double alpha, delta, mu, t, empirical, target, se;
};

// Empirical Laplace transform (gML) / characteristic function (gL) at
// t in {0.5, 1, 2} against (mu / (mu + t^alpha))^delta, n = 1e5 per triple.
std::vector<TransformRow> run_transform_suite() {
    std::vector<TransformRow> out;
    const std::size_t n = 100000;
    const double ts[3] = {0.5, 1.0, 2.0};
    std::uint64_t stream = 0;
    const auto run_family = [&](Family fam, std::array<double, 3> alphas) {
        for (const double a : alphas) {
            linml::RngStream rng(kSeedTransforms, stream++);
            const std::vector<double> x =
                fam == Family::gml ? linml::sample_gml(linml::GmlParams(a, 0.5, 1.0), n, rng)
                                   : linml::sample_gl(linml::GlParams(a, 0.5, 1.0), n, rng);
            for (const double t : ts) {
                long double s = 0.0L, s2 = 0.0L;
                for (const double v : x) {
                    const double g = fam == Family::gml ? std::exp(-t * v) : std::cos(t * v);
                    s += g;
                    s2 += static_cast<long double>(g) * g;
                }
                const double emp = static_cast<double>(s / static_cast<long double>(n));
                const double var =
                    static_cast<double>(s2 / static_cast<long double>(n)) - emp * emp;
                const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
                const double target = std::pow(1.0 / (1.0 + std::pow(t, a)), 0.5);
                out.push_back({fam, a, 0.5, 1.0, t, emp, target, se});
            }
        }
    };
    run_family(Family::gml, {0.5, 0.7, 0.95});
    run_family(Family::gl, {0.6, 1.2, 1.8});
    return out;
}

std::string transform_csv(const std::vector<TransformRow>& rows) {
    std::ostringstream os;
    os << "family,alpha,delta,mu,t,empirical,target,se\n";
    os << std::setprecision(17);
    for (const TransformRow& r : rows)
        os << linml::family_name(r.family) << ',' << r.alpha << ',' << r.delta << ',' << r.mu
           << ',' << r.t << ',' << r.empirical << ',' << r.target << ',' << r.se << '\n';
    return os.str();
}

std::vector<std::string> criterion3(const std::vector<TransformRow>& rows) {
    std::vector<std::string> fails;
    for (const TransformRow& r : rows) {
        std::ostringstream label;
        label << linml::family_name(r.family) << "(alpha=" << r.alpha << ") at t=" << r.t;
        expect_close(fails, label.str(), r.empirical, r.target, 3.0 * r.se);
    }
    return fails;
}

// ------------------------- criteria 4 and 6 shared: large-sample Monte Carlo

struct LargeSampleFails {
    std::vector<std::string> log_moments; // criterion 4
    std::vector<std::string> fractional;  // criterion 6
};

// One n = 1e7 sample per grid triple feeds both the log-moment comparison
// (mean/variance at 1%, mu3/mu4 at 3%) and the fractional-moment comparison
// (q = alpha/4, alpha/2, 3 alpha/4 at 1%).
LargeSampleFails run_large_sample_checks() {
    LargeSampleFails out;
    std::uint64_t stream = 0;
    const auto run_triple = [&](Family fam, double a) {
        const double delta = 0.5, mu = 1.0;
        linml::RngStream rng(kSeedMoments, stream++);
        std::vector<double> x =
            fam == Family::gml
                ? linml::sample_gml(linml::GmlParams(a, delta, mu), kMomentDraws, rng)
                : linml::sample_gl(linml::GlParams(a, delta, mu), kMomentDraws, rng);

        const double q[3] = {a / 4.0, a / 2.0, 3.0 * a / 4.0};
        long double s1 = 0.0L, sq[3] = {0.0L, 0.0L, 0.0L};
        for (double& v : x) {
            v = std::log(std::fabs(v)); // reuse the buffer for ln x / ln|y|
            s1 += v;
            for (int j = 0; j < 3; ++j) sq[j] += std::exp(q[j] * v);
        }
        const auto n = static_cast<long double>(x.size());
        const double mean = static_cast<double>(s1 / n);
        long double c2 = 0.0L, c3 = 0.0L, c4 = 0.0L;
        for (const double v : x) {
            const long double d = v - mean;
            const long double d2 = d * d;
            c2 += d2;
            c3 += d2 * d;
            c4 += d2 * d2;
        }
        const linml::LogMomentSet mc{mean, static_cast<double>(c2 / n),
                                     static_cast<double>(c3 / n), static_cast<double>(c4 / n)};
        const linml::LogMomentSet th =
            fam == Family::gml ? linml::gml_log_moments(linml::GmlParams(a, delta, mu))
                               : linml::gl_log_moments(linml::GlParams(a, delta, mu));

        const std::string base =
            std::string(linml::family_name(fam)) + "(alpha=" + std::to_string(a) + ")";
        expect_rel(out.log_moments, base + " log-mean", mc.mean, th.mean, 0.01);
        expect_rel(out.log_moments, base + " log-variance", mc.variance, th.variance, 0.01);
        expect_rel(out.log_moments, base + " log-mu3", mc.mu3, th.mu3, 0.03);
        expect_rel(out.log_moments, base + " log-mu4", mc.mu4, th.mu4, 0.03);

        bool heavy_cell_failed = false;
        for (int j = 0; j < 3; ++j) {
            const double emp = static_cast<double>(sq[j] / n);
            const double want =
                fam == Family::gml
                    ? linml::gml_fractional_moment(q[j], linml::GmlParams(a, delta, mu))
                    : linml::gl_abs_fractional_moment(q[j], linml::GlParams(a, delta, mu));
            std::ostringstream label;
            label << base << " E|X|^" << q[j];
            const std::size_t before = out.fractional.size();
            expect_rel(out.fractional, label.str(), emp, want, 0.01);
            if (j == 2 && out.fractional.size() > before) heavy_cell_failed = true;
        }
        // At q = 3 alpha / 4 the summand |X|^q has tail index 4/3 whatever
        // alpha is, so its sample mean converges at the stable n^{-1/4} rate:
        // the fluctuation scale at n = 1e7 is a few percent, above the 1%
        // gate. Such a miss reflects that rate, not a formula defect; the
        // finite-variance q = alpha/4 and alpha/2 columns are the sharp checks.
        if (heavy_cell_failed)
            out.fractional.push_back(base +
                                     " note: q = 3*alpha/4 sample mean has tail index 4/3; "
                                     "its n^{-1/4} fluctuation scale exceeds 1% at n = 1e7");
    };
    for (const double a : {0.5, 0.7, 0.95}) run_triple(Family::gml, a);
    for (const double a : {0.6, 1.2, 1.8}) run_triple(Family::gl, a);
    return out;
}

// Criterion 4, closed-form part: the delta = 1 special-case expressions for
// mean, variance and mu3 must agree with the general formulas to 1e-10.
// (The general mean at delta = 1 reduces to -ln(mu)/alpha - EulerGamma; the
// condensed fourth-moment expressions in circulation are inconsistent and are
// deliberately not part of this gate.)
void delta1_closed_forms(std::vector<std::string>& fails) {
    using linml::constants::euler_gamma;
    using linml::constants::pi;
    using linml::constants::zeta3;
    for (const double a : {0.3, 0.5, 0.7, 0.95}) {
        for (const double mu : {0.5, 1.0, 2.7}) {
            const linml::LogMomentSet m = linml::gml_log_moments(linml::GmlParams(a, 1.0, mu));
            std::ostringstream base;
            base << "gML(alpha=" << a << ", delta=1, mu=" << mu << ") ";
            expect_close(fails, base.str() + "mean", m.mean, -std::log(mu) / a - euler_gamma,
                         1e-10);
            expect_close(fails, base.str() + "variance", m.variance,
                         pi * pi * (2.0 - a * a) / (6.0 * a * a), 1e-10);
            expect_close(fails, base.str() + "mu3", m.mu3, -2.0 * zeta3, 1e-10);
        }
    }
    for (const double a : {0.6, 1.2, 1.8}) {
        for (const double mu : {0.5, 1.0, 2.7}) {
            const linml::LogMomentSet m = linml::gl_log_moments(linml::GlParams(a, 1.0, mu));
            std::ostringstream base;
            base << "gL(alpha=" << a << ", delta=1, mu=" << mu << ") ";
            expect_close(fails, base.str() + "mean", m.mean, -std::log(mu) / a - euler_gamma,
                         1e-10);
            expect_close(fails, base.str() + "variance", m.variance,
                         pi * pi * (a * a + 4.0) / (12.0 * a * a), 1e-10);
            expect_close(fails, base.str() + "mu3", m.mu3, -2.0 * zeta3, 1e-10);
        }
    }
}

// --------------------------------------- criterion 5: estimator round trips

std::vector<std::string> criterion5() {
    std::vector<std::string> fails;
    const auto label = [](const char* fitter, double a, double d, double mu, const char* p) {
        std::ostringstream os;
        os << fitter << " at (" << a << ", " << d << ", " << mu << ") " << p;
        return os.str();
    };

    // Two-parameter fitters: exact delta = 1 moments in, parameters out.
    for (const double mu : {0.5, 1.0, 2.0}) {
        for (const double a : {0.5, 0.7, 0.95}) {
            const linml::LogMomentSet m = linml::gml_log_moments(linml::GmlParams(a, 1.0, mu));
            const linml::FitResult f = linml::detail::fit_gml2_from_moments(m, 100, 0);
            expect_close(fails, label("fit_gml2", a, 1.0, mu, "alpha"), f.alpha_hat, a, 1e-6);
            expect_close(fails, label("fit_gml2", a, 1.0, mu, "mu"), f.mu_hat, mu, 1e-6);
        }
        for (const double a : {0.6, 1.2, 1.8}) {
            const linml::LogMomentSet m = linml::gl_log_moments(linml::GlParams(a, 1.0, mu));
            const linml::FitResult f = linml::detail::fit_gl2_from_moments(m, 100, 0);
            expect_close(fails, label("fit_gl2", a, 1.0, mu, "alpha"), f.alpha_hat, a, 1e-6);
            expect_close(fails, label("fit_gl2", a, 1.0, mu, "mu"), f.mu_hat, mu, 1e-6);
        }
    }

    // Three-parameter fitters on the study grid.
    for (const double a : {0.5, 0.7, 0.95}) {
        const linml::LogMomentSet m = linml::gml_log_moments(linml::GmlParams(a, 0.5, 1.0));
        const linml::FitResult f = linml::detail::fit_gml3_from_moments(m, 4);
        expect_close(fails, label("fit_gml3", a, 0.5, 1.0, "alpha"), f.alpha_hat, a, 1e-6);
        expect_close(fails, label("fit_gml3", a, 0.5, 1.0, "delta"), f.delta_hat, 0.5, 1e-6);
        expect_close(fails, label("fit_gml3", a, 0.5, 1.0, "mu"), f.mu_hat, 1.0, 1e-6);
    }
    for (const double a : {0.6, 1.2, 1.8}) {
        const linml::LogMomentSet m = linml::gl_log_moments(linml::GlParams(a, 0.5, 1.0));
        const linml::FitResult f = linml::detail::fit_gl3_from_moments(m, 4);
        expect_close(fails, label("fit_gl3", a, 0.5, 1.0, "alpha"), f.alpha_hat, a, 1e-6);
        expect_close(fails, label("fit_gl3", a, 0.5, 1.0, "delta"), f.delta_hat, 0.5, 1e-6);
        expect_close(fails, label("fit_gl3", a, 0.5, 1.0, "mu"), f.mu_hat, 1.0, 1e-6);
    }
    return fails;
}

// Criterion 6, closed-form part: at alpha = 1 the fractional moment reduces
// to the gamma-distribution value Gamma(delta + q) / (mu^q Gamma(delta)).
void alpha1_gamma_limit(std::vector<std::string>& fails) {
    for (const double d : {0.5, 1.0, 2.3}) {
        for (const double mu : {0.5, 1.0, 3.0}) {
            for (const double q : {0.1, 0.35, 0.8}) {
                const double got =
                    linml::gml_fractional_moment(q, linml::GmlParams(1.0, d, mu));
                const double want = std::exp(linml::log_gamma(d + q) - linml::log_gamma(d) -
                                             q * std::log(mu));
                std::ostringstream label;
                label << "alpha=1 fractional moment (delta=" << d << ", mu=" << mu
                      << ", q=" << q << ")";
                expect_rel(fails, label.str(), got, want, 1e-10);
            }
        }
    }
}

// -------------------------------------------- criterion 7: interval coverage

std::vector<std::string> criterion7() {
    std::vector<std::string> fails;
    const std::size_t reps = 1000, n = 10000;
    struct Case {
        Family fam;
        double alpha;
        std::uint64_t seed;
    };
    const Case cases[2] = {{Family::gml, 0.95, kSeedCoverage},
                           {Family::gl, 1.2, kSeedCoverage + 1}};
    for (const Case& c : cases) {
        std::size_t cover_alpha = 0, cover_mu = 0, fit_failures = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            linml::RngStream rng(c.seed, r);
            const std::vector<double> x =
                c.fam == Family::gml
                    ? linml::sample_gml(linml::GmlParams(c.alpha, 1.0, 1.0), n, rng)
                    : linml::sample_gl(linml::GlParams(c.alpha, 1.0, 1.0), n, rng);
            try {
                const linml::FitResult f =
                    c.fam == Family::gml ? linml::fit_gml2(x) : linml::fit_gl2(x);
                const auto [ci_alpha, ci_mu] = linml::asymptotic_ci(f, f.n, 0.95);
                if (ci_alpha.lower <= c.alpha && c.alpha <= ci_alpha.upper) ++cover_alpha;
                if (ci_mu.lower <= 1.0 && 1.0 <= ci_mu.upper) ++cover_mu;
            } catch (const std::exception&) {
                ++fit_failures; // counts as non-coverage
            }
        }
        const std::string base = std::string(linml::family_name(c.fam)) + "(" +
                                 std::to_string(c.alpha) + ", 1, 1)";
        const double ra = static_cast<double>(cover_alpha) / static_cast<double>(reps);
        const double rm = static_cast<double>(cover_mu) / static_cast<double>(reps);
        if (!(ra >= 0.93 && ra <= 0.97)) {
            std::ostringstream os;
            os << base << " alpha coverage " << ra << " outside [0.93, 0.97]";
            fails.push_back(os.str());
        }
        if (!(rm >= 0.93 && rm <= 0.97)) {
            std::ostringstream os;
            os << base << " mu coverage " << rm << " outside [0.93, 0.97]";
            fails.push_back(os.str());
        }
        if (fit_failures > 0) {
            std::ostringstream os;
            os << base << ": " << fit_failures << " replications failed to fit";
            fails.push_back(os.str());
        }
    }
    return fails;
}

// -------------------------------------- criterion 8: financial index series

struct Iv {
    double lo, hi;
};

void check_in(std::vector<std::string>& fails, const std::string& label, double got,
              const Iv& iv) {
    if (!(got >= iv.lo && got <= iv.hi)) {
        std::ostringstream os;
        os.precision(8);
        os << label << " = " << got << " outside reference interval (" << iv.lo << ", "
           << iv.hi << ")";
        fails.push_back(os.str());
    }
}

// Reference 95% interval estimates for the two daily index-return series the
// workflow was originally reported on. A user-supplied export of the same
// period must reproduce every point estimate inside its interval. The
// three-parameter gL fit's delta has no published interval, so only alpha and
// mu are gated there.
struct IndexReference {
    const char* label;
    Iv gml3_alpha, gml3_delta, gml3_mu;
    Iv gml2_alpha, gml2_mu;
    Iv gl3_alpha, gl3_mu;
    Iv gl2_alpha, gl2_mu;
};

const IndexReference kSpx = {"S&P 500",
                             {0.983, 1.003},
                             {1.117, 1.212},
                             {170.500, 188.255},
                             {1.038, 1.056},
                             {176.104, 191.190},
                             {1.881, 1.952},
                             {16255.82, 22675.40},
                             {2.364, 2.529},
                             {131357.3, 289028.0}};

const IndexReference kDji = {"Dow Jones",
                             {0.974, 0.995},
                             {1.153, 1.274},
                             {153.578, 173.375},
                             {1.036, 1.061},
                             {157.062, 174.868},
                             {1.803, 1.890},
                             {9685.0, 14605.0},
                             {2.158, 2.366},
                             {39507.0, 103585.0}};

void analyze_index(std::vector<std::string>& fails, const IndexReference& ref,
                   const char* path) {
    const std::string base = std::string(ref.label) + " ";
    try {
        const linml::OhlcData od = linml::load_ohlc_csv(path);
        const linml::ReturnSeries rs = linml::log_returns(od.records, "adj_close");
        const std::vector<double> neg = linml::negative_abs_returns(rs);

        const linml::FitResult gml3 = linml::fit_gml3(neg, 8);
        check_in(fails, base + "gML3 alpha", gml3.alpha_hat, ref.gml3_alpha);
        check_in(fails, base + "gML3 delta", gml3.delta_hat, ref.gml3_delta);
        check_in(fails, base + "gML3 mu", gml3.mu_hat, ref.gml3_mu);

        const linml::FitResult gml2 = linml::fit_gml2(neg);
        check_in(fails, base + "gML2 alpha", gml2.alpha_hat, ref.gml2_alpha);
        check_in(fails, base + "gML2 mu", gml2.mu_hat, ref.gml2_mu);

        const linml::FitResult gl3 = linml::fit_gl3(rs.values, 8);
        check_in(fails, base + "gL3 alpha", gl3.alpha_hat, ref.gl3_alpha);
        check_in(fails, base + "gL3 mu", gl3.mu_hat, ref.gl3_mu);

        const linml::FitResult gl2 = linml::fit_gl2(rs.values);
        check_in(fails, base + "gL2 alpha", gl2.alpha_hat, ref.gl2_alpha);
        check_in(fails, base + "gL2 mu", gl2.mu_hat, ref.gl2_mu);
    } catch (const std::exception& e) {
        fails.push_back(base + "pipeline failed: " + e.what());
    }
}

// ------------------------------------------------- criterion 9: determinism

std::vector<std::string> criterion9(const std::string& table1_csv,
                                    const std::string& table2_csv,
                                    const std::string& transforms_csv) {
    std::vector<std::string> fails;

    const std::string t1 = study_csv(linml::run_study(table_config(Family::gml, kSeedTable1, 1)));
    write_file("acceptance_table1_rerun.csv", t1);
    if (t1 != table1_csv)
        fails.push_back("gML study output differs between 2-thread and 1-thread runs");

    const std::string t2 = study_csv(linml::run_study(table_config(Family::gl, kSeedTable2, 1)));
    write_file("acceptance_table2_rerun.csv", t2);
    if (t2 != table2_csv)
        fails.push_back("gL study output differs between 2-thread and 1-thread runs");

    const std::string tr = transform_csv(run_transform_suite());
    write_file("acceptance_transforms_rerun.csv", tr);
    if (tr != transforms_csv) fails.push_back("transform-suite output differs between runs");

    return fails;
}

} // namespace

int main() {
    std::cout << "acceptance: seeded end-to-end checks (several minutes on one core)\n";
    std::cout.flush();
    Stopwatch watch;

    const std::vector<linml::StudyRow> rows1 =
        linml::run_study(table_config(Family::gml, kSeedTable1, 2));
    const std::string csv1 = study_csv(rows1);
    write_file("acceptance_table1.csv", csv1);
    report(1, "simulation study bias/CV on the gML grid", criterion1(rows1));
    watch.lap("criterion 1 (gML study)");

    const std::vector<linml::StudyRow> rows2 =
        linml::run_study(table_config(Family::gl, kSeedTable2, 2));
    const std::string csv2 = study_csv(rows2);
    write_file("acceptance_table2.csv", csv2);
    report(2, "simulation study bias/CV on the gL grid", criterion2(rows2));
    watch.lap("criterion 2 (gL study)");

    const std::vector<TransformRow> transforms = run_transform_suite();
    const std::string csv3 = transform_csv(transforms);
    write_file("acceptance_transforms.csv", csv3);
    report(3, "sampler Laplace-transform / characteristic-function identities",
           criterion3(transforms));
    watch.lap("criterion 3 (transform suite)");

    LargeSampleFails large = run_large_sample_checks();
    delta1_closed_forms(large.log_moments);
    report(4, "log-moment formulas vs large-sample Monte Carlo and delta=1 closed forms",
           large.log_moments);
    watch.lap("criteria 4+6 (large-sample Monte Carlo)");

    report(5, "exact-moment round trips through all four fitters", criterion5());
    watch.lap("criterion 5 (round trips)");

    alpha1_gamma_limit(large.fractional);
    report(6, "fractional-moment formulas vs Monte Carlo and the alpha=1 gamma limit",
           large.fractional);

    report(7, "asymptotic confidence-interval coverage", criterion7());
    watch.lap("criterion 7 (coverage)");

    const char* spx = std::getenv("LINML_SPX_CSV");
    const char* dji = std::getenv("LINML_DJI_CSV");
    if (spx == nullptr && dji == nullptr) {
        report_skip(8, "financial index-return analysis",
                    "not runnable without data: set LINML_SPX_CSV and/or LINML_DJI_CSV to "
                    "historical Yahoo OHLC exports");
    } else {
        std::vector<std::string> fails;
        if (spx != nullptr) analyze_index(fails, kSpx, spx);
        if (dji != nullptr) analyze_index(fails, kDji, dji);
        report(8, "financial index-return analysis", fails);
        watch.lap("criterion 8 (index analysis)");
    }

    report(9, "identical output files across worker counts", criterion9(csv1, csv2, csv3));
    watch.lap("criterion 9 (determinism reruns)");

    if (g_failed == 0)
        std::cout << "acceptance: all runnable criteria passed\n";
    else
        std::cout << "acceptance: " << g_failed << " criterion(s) failed\n";
    return g_failed;
}
