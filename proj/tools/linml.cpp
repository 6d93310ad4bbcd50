// Command-line front end for the gML/gL statistical library: sampling,
// fitting, confidence intervals, the simulation study, financial return
// analysis, and kernel density export.
//
// Conventions: data goes to files or standard output, diagnostics to the
// error stream; every randomized subcommand takes --seed (or generates one
// and prints it, so reported numbers are always reproducible); exit code 0
// iff no error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "linml/linml.hpp"

using json = nlohmann::ordered_json;

namespace {

std::vector<double> read_numbers(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw std::runtime_error("cannot open input file " + path);
        in = &file;
    }
    std::vector<double> out;
    double v = 0.0;
    while (*in >> v) out.push_back(v);
    if (!in->eof() && in->fail()) throw std::runtime_error("non-numeric content in " + path);
    if (out.empty()) throw std::runtime_error("no numeric values in " + path);
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out = open_output(path);
    out << text;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cerr << "seed (generated): " << seed << "\n";
    return seed;
}

linml::Family parse_family(const std::string& name) {
    if (name == "gml" || name == "gML") return linml::Family::gml;
    if (name == "gl" || name == "gL") return linml::Family::gl;
    throw std::runtime_error("unknown family '" + name + "' (expected gml or gl)");
}

// Out-of-range fitted parameters are preserved, not clamped; they signal that
// the family cannot match the data's log-moments.
std::vector<std::string> fit_warnings(const linml::FitResult& f) {
    std::vector<std::string> w;
    std::ostringstream os;
    os.precision(6);
    if (f.family == linml::Family::gml && f.alpha_hat > 1.0) {
        os << "alpha estimate " << f.alpha_hat
           << " exceeds 1; the gML family requires alpha in (0, 1] (model inadequacy)";
        w.push_back(os.str());
    } else if (f.family == linml::Family::gl && f.alpha_hat > 2.0) {
        os << "alpha estimate " << f.alpha_hat
           << " exceeds 2; the gL family requires alpha in (0, 2] (model inadequacy)";
        w.push_back(os.str());
    }
    if (!f.converged) w.emplace_back("optimizer did not meet its convergence tolerance");
    if (f.boundary) w.emplace_back("estimate pinned to the optimization box boundary");
    return w;
}

json fit_to_json(const linml::FitResult& f) {
    json j;
    j["family"] = linml::family_name(f.family);
    j["nparams"] = f.nparams;
    j["alpha"] = f.alpha_hat;
    j["delta"] = f.delta_hat;
    j["mu"] = f.mu_hat;
    j["objective"] = f.objective;
    j["converged"] = f.converged;
    j["boundary"] = f.boundary;
    j["n"] = f.n;
    j["dropped"] = f.dropped;
    j["warnings"] = fit_warnings(f);
    return j;
}

json interval_to_json(const linml::IntervalEstimate& ie) {
    json j;
    j["point"] = ie.point;
    j["lower"] = ie.lower;
    j["upper"] = ie.upper;
    return j;
}

linml::FitResult run_fit(linml::Family family, int nparams, const std::vector<double>& data,
                         int multistart) {
    if (family == linml::Family::gml)
        return nparams == 2 ? linml::fit_gml2(data) : linml::fit_gml3(data, multistart);
    return nparams == 2 ? linml::fit_gl2(data) : linml::fit_gl3(data, multistart);
}

void print_summary(const std::vector<double>& values) {
    long double s = 0.0L;
    double mn = values.front(), mx = values.front();
    for (double v : values) {
        s += v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    const double mean = static_cast<double>(s / static_cast<long double>(values.size()));
    long double ss = 0.0L;
    for (double v : values) {
        const long double d = v - mean;
        ss += d * d;
    }
    const double sd = values.size() > 1
                          ? std::sqrt(static_cast<double>(
                                ss / static_cast<long double>(values.size() - 1)))
                          : 0.0;
    std::cerr << "n=" << values.size() << " mean=" << mean << " sd=" << sd << " min=" << mn
              << " max=" << mx << "\n";
}

// ---------------------------------------------------------------- sample --

struct SampleArgs {
    std::string family;
    double alpha = 0.5, delta = 1.0, mu = 1.0;
    std::size_t n = 1000;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
};

int cmd_sample(const SampleArgs& a) {
    const linml::Family family = parse_family(a.family);
    linml::RngStream rng(resolve_seed(a.seed));
    std::vector<double> draws;
    if (family == linml::Family::gml)
        draws = linml::sample_gml(linml::GmlParams(a.alpha, a.delta, a.mu), a.n, rng);
    else
        draws = linml::sample_gl(linml::GlParams(a.alpha, a.delta, a.mu), a.n, rng);
    std::ostringstream os;
    os.precision(17);
    for (double v : draws) os << v << "\n";
    write_text(a.out, os.str());
    print_summary(draws);
    return 0;
}

// ------------------------------------------------------------------- fit --

struct FitArgs {
    std::string family;
    int nparams = 3;
    std::string input;
    bool take_abs = false;
    int multistart = 0;
    std::string out = "-";
};

int cmd_fit(const FitArgs& a) {
    const linml::Family family = parse_family(a.family);
    std::vector<double> data = read_numbers(a.input);
    if (a.take_abs)
        for (double& v : data) v = std::fabs(v);
    const linml::FitResult f = run_fit(family, a.nparams, data, a.multistart);
    for (const std::string& w : fit_warnings(f)) std::cerr << "warning: " << w << "\n";
    write_text(a.out, fit_to_json(f).dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------------- ci --

struct CiArgs {
    std::string family;
    int nparams = 2;
    std::string input;
    bool take_abs = false;
    int multistart = 0;
    std::string method = "asymptotic";
    double level = 0.95;
    std::size_t replicates = 1000;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string out = "-";
};

int cmd_ci(const CiArgs& a) {
    const linml::Family family = parse_family(a.family);
    std::vector<double> data = read_numbers(a.input);
    if (a.take_abs)
        for (double& v : data) v = std::fabs(v);

    json j;
    j["family"] = a.family;
    j["nparams"] = a.nparams;
    j["method"] = a.method;
    j["level"] = a.level;

    if (a.method == "asymptotic") {
        if (a.nparams != 2)
            throw std::runtime_error(
                "asymptotic intervals are derived for the two-parameter fits only; "
                "use --method bootstrap for --nparams 3");
        const linml::FitResult f = run_fit(family, 2, data, 0);
        for (const std::string& w : fit_warnings(f)) std::cerr << "warning: " << w << "\n";
        const auto [ci_alpha, ci_mu] = linml::asymptotic_ci(f, f.n, a.level);
        j["fit"] = fit_to_json(f);
        j["alpha"] = interval_to_json(ci_alpha);
        j["mu"] = interval_to_json(ci_mu);
    } else if (a.method == "bootstrap") {
        linml::BootstrapConfig cfg;
        cfg.replicates = a.replicates;
        cfg.level = a.level;
        cfg.seed = resolve_seed(a.seed);
        cfg.threads = a.threads;
        const auto fitter = [&](const std::vector<double>& d) {
            return run_fit(family, a.nparams, d, a.multistart);
        };
        const linml::FitResult f = fitter(data);
        for (const std::string& w : fit_warnings(f)) std::cerr << "warning: " << w << "\n";
        const linml::BootstrapResult br = linml::bootstrap_ci(data, fitter, cfg);
        j["fit"] = fit_to_json(f);
        j["seed"] = cfg.seed;
        j["alpha"] = interval_to_json(br.alpha);
        j["alpha"]["degenerate"] = br.alpha_degenerate;
        if (a.nparams == 3) {
            j["delta"] = interval_to_json(br.delta);
            j["delta"]["degenerate"] = br.delta_degenerate;
        }
        j["mu"] = interval_to_json(br.mu);
        j["mu"]["degenerate"] = br.mu_degenerate;
        j["replicates"] = a.replicates;
        j["failures"] = br.failures;
        j["used"] = br.used;
    } else {
        throw std::runtime_error("unknown method '" + a.method +
                                 "' (expected asymptotic or bootstrap)");
    }
    write_text(a.out, j.dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------- mc-study --

struct McArgs {
    std::string preset;
    std::string config;
    std::optional<std::size_t> replications;
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> sample_sizes;
    int threads = 1;
    int multistart = 0;
    std::string out = "-";
};

linml::StudyConfig preset_config(const std::string& name) {
    linml::StudyConfig cfg;
    if (name == "table1") {
        cfg.family = linml::Family::gml;
        cfg.grid = {{0.5, 0.5, 1.0}, {0.7, 0.5, 1.0}, {0.95, 0.5, 1.0}};
    } else if (name == "table2") {
        cfg.family = linml::Family::gl;
        cfg.grid = {{0.6, 0.5, 1.0}, {1.2, 0.5, 1.0}, {1.8, 0.5, 1.0}};
    } else {
        throw std::runtime_error("unknown preset '" + name + "' (expected table1 or table2)");
    }
    return cfg;
}

linml::StudyConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json j;
    in >> j;
    linml::StudyConfig cfg;
    cfg.family = parse_family(j.at("family").get<std::string>());
    for (const auto& triple : j.at("grid"))
        cfg.grid.push_back({triple.at(0).get<double>(), triple.at(1).get<double>(),
                            triple.at(2).get<double>()});
    if (j.contains("sample_sizes"))
        cfg.sample_sizes = j["sample_sizes"].get<std::vector<std::size_t>>();
    if (j.contains("replications")) cfg.replications = j["replications"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("multistart")) cfg.multistart = j["multistart"].get<int>();
    return cfg;
}

int cmd_mc_study(const McArgs& a) {
    if (a.preset.empty() == a.config.empty())
        throw std::runtime_error("mc-study needs exactly one of --preset or --config");
    linml::StudyConfig cfg = a.preset.empty() ? config_from_file(a.config)
                                              : preset_config(a.preset);
    if (a.replications) cfg.replications = *a.replications;
    if (!a.sample_sizes.empty()) cfg.sample_sizes = a.sample_sizes;
    cfg.seed = a.seed ? *a.seed : (a.config.empty() ? resolve_seed(a.seed) : cfg.seed);
    cfg.threads = a.threads;
    if (a.multistart > 0) cfg.multistart = a.multistart;

    const std::vector<linml::StudyRow> rows = linml::run_study(cfg);
    std::ostringstream os;
    linml::write_study_csv(os, rows);
    write_text(a.out, os.str());
    for (const linml::StudyRow& r : rows)
        if (r.fail_rate > 0.0)
            std::cerr << "note: cell (" << linml::family_name(r.family) << ", alpha=" << r.alpha
                      << ", n=" << r.n << ") fail rate " << r.fail_rate << "\n";
    return 0;
}

// ------------------------------------------------------------------- kde --

struct KdeArgs {
    std::string input;
    double bandwidth = 0.001;
    int points = 512;
    std::optional<double> lo, hi;
    bool no_reflect = false;
    std::string out = "-";
};

int cmd_kde(const KdeArgs& a) {
    const std::vector<double> data = read_numbers(a.input);
    const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
    double lo = a.lo ? *a.lo : (a.no_reflect ? *mn_it : 0.0);
    double hi = a.hi ? *a.hi : *mx_it;
    if (!(hi > lo)) throw std::runtime_error("kde: empty evaluation range");
    std::vector<double> grid(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
    const std::vector<double> density =
        a.no_reflect ? linml::kde_gaussian(data, a.bandwidth, grid)
                     : linml::kde_boundary_corrected(data, a.bandwidth, grid);
    std::ostringstream os;
    os.precision(12);
    os << "x,density\n";
    for (std::size_t i = 0; i < grid.size(); ++i) os << grid[i] << ',' << density[i] << '\n';
    write_text(a.out, os.str());
    return 0;
}

// --------------------------------------------------------------- analyze --

struct AnalyzeArgs {
    std::string input;
    std::string family;
    int nparams = 3;
    std::string column = "adj_close";
    std::string side; // negative-abs | full; default depends on family
    std::size_t replicates = 1000;
    double level = 0.95;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    int multistart = 0;
    int bins = 150;
    double bandwidth = 0.001;
    std::string out_prefix;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const linml::Family family = parse_family(a.family);
    std::string side = a.side;
    if (side.empty()) side = family == linml::Family::gml ? "negative-abs" : "full";
    if (side != "negative-abs" && side != "full")
        throw std::runtime_error("unknown side '" + side + "' (expected negative-abs or full)");

    const linml::OhlcData od = linml::load_ohlc_csv(a.input);
    std::cerr << "records: " << od.records.size() << " (dropped rows: " << od.dropped_rows
              << ")\n";
    const linml::ReturnSeries rs = linml::log_returns(od.records, a.column);
    const std::vector<double> data =
        side == "negative-abs" ? linml::negative_abs_returns(rs) : rs.values;
    std::cerr << "observations after '" << side << "' transform: " << data.size() << "\n";

    const auto fitter = [&](const std::vector<double>& d) {
        return run_fit(family, a.nparams, d, a.multistart);
    };
    const linml::FitResult fit = fitter(data);
    for (const std::string& w : fit_warnings(fit)) std::cerr << "warning: " << w << "\n";

    linml::BootstrapConfig cfg;
    cfg.replicates = a.replicates;
    cfg.level = a.level;
    cfg.seed = resolve_seed(a.seed);
    cfg.threads = a.threads;
    const linml::BootstrapResult br = linml::bootstrap_ci(data, fitter, cfg);

    json j = fit_to_json(fit);
    j["returns"] = rs.values.size();
    j["side"] = side;
    j["column"] = a.column;
    j["seed"] = cfg.seed;
    j["level"] = a.level;
    j["bootstrap_replicates"] = a.replicates;
    j["bootstrap_failures"] = br.failures;
    j["ci"] = json::object();
    j["ci"]["alpha"] = interval_to_json(br.alpha);
    j["ci"]["alpha"]["degenerate"] = br.alpha_degenerate;
    if (a.nparams == 3) {
        j["ci"]["delta"] = interval_to_json(br.delta);
        j["ci"]["delta"]["degenerate"] = br.delta_degenerate;
        if (br.delta_degenerate)
            std::cerr << "note: delta refit to the same value in every bootstrap sample; "
                         "its interval is degenerate\n";
    }
    j["ci"]["mu"] = interval_to_json(br.mu);
    j["ci"]["mu"]["degenerate"] = br.mu_degenerate;

    // Histogram of the observed data.
    {
        std::ostringstream os;
        os.precision(12);
        os << "x,density\n";
        for (const auto& [x, d] : linml::histogram_density(data, a.bins))
            os << x << ',' << d << '\n';
        write_text(a.out_prefix + "_hist.csv", os.str());
    }

    // Overlay: a 2n-sized sample simulated from the fitted model, exported as
    // a kernel density estimate. Skipped (with a recorded warning) when the
    // fitted parameters fall outside the family's sampling domain.
    bool overlay = false;
    try {
        const std::size_t n2 = 2 * data.size();
        linml::RngStream rng(cfg.seed, 0xfade);
        std::vector<double> sim;
        if (family == linml::Family::gml)
            sim = linml::sample_gml(linml::GmlParams(fit.alpha_hat, fit.delta_hat, fit.mu_hat),
                                    n2, rng);
        else
            sim = linml::sample_gl(linml::GlParams(fit.alpha_hat, fit.delta_hat, fit.mu_hat), n2,
                                   rng);
        const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
        const double lo = side == "negative-abs" ? 0.0 : *mn_it;
        const double hi = *mx_it;
        std::vector<double> grid(512);
        for (int i = 0; i < 512; ++i)
            grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / 511.0;
        const std::vector<double> density =
            side == "negative-abs"
                ? linml::kde_boundary_corrected(sim, a.bandwidth, grid)
                : linml::kde_gaussian(sim, a.bandwidth, grid);
        std::ostringstream os;
        os.precision(12);
        os << "x,density\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << grid[i] << ',' << density[i] << '\n';
        write_text(a.out_prefix + "_kde.csv", os.str());
        overlay = true;
    } catch (const std::invalid_argument& e) {
        std::cerr << "warning: simulated overlay skipped, fitted parameters invalid for "
                     "sampling ("
                  << e.what() << ")\n";
        j["warnings"].push_back(std::string("simulated overlay skipped: ") + e.what());
    }
    j["overlay"] = overlay;

    write_text(a.out_prefix + "_fit.json", j.dump(2) + "\n");
    std::cerr << "wrote " << a.out_prefix << "_fit.json, " << a.out_prefix << "_hist.csv"
              << (overlay ? ", " + a.out_prefix + "_kde.csv" : "") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and inference for generalized Mittag-Leffler (gML) and "
                 "generalized Linnik (gL) distributions"};
    app.require_subcommand(1);

    SampleArgs sa;
    CLI::App* sample = app.add_subcommand("sample", "Draw random variates from a family");
    sample->add_option("--family", sa.family, "gml or gl")->required();
    sample->add_option("--alpha", sa.alpha, "stability index")->required();
    sample->add_option("--delta", sa.delta, "shape parameter");
    sample->add_option("--mu", sa.mu, "rate parameter");
    sample->add_option("--n", sa.n, "number of draws")->required();
    sample->add_option("--seed", sa.seed, "RNG seed (generated and printed if omitted)");
    sample->add_option("--out", sa.out, "output file, one draw per line (- for stdout)");

    FitArgs fa;
    CLI::App* fit = app.add_subcommand("fit", "Method-of-log-moments parameter fit");
    fit->add_option("--family", fa.family, "gml or gl")->required();
    fit->add_option("--nparams", fa.nparams, "2 (delta fixed at 1) or 3")
        ->check(CLI::IsMember({2, 3}));
    fit->add_option("--input", fa.input, "numeric input file (- for stdin)")->required();
    fit->add_flag("--take-abs", fa.take_abs, "apply |x| to the data before fitting");
    fit->add_option("--multistart", fa.multistart, "extra deterministic optimizer starts");
    fit->add_option("--out", fa.out, "JSON output path (- for stdout)");

    CiArgs ca;
    CLI::App* ci = app.add_subcommand("ci", "Confidence intervals for fitted parameters");
    ci->add_option("--family", ca.family, "gml or gl")->required();
    ci->add_option("--nparams", ca.nparams, "2 or 3")->check(CLI::IsMember({2, 3}));
    ci->add_option("--input", ca.input, "numeric input file (- for stdin)")->required();
    ci->add_flag("--take-abs", ca.take_abs, "apply |x| to the data before fitting");
    ci->add_option("--multistart", ca.multistart, "extra optimizer starts (3-parameter fits)");
    ci->add_option("--method", ca.method, "asymptotic or bootstrap");
    ci->add_option("--level", ca.level, "confidence level in (0,1)");
    ci->add_option("--replicates,-B", ca.replicates, "bootstrap replicates");
    ci->add_option("--seed", ca.seed, "bootstrap seed (generated and printed if omitted)");
    ci->add_option("--threads", ca.threads, "bootstrap worker threads");
    ci->add_option("--out", ca.out, "JSON output path (- for stdout)");

    McArgs ma;
    CLI::App* mc = app.add_subcommand("mc-study", "Bias/CV simulation study");
    mc->add_option("--preset", ma.preset, "table1 (gML grid) or table2 (gL grid)");
    mc->add_option("--config", ma.config, "JSON study configuration file");
    mc->add_option("--replications", ma.replications, "replications per cell");
    mc->add_option("--sample-sizes", ma.sample_sizes, "sample sizes (overrides config)");
    mc->add_option("--seed", ma.seed, "study seed");
    mc->add_option("--threads", ma.threads, "worker threads");
    mc->add_option("--multistart", ma.multistart, "extra optimizer starts per fit");
    mc->add_option("--out", ma.out, "CSV output path (- for stdout)");

    KdeArgs ka;
    CLI::App* kde = app.add_subcommand("kde", "Kernel density estimate export");
    kde->add_option("--input", ka.input, "numeric input file (- for stdin)")->required();
    kde->add_option("--bandwidth", ka.bandwidth, "Gaussian kernel bandwidth");
    kde->add_option("--points", ka.points, "grid size")->check(CLI::PositiveNumber);
    kde->add_option("--min", ka.lo, "grid lower bound");
    kde->add_option("--max", ka.hi, "grid upper bound");
    kde->add_flag("--no-reflect", ka.no_reflect,
                  "plain KDE instead of reflection boundary correction");
    kde->add_option("--out", ka.out, "CSV output path (- for stdout)");

    AnalyzeArgs aa;
    CLI::App* an = app.add_subcommand(
        "analyze", "OHLC workflow: returns, fit, bootstrap CI, histogram and overlay KDE");
    an->add_option("--input", aa.input, "OHLC CSV file")->required();
    an->add_option("--family", aa.family, "gml or gl")->required();
    an->add_option("--nparams", aa.nparams, "2 or 3")->check(CLI::IsMember({2, 3}));
    an->add_option("--column", aa.column, "price column to difference (default adj_close)");
    an->add_option("--side", aa.side,
                   "negative-abs (|negative returns|, gml default) or full (gl default)");
    an->add_option("--replicates,-B", aa.replicates, "bootstrap replicates");
    an->add_option("--level", aa.level, "confidence level");
    an->add_option("--seed", aa.seed, "seed (generated and printed if omitted)");
    an->add_option("--threads", aa.threads, "bootstrap worker threads");
    an->add_option("--multistart", aa.multistart, "extra optimizer starts");
    an->add_option("--bins", aa.bins, "histogram bins")->check(CLI::PositiveNumber);
    an->add_option("--bandwidth", aa.bandwidth, "overlay KDE bandwidth");
    an->add_option("--out-prefix", aa.out_prefix, "prefix for _fit.json/_hist.csv/_kde.csv")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return cmd_sample(sa);
        if (*fit) return cmd_fit(fa);
        if (*ci) return cmd_ci(ca);
        if (*mc) return cmd_mc_study(ma);
        if (*kde) return cmd_kde(ka);
        if (*an) return cmd_analyze(aa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
