#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linml/constants.hpp"

// Financial data ingestion and transformation: OHLC CSV parsing, log returns,
// negative-return extraction, and kernel density estimation with reflection
// boundary correction for positive-support data.

namespace linml {

struct OhlcRecord {
    std::string date; // normalized ISO YYYY-MM-DD
    double open = 0.0, high = 0.0, low = 0.0, close = 0.0, adj_close = 0.0;
    double volume = 0.0;
};

struct OhlcData {
    std::vector<OhlcRecord> records;
    std::size_t dropped_rows = 0; // rows with missing/null prices
};

struct ReturnSeries {
    std::vector<std::string> dates; // date of the later observation of each pair
    std::vector<double> values;     // ln(p[i+1] / p[i])
    std::string source_column;
};

namespace detail {

inline std::string normalize_header_cell(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == ' ' || c == '.' || c == '_' || c == '-' || c == '"' || c == '\r') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

inline bool is_missing_cell(const std::string& s) {
    if (s.empty()) return true;
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t.empty() || t == "null" || t == "na" || t == "nan" || t == "n/a";
}

// Accepts ISO-8601 (YYYY-MM-DD) and MM/DD/YYYY; returns normalized ISO form.
inline std::string parse_date(const std::string& s, std::size_t row) {
    int y = 0, m = 0, d = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (s.find('-') != std::string::npos) {
        is >> y >> c1 >> m >> c2 >> d;
        if (!is || c1 != '-' || c2 != '-') y = 0;
    } else if (s.find('/') != std::string::npos) {
        is >> m >> c1 >> d >> c2 >> y;
        if (!is || c1 != '/' || c2 != '/') y = 0;
    }
    if (y < 1000 || m < 1 || m > 12 || d < 1 || d > 31) {
        std::ostringstream msg;
        msg << "load_ohlc_csv: unparseable date '" << s << "' at data row " << row;
        throw std::runtime_error(msg.str());
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return std::string(buf);
}

inline double parse_price(const std::string& s, const char* column, std::size_t row) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size() || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "load_ohlc_csv: unparseable " << column << " value '" << s << "' at data row "
            << row;
        throw std::runtime_error(msg.str());
    }
    return v;
}

} // namespace detail

/// Parse an OHLC CSV with a header row naming date, open, high, low, close,
/// adj close (any of `adj.close` / `adj close` / `adj_close` / `adjclose`,
/// case-insensitive) and volume, in any column order. Rows with missing or
/// null price cells are dropped and counted; unparseable cells and
/// non-increasing dates are errors naming the row.
inline OhlcData load_ohlc_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_ohlc_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_ohlc_csv: empty file " + path);

    const std::vector<std::string> header = detail::split_csv_line(line);
    int idx_date = -1, idx_open = -1, idx_high = -1, idx_low = -1, idx_close = -1,
        idx_adj = -1, idx_vol = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = detail::normalize_header_cell(header[i]);
        const int ii = static_cast<int>(i);
        if (h == "date")
            idx_date = ii;
        else if (h == "open")
            idx_open = ii;
        else if (h == "high")
            idx_high = ii;
        else if (h == "low")
            idx_low = ii;
        else if (h == "close")
            idx_close = ii;
        else if (h == "adjclose")
            idx_adj = ii;
        else if (h == "volume")
            idx_vol = ii;
    }
    if (idx_date < 0 || idx_open < 0 || idx_high < 0 || idx_low < 0 || idx_close < 0 ||
        idx_adj < 0 || idx_vol < 0)
        throw std::runtime_error(
            "load_ohlc_csv: header must name date, open, high, low, close, adj close, volume");

    OhlcData out;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() < header.size()) {
            std::ostringstream msg;
            msg << "load_ohlc_csv: row " << row << " has " << cells.size() << " cells, expected "
                << header.size();
            throw std::runtime_error(msg.str());
        }
        const bool missing = detail::is_missing_cell(cells[idx_open]) ||
                             detail::is_missing_cell(cells[idx_high]) ||
                             detail::is_missing_cell(cells[idx_low]) ||
                             detail::is_missing_cell(cells[idx_close]) ||
                             detail::is_missing_cell(cells[idx_adj]);
        if (missing) {
            ++out.dropped_rows;
            continue;
        }
        OhlcRecord rec;
        rec.date = detail::parse_date(cells[idx_date], row);
        rec.open = detail::parse_price(cells[idx_open], "open", row);
        rec.high = detail::parse_price(cells[idx_high], "high", row);
        rec.low = detail::parse_price(cells[idx_low], "low", row);
        rec.close = detail::parse_price(cells[idx_close], "close", row);
        rec.adj_close = detail::parse_price(cells[idx_adj], "adj close", row);
        rec.volume = detail::is_missing_cell(cells[idx_vol])
                         ? 0.0
                         : detail::parse_price(cells[idx_vol], "volume", row);
        if (!(rec.open > 0.0 && rec.high > 0.0 && rec.low > 0.0 && rec.close > 0.0 &&
              rec.adj_close > 0.0)) {
            ++out.dropped_rows; // non-positive price treated as missing data
            continue;
        }
        if (!out.records.empty() && !(out.records.back().date < rec.date)) {
            std::ostringstream msg;
            msg << "load_ohlc_csv: dates not strictly increasing at data row " << row << " ("
                << out.records.back().date << " then " << rec.date << ")";
            throw std::runtime_error(msg.str());
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

/// Log returns of a positive price sequence: values[i] = ln(p[i+1]/p[i]).
inline ReturnSeries log_returns(const std::vector<double>& prices) {
    if (prices.size() < 2) throw std::invalid_argument("log_returns: need at least 2 prices");
    ReturnSeries out;
    out.values.reserve(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !(prices[i + 1] > 0.0))
            throw std::domain_error("log_returns: non-positive price");
        out.values.push_back(std::log(prices[i + 1] / prices[i]));
    }
    return out;
}

/// Log returns of a chosen price column of parsed OHLC records, carrying the
/// date of the later observation of each pair.
inline ReturnSeries log_returns(const std::vector<OhlcRecord>& records,
                                const std::string& column) {
    std::vector<double> prices;
    prices.reserve(records.size());
    const std::string key = detail::normalize_header_cell(column);
    for (const OhlcRecord& r : records) {
        if (key == "adjclose")
            prices.push_back(r.adj_close);
        else if (key == "close")
            prices.push_back(r.close);
        else if (key == "open")
            prices.push_back(r.open);
        else if (key == "high")
            prices.push_back(r.high);
        else if (key == "low")
            prices.push_back(r.low);
        else
            throw std::invalid_argument("log_returns: unknown price column '" + column + "'");
    }
    ReturnSeries out = log_returns(prices);
    out.source_column = column;
    out.dates.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) out.dates.push_back(records[i].date);
    return out;
}

/// Absolute values of the strictly negative returns, in order; zeros and
/// positives are dropped. Errors when nothing remains.
inline std::vector<double> negative_abs_returns(const ReturnSeries& r) {
    std::vector<double> out;
    out.reserve(r.values.size());
    for (double v : r.values)
        if (v < 0.0) out.push_back(-v);
    if (out.empty())
        throw std::runtime_error("negative_abs_returns: series contains no negative returns");
    return out;
}

namespace detail {

inline double gaussian_kernel(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * constants::pi);
}

} // namespace detail

/// Gaussian kernel density estimate with reflection about 0 (boundary
/// correction for positive-support data):
///   f_hat(x) = (1/(n h)) sum_i [K((x - x_i)/h) + K((x + x_i)/h)],  x >= 0.
inline std::vector<double> kde_boundary_corrected(const std::vector<double>& data,
                                                  double bandwidth,
                                                  const std::vector<double>& grid) {
    if (data.empty()) throw std::invalid_argument("kde_boundary_corrected: empty data");
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("kde_boundary_corrected: bandwidth must be positive");
    for (double g : grid)
        if (!(g >= 0.0))
            throw std::invalid_argument("kde_boundary_corrected: grid points must be >= 0");
    std::vector<double> out(grid.size(), 0.0);
    const double inv_nh = 1.0 / (static_cast<double>(data.size()) * bandwidth);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double s = 0.0;
        for (double xi : data) {
            const double u1 = (grid[j] - xi) / bandwidth;
            const double u2 = (grid[j] + xi) / bandwidth;
            if (std::fabs(u1) < 39.0) s += detail::gaussian_kernel(u1);
            if (std::fabs(u2) < 39.0) s += detail::gaussian_kernel(u2);
        }
        out[j] = s * inv_nh;
    }
    return out;
}

/// Plain Gaussian kernel density estimate (no boundary correction), for
/// real-line data.
inline std::vector<double> kde_gaussian(const std::vector<double>& data, double bandwidth,
                                        const std::vector<double>& grid) {
    if (data.empty()) throw std::invalid_argument("kde_gaussian: empty data");
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("kde_gaussian: bandwidth must be positive");
    std::vector<double> out(grid.size(), 0.0);
    const double inv_nh = 1.0 / (static_cast<double>(data.size()) * bandwidth);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double s = 0.0;
        for (double xi : data) {
            const double u = (grid[j] - xi) / bandwidth;
            if (std::fabs(u) < 39.0) s += detail::gaussian_kernel(u);
        }
        out[j] = s * inv_nh;
    }
    return out;
}

/// Equal-width histogram normalized to integrate to 1; returns (bin center,
/// density) pairs.
inline std::vector<std::pair<double, double>> histogram_density(const std::vector<double>& data,
                                                                int bins) {
    if (data.empty()) throw std::invalid_argument("histogram_density: empty data");
    if (bins < 1) throw std::invalid_argument("histogram_density: need at least 1 bin");
    const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) { // degenerate: widen symmetrically
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : data) {
        auto k = static_cast<std::size_t>((v - lo) / width);
        if (k >= counts.size()) k = counts.size() - 1; // v == hi
        ++counts[k];
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(counts.size());
    const double denom = static_cast<double>(data.size()) * width;
    for (std::size_t k = 0; k < counts.size(); ++k)
        out.emplace_back(lo + (static_cast<double>(k) + 0.5) * width,
                         static_cast<double>(counts[k]) / denom);
    return out;
}

} // namespace linml
