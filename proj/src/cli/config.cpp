#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qhp/cli.hpp"

namespace qhp::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("config key '" + std::string(key) + "': not a number: " +
                                    std::string(text));
    }
    return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("config key '" + std::string(key) + "': not an integer: " +
                                    std::string(text));
    }
    return v;
}

unsigned to_unsigned(const char* name, long long v) {
    if (v < 0) throw std::invalid_argument(std::string(name) + " must be non-negative");
    return static_cast<unsigned>(v);
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (precision < 6 || precision > 17) {
        throw std::invalid_argument("precision must be in [6, 17]");
    }
    if (!(d_threshold > 0.0)) throw std::invalid_argument("d-threshold must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max-iter must be at least 1");
    if (n_points && *n_points < oracle::RadialGrid::kMinPoints) {
        throw std::invalid_argument("points must be at least 1000");
    }
}

ConsistencyThresholds RunConfig::thresholds() const {
    ConsistencyThresholds t;
    t.d_small = d_threshold;
    return t;
}

oracle::SolverOptions RunConfig::solver_options() const {
    oracle::SolverOptions o;
    o.max_iterations = max_iterations;
    return o;
}

oracle::RadialGrid RunConfig::grid() const {
    oracle::RadialGrid g{};
    if (!(r_min && r_max && n_points)) g = oracle::default_grid(params, qn);
    if (r_min) g.r_min = *r_min;
    if (r_max) g.r_max = *r_max;
    if (n_points) g.n_points = *n_points;
    g.validate();
    return g;
}

void ConfigLayer::apply_to(RunConfig& c) const {
    if (mu) c.params.mu = *mu;
    if (delta) c.params.delta = *delta;
    if (a) c.params.a_coef = *a;
    if (b) c.params.b_coef = *b;
    if (lambda) c.lambda = *lambda;
    if (r_min) c.r_min = *r_min;
    if (r_max) c.r_max = *r_max;
    if (d_threshold) c.d_threshold = *d_threshold;
    if (n) c.qn.n = to_unsigned("n", *n);
    if (ell) c.qn.ell = to_unsigned("ell", *ell);
    if (points) {
        if (*points < 0) throw std::invalid_argument("points must be non-negative");
        c.n_points = static_cast<std::size_t>(*points);
    }
    if (precision) c.precision = static_cast<int>(*precision);
    if (max_iterations) c.max_iterations = static_cast<int>(*max_iterations);
    if (ell_max) c.ell_max = to_unsigned("ell-max", *ell_max);
    if (format) {
        if (*format == "csv") {
            c.format = Format::csv;
        } else if (*format == "json") {
            c.format = Format::json;
        } else {
            throw std::invalid_argument("format must be csv or json, got '" + *format + "'");
        }
    }
}

ConfigLayer parse_config_text(std::string_view text) {
    ConfigLayer layer;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');

        if (key == "mu") layer.mu = parse_real(key, value);
        else if (key == "delta") layer.delta = parse_real(key, value);
        else if (key == "a") layer.a = parse_real(key, value);
        else if (key == "b") layer.b = parse_real(key, value);
        else if (key == "lambda") layer.lambda = parse_real(key, value);
        else if (key == "rmin") layer.r_min = parse_real(key, value);
        else if (key == "rmax") layer.r_max = parse_real(key, value);
        else if (key == "d-threshold") layer.d_threshold = parse_real(key, value);
        else if (key == "n") layer.n = parse_integer(key, value);
        else if (key == "ell") layer.ell = parse_integer(key, value);
        else if (key == "points") layer.points = parse_integer(key, value);
        else if (key == "precision") layer.precision = parse_integer(key, value);
        else if (key == "max-iter") layer.max_iterations = parse_integer(key, value);
        else if (key == "ell-max") layer.ell_max = parse_integer(key, value);
        else if (key == "format") layer.format = std::string(value);
        else throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return layer;
}

ConfigLayer load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace qhp::cli
