#pragma once

// Command-line front end. Commands write their result document to `out` and
// diagnostics to `err`, and return a process exit code, so the whole surface
// can be driven in-process by tests.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhp/model.hpp"
#include "qhp/oracle.hpp"

namespace qhp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kAssertionFailed = 1,
    kInvalidInput = 2,
    kSolverFailed = 3,
};

enum class Format { csv, json };

struct RunConfig {
    PotentialParams params{1.0, 0.5, 0.0, 0.0};
    QuantumNumbers qn{};
    double lambda = 1.0;
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::optional<std::size_t> n_points;
    Format format = Format::csv;
    int precision = 12;
    double d_threshold = 0.1;
    int max_iterations = 200;
    unsigned ell_max = 5;
    bool with_numeric = false;

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;
    ConsistencyThresholds thresholds() const;
    oracle::SolverOptions solver_options() const;
    /// Default grid with any of r_min, r_max, n_points overridden.
    oracle::RadialGrid grid() const;
};

/// One layer of configuration; unset fields leave the lower layer untouched.
struct ConfigLayer {
    std::optional<double> mu, delta, a, b, lambda, r_min, r_max, d_threshold;
    std::optional<long long> n, ell, points, precision, max_iterations, ell_max;
    std::optional<std::string> format;

    void apply_to(RunConfig& config) const;
};

/// Flat `key = value` text, one pair per line, `#` starts a comment. Keys are
/// the long flag names without dashes (d-threshold may be spelled d_threshold).
/// Throws std::invalid_argument on unknown keys or malformed values.
ConfigLayer parse_config_text(std::string_view text);
ConfigLayer load_config_file(const std::string& path);

enum class VerifyTarget { laplace, radial, norm };

struct SweepSpec {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
    std::string over = "spectrum";
};

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, VerifyTarget target, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_critical(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& out,
              std::ostream& err);

/// Full argument vector without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to `precision` significant digits and prints the shortest
/// representation that reads back to the rounded value. Locale independent.
std::string format_number(double value, int precision);
double round_significant(double value, int precision);

}  // namespace qhp::cli
