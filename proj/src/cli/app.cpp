#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "qhp/cli.hpp"

namespace qhp::cli {
namespace {

struct Parsed {
    ConfigLayer flags;
    std::string config_path;
    bool with_numeric = false;
    std::string verify_target;
    SweepSpec sweep;
};

template <class T>
void bind_option(CLI::App* sub, const std::string& name, std::optional<T>& slot, const std::string& help) {
    sub->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

void add_common_options(CLI::App* sub, Parsed& p) {
    bind_option(sub, "--mu", p.flags.mu, "particle mass");
    bind_option(sub, "--delta", p.flags.delta, "quadratic coefficient");
    bind_option(sub, "--a", p.flags.a, "Coulomb-type coefficient");
    bind_option(sub, "--b", p.flags.b, "inverse-square coefficient");
    bind_option(sub, "--n", p.flags.n, "pole order index");
    bind_option(sub, "--ell", p.flags.ell, "orbital quantum number");
    bind_option(sub, "--lambda", p.flags.lambda, "potential strength (critical)");
    bind_option(sub, "--rmin", p.flags.r_min, "grid start");
    bind_option(sub, "--rmax", p.flags.r_max, "grid end");
    bind_option(sub, "--points", p.flags.points, "grid points (>= 1000)");
    bind_option(sub, "--format", p.flags.format, "csv or json");
    bind_option(sub, "--precision", p.flags.precision, "significant digits in [6, 17]");
    bind_option(sub, "--d-threshold", p.flags.d_threshold, "threshold below which d counts as small");
    bind_option(sub, "--max-iter", p.flags.max_iterations, "bisection iteration limit");
    bind_option(sub, "--ell-max", p.flags.ell_max, "largest ell in the critical table");
    sub->add_option("--config", p.config_path, "flat key = value configuration file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of the quasi-harmonic potential delta r^2 + a/r + b/r^2", "qhp"};
    app.require_subcommand(1, 1);
    Parsed p;

    auto* spectrum = app.add_subcommand("spectrum", "closed-form energies, normalization and rms radius");
    auto* wavefunction = app.add_subcommand("wavefunction", "tabulate R(r) and the radial residual");
    auto* verify = app.add_subcommand("verify", "residual checks: laplace, radial or norm");
    auto* compare = app.add_subcommand("compare", "closed form against the Numerov solver");
    auto* critical = app.add_subcommand("critical", "critical strength and angular momentum bounds");
    auto* sweep = app.add_subcommand("sweep", "evaluate a command over a parameter range");
    for (auto* sub : {spectrum, wavefunction, verify, compare, critical, sweep}) add_common_options(sub, p);

    wavefunction->add_flag("--numeric", p.with_numeric, "include the Numerov solution");
    verify->add_option("target", p.verify_target, "laplace | radial | norm")
        ->required()
        ->check(CLI::IsMember({"laplace", "radial", "norm"}));
    sweep->add_option("--param", p.sweep.param, "delta | a | b | mu | ell | n | lambda")->required();
    sweep->add_option("--from", p.sweep.from, "first value")->required();
    sweep->add_option("--to", p.sweep.to, "last value")->required();
    sweep->add_option("--steps", p.sweep.steps, "number of points (>= 2)")->required();
    sweep->add_option("--over", p.sweep.over, "spectrum | critical | compare");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kSuccess : kInvalidInput;
    }

    RunConfig config;
    try {
        if (!p.config_path.empty()) load_config_file(p.config_path).apply_to(config);
        p.flags.apply_to(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    config.with_numeric = p.with_numeric;

    if (spectrum->parsed()) return cmd_spectrum(config, out, err);
    if (wavefunction->parsed()) return cmd_wavefunction(config, out, err);
    if (compare->parsed()) return cmd_compare(config, out, err);
    if (critical->parsed()) return cmd_critical(config, out, err);
    if (sweep->parsed()) return cmd_sweep(config, p.sweep, out, err);
    const VerifyTarget target = p.verify_target == "laplace" ? VerifyTarget::laplace
                                : p.verify_target == "radial" ? VerifyTarget::radial
                                                              : VerifyTarget::norm;
    return cmd_verify(config, target, out, err);
}

}  // namespace qhp::cli
