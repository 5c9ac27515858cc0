#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "output.hpp"
#include "qhp/analytic.hpp"
#include "qhp/cli.hpp"
#include "qhp/critical.hpp"
#include "qhp/laplace.hpp"
#include "qhp/oracle.hpp"

namespace qhp::cli {
namespace {

constexpr double kLaplaceTolerance = 1e-10;
constexpr double kRadialTolerance = 1e-9;
constexpr double kNormTolerance = 1e-8;

// Maps exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const oracle::SolverError& e) {
        err << "error: solver failed: " << e.what() << '\n';
        return kSolverFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

struct Record {
    Row main;
    Row consistency;
};

Json record_json(const Record& rec, int precision) {
    Json doc = to_json(rec.main, precision);
    doc["consistency"] = to_json(rec.consistency, precision);
    return doc;
}

Row params_row(const RunConfig& c) {
    return {{"mu", c.params.mu},
            {"delta", c.params.delta},
            {"a", c.params.a_coef},
            {"b", c.params.b_coef},
            {"n", static_cast<long long>(c.qn.n)},
            {"ell", static_cast<long long>(c.qn.ell)}};
}

Row consistency_row(const ConsistencyReport& r) {
    return {{"mu_b_residual", r.mu_b_residual},   {"alpha_residual", r.alpha_residual},
            {"gamma_conflict", r.gamma_conflict}, {"d_small", r.d_small},
            {"mu_b_pass", r.mu_b_pass},           {"alpha_pass", r.alpha_pass},
            {"gamma_pass", r.gamma_pass}};
}

Record spectrum_record(const RunConfig& c) {
    c.validate();
    const auto sol = analytic::solve(c.params, c.qn);
    Record rec;
    rec.main = concat(params_row(c), Row{{"d", width_parameter(c.params)},
                                          {"energy_form1", sol.energy},
                                          {"energy_form2", sol.energy_second_form},
                                          {"norm_const", sol.norm_const},
                                          {"log_norm_const", sol.log_norm_const},
                                          {"rms", sol.rms},
                                          {"r2_moment", sol.r2_moment}});
    rec.consistency = consistency_row(check_consistency(c.params, c.qn, c.thresholds()));
    return rec;
}

Record compare_record(const RunConfig& c) {
    c.validate();
    const auto grid = c.grid();
    const auto rep = oracle::compare(c.params, c.qn, grid, c.solver_options(), c.thresholds());
    Record rec;
    rec.main = concat(params_row(c), Row{{"e_analytic", rep.e_analytic},
                                          {"e_numeric", rep.e_numeric},
                                          {"abs_diff", rep.abs_diff},
                                          {"rel_diff", rep.rel_diff},
                                          {"overlap", rep.overlap},
                                          {"analytic_norm", rep.analytic_norm},
                                          {"node_count", static_cast<long long>(rep.node_count)},
                                          {"bracket_width", rep.bracket_width},
                                          {"iterations", static_cast<long long>(rep.iterations)},
                                          {"converged", rep.converged},
                                          {"r_min", grid.r_min},
                                          {"r_max", grid.r_max},
                                          {"points", static_cast<long long>(grid.n_points)}});
    rec.consistency = consistency_row(rep.consistency);
    return rec;
}

struct CriticalRecord {
    Row summary;
    std::vector<Row> per_ell;
};

CriticalRecord critical_record(const RunConfig& c) {
    c.validate();
    const auto den = critical::barrier_denominator(c.params);
    const auto lc = critical::ell_c_plus(c.params, c.lambda);
    CriticalRecord rec;
    rec.summary = {{"units", std::string("2mu=1")},
                   {"delta", c.params.delta},
                   {"a", c.params.a_coef},
                   {"b", c.params.b_coef},
                   {"lambda", c.lambda},
                   {"r0_prime", den.r0},
                   {"r0_prime_numeric", critical::r0_prime_numeric(c.params)},
                   {"potential_at_r0", den.potential_at_r0},
                   {"slope_at_r0", den.slope_at_r0},
                   {"denominator_generic", den.generic},
                   {"denominator_simplified", den.simplified},
                   {"ell_c_plus", lc.simplified},
                   {"ell_c_plus_generic", lc.generic}};
    for (unsigned ell = 0; ell <= c.ell_max; ++ell) {
        rec.per_ell.push_back({{"ell", static_cast<long long>(ell)},
                               {"lambda_c_bound", critical::lambda_c_bound(c.params, ell)}});
    }
    return rec;
}

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Record rec = spectrum_record(config);
        if (config.format == Format::json) {
            write_json(out, record_json(rec, config.precision));
        } else {
            write_csv(out, {concat(rec.main, rec.consistency)}, config.precision);
        }
        return kSuccess;
    });
}

int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const auto grid = config.grid();
        const auto r = grid.points();
        const double energy = analytic::energy(config.params, config.qn).first;
        std::vector<double> values(r.size());
        std::vector<double> residuals(r.size());
        laplace::radial_residual_profile(config.params, config.qn, energy, r, values, residuals);

        std::optional<std::vector<double>> numeric;
        if (config.with_numeric) {
            const auto res = oracle::solve_bound_state(config.params, config.qn.ell,
                                                       static_cast<int>(config.qn.n), grid,
                                                       config.solver_options());
            if (!res.converged) throw oracle::SolverError("numeric solve did not converge");
            numeric.emplace(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) (*numeric)[i] = res.u_samples[i] / r[i];
        }

        if (config.format == Format::json) {
            const int p = config.precision;
            Json doc = Json::object();
            doc["n_points"] = grid.n_points;
            doc["energy"] = to_json(Value{energy}, p);
            Json jr = Json::array(), ja = Json::array(), jn = Json::array(), jres = Json::array();
            for (std::size_t i = 0; i < r.size(); ++i) {
                jr.push_back(to_json(Value{r[i]}, p));
                ja.push_back(to_json(Value{values[i]}, p));
                if (numeric) jn.push_back(to_json(Value{(*numeric)[i]}, p));
                jres.push_back(to_json(Value{residuals[i]}, p));
            }
            doc["r"] = std::move(jr);
            doc["R_analytic"] = std::move(ja);
            doc["R_numeric"] = numeric ? std::move(jn) : Json(nullptr);
            doc["residual"] = std::move(jres);
            write_json(out, doc);
        } else {
            std::vector<Row> rows;
            rows.reserve(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                rows.push_back({{"r", r[i]},
                                {"R_analytic", values[i]},
                                {"R_numeric", numeric ? Value{(*numeric)[i]} : Value{Empty{}}},
                                {"residual", residuals[i]}});
            }
            write_csv(out, rows, config.precision);
        }
        return kSuccess;
    });
}

namespace {

Row verify_laplace(const RunConfig& c, bool& asserted, bool& pass) {
    const double d = width_parameter(c.params);
    const auto coeffs = laplace::solve_conditions(c.qn, d);
    const laplace::PoleAnsatz ansatz{1.0, c.qn.n, c.qn.ell};
    const auto s_grid = laplace::standard_s_grid(c.qn.ell);
    double max_abs = 0.0, sum = 0.0, max_scaled = 0.0;
    for (double s : s_grid) {
        const double res = std::abs(laplace::transformed_residual(ansatz, coeffs, d, s));
        max_abs = std::max(max_abs, res);
        max_scaled = std::max(max_scaled, res / (1.0 + std::abs(s * s * s)));
        sum += res;
    }
    PotentialParams consistent = c.params;
    consistent.a_coef = required_a(c.qn, c.params.mu);
    const double e_chain = laplace::energy_from_eps_tilde(coeffs.eps_tilde, d, c.qn.ell, c.params.mu);
    const double e_form = analytic::energy(consistent, c.qn).first;

    asserted = true;
    pass = max_scaled <= kLaplaceTolerance;
    return {{"target", std::string("laplace")},
            {"n", static_cast<long long>(c.qn.n)},
            {"ell", static_cast<long long>(c.qn.ell)},
            {"d", d},
            {"points", static_cast<long long>(s_grid.size())},
            {"gamma", coeffs.gamma},
            {"alpha", coeffs.alpha},
            {"eps_tilde", coeffs.eps_tilde},
            {"max_residual", max_abs},
            {"mean_residual", sum / static_cast<double>(s_grid.size())},
            {"max_scaled_residual", max_scaled},
            {"tolerance", kLaplaceTolerance},
            {"energy_from_conditions", e_chain},
            {"energy_form1_required_a", e_form},
            {"energy_abs_diff", std::abs(e_chain - e_form)}};
}

Row verify_radial(const RunConfig& c, bool& asserted, bool& pass) {
    const auto grid = c.grid();
    const auto r = grid.points();
    const double energy = analytic::energy(c.params, c.qn).first;
    std::vector<double> values(r.size()), raw(r.size());
    laplace::radial_residual_profile(c.params, c.qn, energy, r, values, raw);
    std::vector<laplace::Residual> radial(r.size()), reduced(r.size());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < r.size(); ++i) {
        radial[i] = {raw[i], raw[i] / std::max(std::abs(values[i]), eps)};
        reduced[i] = laplace::reduced_residual(c.params, c.qn, energy, r[i]);
    }
    const auto rs = laplace::summarize(radial);
    const auto fs = laplace::summarize(reduced);

    asserted = c.params.a_coef == 0.0 && c.params.b_coef == 0.0 && c.qn.ell == 0 && c.qn.n == 0;
    pass = !asserted || rs.max_relative <= kRadialTolerance;
    return {{"target", std::string("radial")},
            {"n", static_cast<long long>(c.qn.n)},
            {"ell", static_cast<long long>(c.qn.ell)},
            {"energy", energy},
            {"points", static_cast<long long>(rs.count)},
            {"radial_max_abs", rs.max_abs},
            {"radial_mean_abs", rs.mean_abs},
            {"radial_max_relative", rs.max_relative},
            {"reduced_max_abs", fs.max_abs},
            {"reduced_mean_abs", fs.mean_abs},
            {"reduced_max_relative", fs.max_relative},
            {"tolerance", kRadialTolerance}};
}

Row verify_norm(const RunConfig& c, bool& asserted, bool& pass) {
    const auto grid = c.grid();
    const auto r = grid.points();
    const auto wf = analytic::RadialWavefunction(c.params, c.qn);
    std::vector<double> values(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) values[i] = wf(r[i]);
    const auto q = oracle::quadrature_norm_and_moment(grid, values);
    const double closed = (c.qn.ell + c.qn.n + 1.5) / (2.0 * width_parameter(c.params));
    const double norm_dev = std::abs(q.norm - 1.0);
    const double r2_dev = std::abs(q.r2_moment - closed);

    asserted = c.qn.ell == 0;
    pass = !asserted || (norm_dev <= kNormTolerance && r2_dev <= kNormTolerance);
    return {{"target", std::string("norm")},
            {"n", static_cast<long long>(c.qn.n)},
            {"ell", static_cast<long long>(c.qn.ell)},
            {"points", static_cast<long long>(grid.n_points)},
            {"norm", q.norm},
            {"norm_deviation", norm_dev},
            {"r2_moment", q.r2_moment},
            {"r2_closed_form", closed},
            {"r2_deviation", r2_dev},
            {"tolerance", kNormTolerance}};
}

}  // namespace

int cmd_verify(const RunConfig& config, VerifyTarget target, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        if (config.params.delta == 0.0) {
            throw std::invalid_argument("delta must be nonzero (Δ ≠ 0)");
        }
        bool asserted = false;
        bool pass = false;
        Row row;
        switch (target) {
            case VerifyTarget::laplace: row = verify_laplace(config, asserted, pass); break;
            case VerifyTarget::radial: row = verify_radial(config, asserted, pass); break;
            case VerifyTarget::norm: row = verify_norm(config, asserted, pass); break;
        }
        row.emplace_back("asserted", asserted);
        row.emplace_back("pass", pass);
        if (config.format == Format::json) {
            write_json(out, to_json(row, config.precision));
        } else {
            write_csv(out, {row}, config.precision);
        }
        if (!pass) {
            err << "verification failed: asserted check exceeded its tolerance\n";
            return kAssertionFailed;
        }
        return kSuccess;
    });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Record rec = compare_record(config);
        if (config.format == Format::json) {
            write_json(out, record_json(rec, config.precision));
        } else {
            write_csv(out, {concat(rec.main, rec.consistency)}, config.precision);
        }
        return kSuccess;
    });
}

int cmd_critical(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CriticalRecord rec = critical_record(config);
        err << "note: critical quantities use the 2mu = 1 unit convention; --mu is ignored\n";
        if (config.format == Format::json) {
            Json doc = to_json(rec.summary, config.precision);
            Json table = Json::array();
            for (const Row& row : rec.per_ell) table.push_back(to_json(row, config.precision));
            doc["lambda_c_bound"] = std::move(table);
            write_json(out, doc);
        } else {
            std::vector<Row> rows;
            for (const Row& row : rec.per_ell) rows.push_back(concat(row, rec.summary));
            write_csv(out, rows, config.precision);
        }
        return kSuccess;
    });
}

namespace {

bool is_integer_param(const std::string& p) { return p == "ell" || p == "n"; }

void set_param(RunConfig& c, const std::string& p, double v) {
    if (is_integer_param(p)) {
        const long long k = std::llround(v);
        if (k < 0) throw std::invalid_argument(p + " must be non-negative in a sweep");
        (p == "ell" ? c.qn.ell : c.qn.n) = static_cast<unsigned>(k);
    } else if (p == "delta") {
        c.params.delta = v;
    } else if (p == "a") {
        c.params.a_coef = v;
    } else if (p == "b") {
        c.params.b_coef = v;
    } else if (p == "mu") {
        c.params.mu = v;
    } else if (p == "lambda") {
        c.lambda = v;
    }
}

struct SweepPoint {
    double value = 0.0;
    Row csv;
    Json json;
};

SweepPoint evaluate_point(RunConfig c, const SweepSpec& sweep, double value) {
    set_param(c, sweep.param, value);
    const double shown = is_integer_param(sweep.param) ? static_cast<double>(std::llround(value)) : value;
    SweepPoint point;
    point.value = shown;
    const Row head{{"sweep_value", shown}};
    if (sweep.over == "critical") {
        const CriticalRecord rec = critical_record(c);
        point.csv = concat(head, rec.summary);
        point.json = to_json(point.csv, c.precision);
    } else {
        const Record rec = sweep.over == "compare" ? compare_record(c) : spectrum_record(c);
        point.csv = concat(concat(head, rec.main), rec.consistency);
        point.json = to_json(head, c.precision);
        point.json.update(record_json(rec, c.precision));
    }
    return point;
}

}  // namespace

int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        static const std::vector<std::string> params{"delta", "a", "b", "mu", "ell", "n", "lambda"};
        if (std::find(params.begin(), params.end(), sweep.param) == params.end()) {
            throw std::invalid_argument("unknown sweep parameter '" + sweep.param + "'");
        }
        if (sweep.over != "spectrum" && sweep.over != "critical" && sweep.over != "compare") {
            throw std::invalid_argument("sweep --over must be spectrum, critical or compare");
        }
        if (sweep.steps < 2) throw std::invalid_argument("sweep requires at least 2 steps");
        if (!std::isfinite(sweep.from) || !std::isfinite(sweep.to)) {
            throw std::invalid_argument("sweep bounds must be finite");
        }
        config.validate();

        std::vector<double> values(static_cast<std::size_t>(sweep.steps));
        for (int i = 0; i < sweep.steps; ++i) {
            values[i] = sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
        }
        std::sort(values.begin(), values.end());

        std::vector<SweepPoint> points(values.size());
        std::vector<std::exception_ptr> errors(values.size());
        const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, values.size());
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < values.size(); i += workers) {
                        try {
                            points[i] = evaluate_point(config, sweep, values[i]);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }

        if (config.format == Format::json) {
            Json doc = Json::object();
            doc["param"] = sweep.param;
            doc["over"] = sweep.over;
            Json rows = Json::array();
            for (auto& p : points) rows.push_back(std::move(p.json));
            doc["rows"] = std::move(rows);
            write_json(out, doc);
        } else {
            std::vector<Row> rows;
            for (auto& p : points) rows.push_back(std::move(p.csv));
            write_csv(out, rows, config.precision);
        }
        return kSuccess;
    });
}

}  // namespace qhp::cli
