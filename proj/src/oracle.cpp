#include "qhp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qhp/analytic.hpp"
#include "qhp/kernels.hpp"

namespace qhp::oracle {
namespace {

constexpr double kRescaleAt = 1e200;

void require_confining(const PotentialParams& params) {
    params.validate();
    if (params.delta == 0.0) {
        throw std::domain_error("delta must be nonzero (Δ ≠ 0): the potential does not confine");
    }
}

// Numerov on U'' = Q U with f = 1 - h^2 Q / 12:
//   f[i+1] U[i+1] = (12 - 10 f[i]) U[i] - f[i-1] U[i-1]
double numerov_step(double u_prev, double u, double f_prev, double f, double f_next) {
    return ((12.0 - 10.0 * f) * u - f_prev * u_prev) / f_next;
}

class Shooter {
public:
    Shooter(const PotentialParams& params, unsigned ell, const RadialGrid& grid)
        : grid_(grid),
          r_(grid.points()),
          w_(r_.size()),
          f_(r_.size()),
          sigma_(indicial_exponent(params, ell)),
          two_mu_(2.0 * params.mu),
          a_coef_(params.a_coef),
          scale_(2.0 * params.mu * grid.spacing() * grid.spacing() / 12.0) {
        const EffectivePotential pot(params, ell);
        kernels::tabulate_potential(r_, pot.centrifugal(), params.delta, params.a_coef, w_);
    }

    double w_min() const { return *std::min_element(w_.begin(), w_.end()); }
    double w_edge() const { return w_.back(); }

    int outward_nodes(double energy) {
        prepare(energy);
        const std::size_t n = r_.size();
        double u_prev = seed(seed_index_ - 1);
        double u = seed(seed_index_);
        int nodes = 0;
        double last_sign = u > 0 ? 1.0 : -1.0;
        for (std::size_t i = seed_index_; i + 1 < n; ++i) {
            const double next = numerov_step(u_prev, u, f_[i - 1], f_[i], f_[i + 1]);
            u_prev = u;
            u = next;
            if (u != 0.0) {
                const double s = u > 0 ? 1.0 : -1.0;
                if (s != last_sign) ++nodes;
                last_sign = s;
            }
            if (std::abs(u) > kRescaleAt) {
                u /= kRescaleAt;
                u_prev /= kRescaleAt;
            }
        }
        return nodes;
    }

    std::vector<double> matched_solution(double energy) {
        prepare(energy);
        const std::size_t n = r_.size();
        std::vector<double> u(n, 0.0);

        // outermost classically allowed point
        std::size_t match = 0;
        for (std::size_t i = n; i-- > 0;) {
            if (w_[i] <= energy) {
                match = i;
                break;
            }
        }
        match = std::clamp(match, seed_index_ + 1, n - 3);

        for (std::size_t i = 0; i <= seed_index_; ++i) u[i] = seed(i);
        for (std::size_t i = seed_index_; i < match; ++i) {
            u[i + 1] = numerov_step(u[i - 1], u[i], f_[i - 1], f_[i], f_[i + 1]);
            if (std::abs(u[i + 1]) > kRescaleAt) {
                for (std::size_t j = 0; j <= i + 1; ++j) u[j] /= kRescaleAt;
            }
        }
        const double u_match = u[match];

        std::vector<double> in(n, 0.0);
        in[n - 1] = 0.0;
        in[n - 2] = 1.0;
        for (std::size_t i = n - 2; i > match; --i) {
            in[i - 1] = numerov_step(in[i + 1], in[i], f_[i + 1], f_[i], f_[i - 1]);
            if (std::abs(in[i - 1]) > kRescaleAt) {
                for (std::size_t j = i - 1; j < n; ++j) in[j] /= kRescaleAt;
            }
        }
        const double ratio = in[match] != 0.0 ? u_match / in[match] : 0.0;
        for (std::size_t i = match; i < n; ++i) u[i] = in[i] * ratio;
        return u;
    }

private:
    void prepare(double energy) {
        kernels::numerov_factor(w_, energy, scale_, f_);
        // Frobenius series U = r^sigma (1 + c1 r + c2 r^2 + c3 r^3); the
        // harmonic term first enters at r^4.
        //   c_k k (2 sigma + k - 1) = 2 mu A c_{k-1} - 2 mu E c_{k-2}
        const double a = two_mu_ * a_coef_;
        const double e = two_mu_ * energy;
        c1_ = a / (2.0 * sigma_);
        c2_ = (a * c1_ - e) / (2.0 * (2.0 * sigma_ + 1.0));
        c3_ = (a * c2_ - e * c1_) / (3.0 * (2.0 * sigma_ + 2.0));
        // Start where the Numerov weights are sane; closer in the singular
        // term dominates and the power law is the solution.
        seed_index_ = 1;
        while (seed_index_ + 2 < f_.size() && f_[seed_index_ + 1] < 0.5) ++seed_index_;
    }

    double seed(std::size_t i) const {
        const double x = r_[i];
        return std::pow(x / r_[seed_index_], sigma_) * (1.0 + x * (c1_ + x * (c2_ + x * c3_)));
    }

    RadialGrid grid_;
    std::vector<double> r_;
    std::vector<double> w_;
    std::vector<double> f_;
    double sigma_;
    double two_mu_;
    double a_coef_;
    double c1_ = 0.0;
    double c2_ = 0.0;
    double c3_ = 0.0;
    double scale_;
    std::size_t seed_index_ = 1;
};

}  // namespace

void RadialGrid::validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
        throw std::invalid_argument("grid requires 0 < r_min < r_max");
    }
    if (n_points < kMinPoints) {
        throw std::invalid_argument("grid requires at least 1000 points");
    }
}

std::vector<double> RadialGrid::points() const {
    std::vector<double> r(n_points);
    for (std::size_t i = 0; i < n_points; ++i) r[i] = at(i);
    return r;
}

RadialGrid default_grid(const PotentialParams& params, const QuantumNumbers& qn) {
    require_confining(params);
    const double rms = analytic::rms_radius(params, qn);
    const double oscillator = std::pow(2.0 * params.mu * params.delta, -0.25);
    const double length = std::max(rms, oscillator);
    return {1e-4 * length, 10.0 * length, 20001};
}

EffectivePotential::EffectivePotential(const PotentialParams& params, unsigned ell)
    : centrifugal_((ell * (ell + 1.0) + 2.0 * params.mu * params.b_coef) / (2.0 * params.mu)),
      delta_(params.delta),
      a_coef_(params.a_coef) {
    params.validate();
}

double EffectivePotential::operator()(double r) const {
    if (!(r > 0.0)) throw std::domain_error("effective potential requires r > 0");
    return centrifugal_ / (r * r) + delta_ * r * r + a_coef_ / r;
}

double indicial_exponent(const PotentialParams& params, unsigned ell) {
    const double singular = ell * (ell + 1.0) + 2.0 * params.mu * params.b_coef;
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * singular));
}

NumericEigenResult solve_bound_state(const PotentialParams& params, unsigned ell, int node_target,
                                     const RadialGrid& grid, const SolverOptions& options) {
    require_confining(params);
    grid.validate();
    if (node_target < 0) throw std::invalid_argument("node target must be non-negative");

    Shooter shooter(params, ell, grid);
    double lo = shooter.w_min();
    double hi = shooter.w_edge();
    int expansions = 0;
    while (shooter.outward_nodes(hi) <= node_target) {
        if (expansions == options.max_expansions) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "no bound state with " << node_target << " nodes in energy window [" << lo
                << ", " << hi << "]";
            throw SolverError(msg.str());
        }
        hi = lo + 2.0 * (hi - lo);
        ++expansions;
    }

    NumericEigenResult result;
    result.grid = grid;
    while (result.iterations < options.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (shooter.outward_nodes(mid) > node_target) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++result.iterations;
        if (hi - lo <= options.relative_tolerance * std::max(1.0, std::abs(0.5 * (lo + hi)))) {
            result.converged = true;
            break;
        }
    }
    result.energy = 0.5 * (lo + hi);
    result.bracket_width = hi - lo;

    result.u_samples = shooter.matched_solution(result.energy);
    const auto q = quadrature_norm_and_moment_reduced(grid, result.u_samples);
    if (q.norm > 0.0) {
        const double inv = 1.0 / std::sqrt(q.norm);
        for (double& u : result.u_samples) u *= inv;
    }
    result.node_count = count_nodes(std::span(result.u_samples).subspan(0, grid.n_points - 1));
    return result;
}

std::vector<double> simpson_weights(std::size_t n_points, double spacing) {
    std::vector<double> w(n_points, 0.0);
    if (n_points < 2) return w;
    if (n_points == 2) {
        w[0] = w[1] = 0.5 * spacing;
        return w;
    }
    // Simpson over an even number of intervals, 3/8 rule on the last three
    // when the interval count is odd.
    const std::size_t simpson_end = (n_points - 1) % 2 == 0 ? n_points - 1 : n_points - 4;
    const double third = spacing / 3.0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += third;
        w[i + 1] += 4.0 * third;
        w[i + 2] += third;
    }
    if (simpson_end != n_points - 1) {
        const double eighth = 3.0 * spacing / 8.0;
        const std::size_t s = simpson_end;
        w[s] += eighth;
        w[s + 1] += 3.0 * eighth;
        w[s + 2] += 3.0 * eighth;
        w[s + 3] += eighth;
    }
    return w;
}

QuadratureResult quadrature_norm_and_moment(const RadialGrid& grid, std::span<const double> radial) {
    if (radial.size() != grid.n_points) throw std::invalid_argument("sample count must match grid");
    const auto r = grid.points();
    const auto w = simpson_weights(grid.n_points, grid.spacing());
    const auto m = kernels::weighted_square_moments(w, r, radial);
    return {m.m2, m.m4};
}

QuadratureResult quadrature_norm_and_moment_reduced(const RadialGrid& grid,
                                                    std::span<const double> reduced) {
    if (reduced.size() != grid.n_points) throw std::invalid_argument("sample count must match grid");
    const auto r = grid.points();
    const auto w = simpson_weights(grid.n_points, grid.spacing());
    const auto m = kernels::weighted_square_moments(w, r, reduced);
    return {m.m0, m.m2};
}

int count_nodes(std::span<const double> samples) {
    int nodes = 0;
    int last = 0;
    for (double v : samples) {
        if (v == 0.0) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (last != 0 && s != last) ++nodes;
        last = s;
    }
    return nodes;
}

ComparisonReport compare(const PotentialParams& params, const QuantumNumbers& qn,
                         const RadialGrid& grid, const SolverOptions& options,
                         const ConsistencyThresholds& thresholds) {
    require_confining(params);
    const auto analytic_solution = analytic::solve(params, qn);
    const auto numeric = solve_bound_state(params, qn.ell, static_cast<int>(qn.n), grid, options);
    if (!numeric.converged) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "numeric solve did not converge after " << numeric.iterations
            << " iterations (bracket width " << numeric.bracket_width << ")";
        throw SolverError(msg.str());
    }

    const auto r = grid.points();
    const auto wf = analytic_solution.wavefunction();
    std::vector<double> reduced(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) reduced[i] = r[i] * wf(r[i]);

    const auto w = simpson_weights(grid.n_points, grid.spacing());
    const auto ma = kernels::weighted_square_moments(w, r, reduced);
    const auto mn = kernels::weighted_square_moments(w, r, numeric.u_samples);
    const double cross = kernels::weighted_dot(w, reduced, numeric.u_samples);

    ComparisonReport rep;
    rep.e_analytic = analytic_solution.energy;
    rep.e_numeric = numeric.energy;
    rep.abs_diff = std::abs(rep.e_analytic - rep.e_numeric);
    rep.rel_diff = rep.abs_diff / std::max(std::abs(rep.e_numeric), std::numeric_limits<double>::min());
    const double denom = std::sqrt(ma.m0 * mn.m0);
    rep.overlap = denom > 0.0 ? cross / denom : 0.0;
    rep.analytic_norm = ma.m0;
    rep.consistency = check_consistency(params, qn, thresholds);
    rep.node_count = numeric.node_count;
    rep.bracket_width = numeric.bracket_width;
    rep.iterations = numeric.iterations;
    rep.converged = numeric.converged;
    rep.grid = grid;
    return rep;
}

}  // namespace qhp::oracle
