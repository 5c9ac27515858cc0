#pragma once

// Independent numerical solution of the radial equation by Numerov shooting
// on a uniform grid, plus composite Simpson quadrature. Used to validate the
// closed forms and to measure how far they are from the true spectrum when
// the parametric restrictions do not hold.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhp/model.hpp"

namespace qhp::oracle {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    std::size_t n_points = 0;

    static constexpr std::size_t kMinPoints = 1000;

    /// Throws std::invalid_argument unless 0 < r_min < r_max and
    /// n_points >= kMinPoints.
    void validate() const;
    double spacing() const { return (r_max - r_min) / static_cast<double>(n_points - 1); }
    double at(std::size_t i) const { return r_min + static_cast<double>(i) * spacing(); }
    std::vector<double> points() const;
};

/// r_min = 1e-4 L, r_max = 10 L, 20001 points, with
/// L = max(closed-form rms radius, (2 mu delta)^(-1/4)).
RadialGrid default_grid(const PotentialParams& params, const QuantumNumbers& qn);

/// W(r) = (ell(ell+1) + 2 mu B) / (2 mu r^2) + delta r^2 + A / r, so that
/// U'' = 2 mu (W - E) U is the radial equation for U = r R.
class EffectivePotential {
public:
    EffectivePotential(const PotentialParams& params, unsigned ell);

    /// Throws std::domain_error for r <= 0.
    double operator()(double r) const;
    double centrifugal() const { return centrifugal_; }

private:
    double centrifugal_;
    double delta_;
    double a_coef_;
};

/// Exponent sigma of U ~ r^sigma at the origin for the combined inverse-square
/// coefficient ell(ell+1) + 2 mu B.
double indicial_exponent(const PotentialParams& params, unsigned ell);

struct SolverOptions {
    int max_iterations = 200;
    int max_expansions = 8;
    double relative_tolerance = 1e-10;
};

struct NumericEigenResult {
    double energy = 0.0;
    std::vector<double> u_samples;  // U = rR on the grid, Simpson-normalized
    int node_count = 0;
    bool converged = false;
    double bracket_width = 0.0;
    int iterations = 0;
    RadialGrid grid;
};

/// Node-counting bisection on the outward solution, then a two-sided Numerov
/// integration matched at the outermost classical turning point.
/// Throws SolverError when the energy window never brackets the target node
/// count, std::domain_error when delta == 0.
NumericEigenResult solve_bound_state(const PotentialParams& params, unsigned ell, int node_target,
                                     const RadialGrid& grid, const SolverOptions& options = {});

/// Composite Simpson weights; an even point count closes with the 3/8 rule.
std::vector<double> simpson_weights(std::size_t n_points, double spacing);

struct QuadratureResult {
    double norm = 0.0;       // integral of R^2 r^2
    double r2_moment = 0.0;  // integral of R^2 r^4
};

/// Samples of R(r) on the grid.
QuadratureResult quadrature_norm_and_moment(const RadialGrid& grid, std::span<const double> radial);

/// Samples of U(r) = r R(r) on the grid.
QuadratureResult quadrature_norm_and_moment_reduced(const RadialGrid& grid,
                                                    std::span<const double> reduced);

/// Sign changes between consecutive nonzero samples.
int count_nodes(std::span<const double> samples);

struct ComparisonReport {
    double e_analytic = 0.0;
    double e_numeric = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double overlap = 0.0;
    double analytic_norm = 0.0;  // quadrature norm of the closed-form R
    ConsistencyReport consistency;
    int node_count = 0;
    double bracket_width = 0.0;
    int iterations = 0;
    bool converged = false;
    RadialGrid grid;
};

/// Throws std::domain_error for delta == 0 and SolverError when the numeric
/// solve does not converge.
ComparisonReport compare(const PotentialParams& params, const QuantumNumbers& qn,
                         const RadialGrid& grid, const SolverOptions& options = {},
                         const ConsistencyThresholds& thresholds = {});

}  // namespace qhp::oracle
