#pragma once

// Physical inputs, quantum numbers and the derived symbols shared by the
// analytic, transform-space and numerical solvers of the quasi-harmonic
// problem V(r) = delta*r^2 + a/r + b/r^2 (natural units, hbar = c = 1).

#include <optional>
#include <utility>

namespace qhp {

struct PotentialParams {
    double mu = 1.0;      // particle mass, > 0
    double delta = 0.0;   // quadratic coefficient, >= 0
    double a_coef = 0.0;  // Coulomb-type coefficient, >= 0
    double b_coef = 0.0;  // inverse-square coefficient, >= 0

    /// Throws std::invalid_argument when mu <= 0, a coefficient is negative,
    /// or any field is not finite.
    void validate() const;

    friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

struct QuantumNumbers {
    unsigned n = 0;    // pole order minus one
    unsigned ell = 0;  // orbital quantum number

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Intermediate symbols of the reduced and transformed radial equations,
/// all evaluated at the physical root k = ell.
struct DerivedParams {
    double d = 0.0;          // sqrt(mu*delta/2)
    double eta = 0.0;        // 2k
    std::optional<double> eps;        // 2 mu E - 2 d k - 6 d, needs an energy
    std::optional<double> eps_tilde;  // eps - 4 d
    double gamma = 0.0;      // 2 - 2 ell
    double alpha = 0.0;      // 2 mu A + 2
    double q_factor = 0.0;   // k(k+3) - ell(ell+1) - 2 mu B
    double n_tilde = 0.0;    // 4 d (n+1)(n+2)
};

/// Width parameter d = sqrt(mu*delta/2) of the Gaussian asymptote.
double width_parameter(const PotentialParams& params);

DerivedParams derive(const PotentialParams& params, const QuantumNumbers& qn,
                     std::optional<double> energy = std::nullopt);

/// Roots of k(k+3) = ell(ell+3): {ell, -(ell+3)}. Only the first is physical.
std::pair<double, double> k_roots(unsigned ell);

/// Inverse-square coefficient satisfying mu*B = ell.
double required_b(const QuantumNumbers& qn, double mu);

/// Coulomb coefficient for which both closed forms of the energy coincide:
/// A = ((n+1)(ell+4) - 4) / (4 mu).
double required_a(const QuantumNumbers& qn, double mu);

struct ConsistencyThresholds {
    double mu_b_tol = 1e-12;
    double alpha_tol = 1e-12;
    double gamma_tol = 0.0;
    double d_small = 0.1;
};

struct ConsistencyReport {
    double mu_b_residual = 0.0;    // |mu B - ell|
    double alpha_residual = 0.0;   // |2 alpha - 4(n+1) - ell(n+1)|
    double gamma_conflict = 0.0;   // |(2 - 2 ell) - (n+1)|
    double d = 0.0;
    bool d_small = false;          // d < thresholds.d_small
    bool mu_b_pass = false;
    bool alpha_pass = false;
    bool gamma_pass = false;

    bool all_pass() const { return mu_b_pass && alpha_pass && gamma_pass && d_small; }
};

/// Evaluates every parametric restriction and reports; never throws on a
/// failed check.
ConsistencyReport check_consistency(const PotentialParams& params, const QuantumNumbers& qn,
                                    const ConsistencyThresholds& thresholds = {});

}  // namespace qhp
