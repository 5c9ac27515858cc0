#pragma once

// Transform-space machinery: the coefficient conditions imposed by a pole of
// order n+1 at s0 = ell/2, the pole function and its inverse transform, and
// residual evaluators for the transformed ODE (exact) and the r-space ODEs
// (diagnostic only).

#include <span>
#include <vector>

#include "qhp/model.hpp"

namespace qhp::laplace {

struct CoefficientConditions {
    double gamma = 0.0;      // n + 1
    double alpha = 0.0;      // (n+1)(ell+4)/2
    double eps_tilde = 0.0;  // -(n_tilde + alpha ell) / (2(n+1))
    double n_tilde = 0.0;    // 4d(n+1)(n+2)
};

/// Unique (gamma, alpha, eps_tilde) for which the pole ansatz solves the
/// transformed equation. Throws std::domain_error for d <= 0.
CoefficientConditions solve_conditions(const QuantumNumbers& qn, double d);

/// Energy recovered from eps_tilde: eps = eps_tilde + 4d, E = (eps + 2d ell + 6d) / (2 mu).
double energy_from_eps_tilde(double eps_tilde, double d, unsigned ell, double mu);

struct PoleAnsatz {
    double c_coef = 1.0;
    unsigned n = 0;
    unsigned ell = 0;

    double s0() const { return ell / 2.0; }
};

struct PhiValue {
    double phi = 0.0;
    double first = 0.0;
    double second = 0.0;
};

/// Phi(s) = C / (s - s0)^(n+1) and its first two derivatives.
/// Throws std::domain_error at s == s0.
PhiValue phi_eval(const PoleAnsatz& ansatz, double s);

/// d(ell - 2s) Phi'' + (s^2 + 2s + eps_tilde) Phi' + (gamma s + alpha) Phi.
double transformed_residual(const PoleAnsatz& ansatz, const CoefficientConditions& coeffs,
                            double d, double s);

/// f(r) = (C/n!) r^n exp(ell r / 2), the inverse transform of the pole.
class InverseTransform {
public:
    explicit InverseTransform(const PoleAnsatz& ansatz);

    struct Derivatives {
        double value = 0.0;
        double first = 0.0;
        double second = 0.0;
    };

    /// Throws std::domain_error for r < 0.
    double operator()(double r) const;
    Derivatives derivatives(double r) const;

private:
    double scale_;   // C / n!
    unsigned n_;
    double rate_;    // ell / 2
};

struct Residual {
    double raw = 0.0;
    double relative = 0.0;  // raw / max(|reference|, machine epsilon)
};

/// Reduced r-space equation for f(r) with eta, eps at k = ell:
/// r f'' + (eta + 2r - 2dr^2) f' + (-d ell r^2 + eps r - 2 mu A) f.
/// The amplitude of f is the normalization constant. Diagnostic; nonzero in
/// general. Throws std::domain_error for r <= 0 or delta == 0.
Residual reduced_residual(const PotentialParams& params, const QuantumNumbers& qn, double energy,
                          double r);

/// Full radial equation R'' + (2/r) R' + [-ell(ell+1)/r^2 + 2mu(E - V)] R
/// evaluated on the closed-form wavefunction with analytic derivatives.
/// Relative form is scaled by |R(r)|.
Residual radial_residual(const PotentialParams& params, const QuantumNumbers& qn, double energy,
                         double r);

/// Same quantity over a whole grid (vectorized kernel). `values` receives
/// R(r_i), `residuals` the raw residuals.
void radial_residual_profile(const PotentialParams& params, const QuantumNumbers& qn,
                             double energy, std::span<const double> r, std::span<double> values,
                             std::span<double> residuals);

struct ResidualStats {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_relative = 0.0;
    std::size_t count = 0;
};

ResidualStats summarize(std::span<const Residual> residuals);

/// s-grid of `count` points on [s0 + 0.5, s0 + 10].
std::vector<double> standard_s_grid(unsigned ell, std::size_t count = 50);

}  // namespace qhp::laplace
