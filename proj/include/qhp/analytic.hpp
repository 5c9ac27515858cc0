#pragma once

// Closed-form bound-state quantities obtained from the pole solution in
// transform space: energies (two algebraically distinct forms), the
// normalization constant, the radial wavefunction and the rms radius.

#include "qhp/model.hpp"

namespace qhp::analytic {

struct EnergyForms {
    double first = 0.0;   // (d/mu)[ell - n + 3 - alpha ell / (4d(n+1))], uses the actual A
    double second = 0.0;  // sqrt(delta/(2mu))[ell + 3 - n - ell(4+ell)/(8d)]
};

/// Throws std::domain_error when delta == 0.
EnergyForms energy(const PotentialParams& params, const QuantumNumbers& qn);

/// Natural log of C_{n,ell}. Finite even where C itself under- or overflows.
double log_normalization(const PotentialParams& params, const QuantumNumbers& qn);

/// C_{n,ell} = n! {2 (2d)^(ell+n+3/2) exp(-ell^2/(8d)) / Gamma(ell+n+3/2)}^(1/2).
/// May underflow to zero for ell^2/(8d) beyond ~1400; use log_normalization.
double normalization(const PotentialParams& params, const QuantumNumbers& qn);

double rms_radius(const PotentialParams& params, const QuantumNumbers& qn);

/// Evaluator of R(r) = r^(n+ell) (C/n!) exp(-d r^2 + ell r / 2).
///
/// The value and its first two derivatives are assembled in log space and
/// exponentiated once, so the individually extreme factors exp(-ell^2/(16d))
/// and exp(ell r / 2) never appear on their own.
class RadialWavefunction {
public:
    RadialWavefunction(const PotentialParams& params, const QuantumNumbers& qn);

    struct Derivatives {
        double value = 0.0;
        double first = 0.0;
        double second = 0.0;
    };

    /// Throws std::domain_error for r <= 0.
    double operator()(double r) const;
    Derivatives derivatives(double r) const;
    double log_value(double r) const;

    double power() const { return power_; }
    double width() const { return width_; }
    double linear() const { return linear_; }
    double log_prefactor() const { return log_prefactor_; }

private:
    double power_;         // n + ell
    double width_;         // d
    double linear_;        // ell / 2
    double log_prefactor_; // log(C / n!)
};

struct EigenSolution {
    PotentialParams params;
    QuantumNumbers qn;
    double energy = 0.0;              // first form, authoritative
    double energy_second_form = 0.0;
    double norm_const = 0.0;
    double log_norm_const = 0.0;
    double rms = 0.0;
    double r2_moment = 0.0;           // rms^2 = (ell+n+3/2)/(2d)

    RadialWavefunction wavefunction() const { return {params, qn}; }
};

EigenSolution solve(const PotentialParams& params, const QuantumNumbers& qn);

}  // namespace qhp::analytic
