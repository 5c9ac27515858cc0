#pragma once

// Critical-strength estimates for the potential used as an attractive
// short-range well, -lambda V(r). Everything here is in the 2 mu = 1 unit
// system, independent of the mass used by the spectrum solvers.

#include "qhp/model.hpp"

namespace qhp::critical {

struct CriticalInputs {
    PotentialParams params;
    double lambda = 1.0;  // strength, > 0
    unsigned ell = 0;
};

/// V(r) = delta r^2 + A/r + B/r^2 and its first two derivatives.
struct PotentialDerivatives {
    double value = 0.0;
    double first = 0.0;
    double second = 0.0;
};
PotentialDerivatives potential(const PotentialParams& params, double r);

/// -lambda V(r) + ell(ell+1)/r^2. Throws std::domain_error for r <= 0.
double v_eff(const CriticalInputs& inputs, double r);

/// (1/2) (A/delta)^(1/3). Throws std::domain_error if delta or A is zero.
double r0_prime(const PotentialParams& params);

/// Root of 3 V'(r) + r V''(r) by bisection on [1e-6 r^, 1e6 r^] with r^ the
/// closed form. Throws std::runtime_error when the bracket holds no sign change.
double r0_prime_numeric(const PotentialParams& params);

struct BarrierDenominator {
    double r0 = 0.0;
    double potential_at_r0 = 0.0;   // V(r0')
    double slope_at_r0 = 0.0;       // V'(r0')
    double generic = 0.0;           // -r0'^3 V'(r0')
    double simplified = 0.0;        // 2B + (3/4) r0' A
};

/// Throws std::domain_error if the generic denominator is not positive.
BarrierDenominator barrier_denominator(const PotentialParams& params);

/// 2 ell(ell+1) / (-r0'^3 V'(r0')); zero for ell = 0.
double lambda_c_bound(const PotentialParams& params, unsigned ell);

struct EllCPlus {
    double simplified = 0.0;  // sqrt((2B + 0.75 r0' A)/2) sqrt(lambda)
    double generic = 0.0;     // sqrt(-r0'^3 V'(r0')/2) sqrt(lambda)
};

/// Throws std::domain_error for lambda <= 0 or degenerate parameters.
EllCPlus ell_c_plus(const PotentialParams& params, double lambda);

}  // namespace qhp::critical
