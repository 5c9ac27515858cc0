#include "qhp/critical.hpp"

#include <cmath>
#include <stdexcept>

namespace qhp::critical {
namespace {

void require_nondegenerate(const PotentialParams& params) {
    params.validate();
    if (params.delta == 0.0) throw std::domain_error("delta must be positive for r0'");
    if (params.a_coef == 0.0) throw std::domain_error("a must be positive for r0'");
}

// 3 V'(r) + r V''(r), evaluated from the derivatives. The B terms cancel
// identically; dropping them avoids losing the root to rounding when B is large.
double inflection_function(PotentialParams params, double r) {
    params.b_coef = 0.0;
    const auto v = potential(params, r);
    return 3.0 * v.first + r * v.second;
}

}  // namespace

PotentialDerivatives potential(const PotentialParams& params, double r) {
    if (!(r > 0.0)) throw std::domain_error("potential requires r > 0");
    const double inv = 1.0 / r;
    const double inv2 = inv * inv;
    const double inv3 = inv2 * inv;
    const double d = params.delta;
    const double a = params.a_coef;
    const double b = params.b_coef;
    return {d * r * r + a * inv + b * inv2,
            2.0 * d * r - a * inv2 - 2.0 * b * inv3,
            2.0 * d + 2.0 * a * inv3 + 6.0 * b * inv3 * inv};
}

double v_eff(const CriticalInputs& inputs, double r) {
    if (!(r > 0.0)) throw std::domain_error("effective potential requires r > 0");
    const double ell = inputs.ell;
    return -inputs.lambda * potential(inputs.params, r).value + ell * (ell + 1.0) / (r * r);
}

double r0_prime(const PotentialParams& params) {
    require_nondegenerate(params);
    return 0.5 * std::cbrt(params.a_coef / params.delta);
}

double r0_prime_numeric(const PotentialParams& params) {
    const double guess = r0_prime(params);
    double lo = 1e-6 * guess;
    double hi = 1e6 * guess;
    double g_lo = inflection_function(params, lo);
    const double g_hi = inflection_function(params, hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) {
        throw std::runtime_error("r0' bracket [1e-6, 1e6] x closed form holds no sign change");
    }
    // Geometric bisection: the bracket spans twelve decades.
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const double g = inflection_function(params, mid);
        if (g == 0.0) return mid;
        if ((g < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BarrierDenominator barrier_denominator(const PotentialParams& params) {
    BarrierDenominator out;
    out.r0 = r0_prime(params);
    const auto v = potential(params, out.r0);
    out.potential_at_r0 = v.value;
    out.slope_at_r0 = v.first;
    out.generic = -out.r0 * out.r0 * out.r0 * v.first;
    out.simplified = 2.0 * params.b_coef + 0.75 * out.r0 * params.a_coef;
    if (!(out.generic > 0.0)) {
        throw std::domain_error("barrier denominator -r0'^3 V'(r0') must be positive");
    }
    return out;
}

double lambda_c_bound(const PotentialParams& params, unsigned ell) {
    const auto den = barrier_denominator(params);
    const double l = ell;
    return 2.0 * l * (l + 1.0) / den.generic;
}

EllCPlus ell_c_plus(const PotentialParams& params, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("lambda must be positive");
    }
    const auto den = barrier_denominator(params);
    const double root = std::sqrt(lambda);
    return {std::sqrt(den.simplified / 2.0) * root, std::sqrt(den.generic / 2.0) * root};
}

}  // namespace qhp::critical
