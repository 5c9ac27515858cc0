#include "qhp/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qhp::analytic {
namespace {

double checked_width(const PotentialParams& params) {
    params.validate();
    if (params.delta == 0.0) {
        throw std::domain_error("delta must be nonzero (Δ ≠ 0): the width d = sqrt(mu*delta/2) vanishes");
    }
    return width_parameter(params);
}

}  // namespace

EnergyForms energy(const PotentialParams& params, const QuantumNumbers& qn) {
    const double d = checked_width(params);
    const DerivedParams dp = derive(params, qn);
    const double ell = qn.ell;
    const double n = qn.n;

    EnergyForms e;
    e.first = (d / params.mu) * (ell - n + 3.0 - dp.alpha * ell / (4.0 * d * (n + 1.0)));
    e.second = std::sqrt(params.delta / (2.0 * params.mu)) *
               (ell + 3.0 - n - ell * (4.0 + ell) / (8.0 * d));
    return e;
}

double log_normalization(const PotentialParams& params, const QuantumNumbers& qn) {
    const double d = checked_width(params);
    const double ell = qn.ell;
    const double order = ell + qn.n + 1.5;
    const double log_sq = std::numbers::ln2 + order * std::log(2.0 * d) - ell * ell / (8.0 * d) -
                          std::lgamma(order);
    return std::lgamma(qn.n + 1.0) + 0.5 * log_sq;
}

double normalization(const PotentialParams& params, const QuantumNumbers& qn) {
    return std::exp(log_normalization(params, qn));
}

double rms_radius(const PotentialParams& params, const QuantumNumbers& qn) {
    const double d = checked_width(params);
    return std::sqrt((qn.ell + qn.n + 1.5) / (2.0 * d));
}

RadialWavefunction::RadialWavefunction(const PotentialParams& params, const QuantumNumbers& qn)
    : power_(static_cast<double>(qn.n) + qn.ell),
      width_(checked_width(params)),
      linear_(qn.ell / 2.0),
      log_prefactor_(log_normalization(params, qn) - std::lgamma(qn.n + 1.0)) {}

double RadialWavefunction::log_value(double r) const {
    if (!(r > 0.0)) throw std::domain_error("radial wavefunction requires r > 0");
    const double log_r = power_ == 0.0 ? 0.0 : power_ * std::log(r);
    return log_prefactor_ + log_r - width_ * r * r + linear_ * r;
}

double RadialWavefunction::operator()(double r) const { return std::exp(log_value(r)); }

RadialWavefunction::Derivatives RadialWavefunction::derivatives(double r) const {
    // R = exp(g): R' = g' R, R'' = (g'' + g'^2) R
    const double value = (*this)(r);
    const double g1 = power_ / r - 2.0 * width_ * r + linear_;
    const double g2 = -power_ / (r * r) - 2.0 * width_;
    return {value, g1 * value, (g2 + g1 * g1) * value};
}

EigenSolution solve(const PotentialParams& params, const QuantumNumbers& qn) {
    const EnergyForms e = energy(params, qn);
    const double d = width_parameter(params);
    EigenSolution s;
    s.params = params;
    s.qn = qn;
    s.energy = e.first;
    s.energy_second_form = e.second;
    s.log_norm_const = log_normalization(params, qn);
    s.norm_const = std::exp(s.log_norm_const);
    s.r2_moment = (qn.ell + qn.n + 1.5) / (2.0 * d);
    s.rms = std::sqrt(s.r2_moment);
    return s;
}

}  // namespace qhp::analytic
