#include "qhp/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qhp/analytic.hpp"
#include "qhp/kernels.hpp"

namespace qhp::laplace {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Residual make_residual(double raw, double reference) {
    return {raw, raw / std::max(std::abs(reference), kEps)};
}

void require_positive_r(double r) {
    if (!(r > 0.0)) throw std::domain_error("residual requires r > 0");
}

}  // namespace

CoefficientConditions solve_conditions(const QuantumNumbers& qn, double d) {
    if (!(d > 0.0)) throw std::domain_error("width d must be positive");
    const double n1 = qn.n + 1.0;
    const double ell = qn.ell;
    CoefficientConditions c;
    c.gamma = n1;
    c.alpha = (4.0 * n1 + ell * c.gamma) / 2.0;
    c.n_tilde = 4.0 * d * n1 * (qn.n + 2.0);
    c.eps_tilde = -(c.n_tilde + c.alpha * ell) / (2.0 * n1);
    return c;
}

double energy_from_eps_tilde(double eps_tilde, double d, unsigned ell, double mu) {
    const double eps = eps_tilde + 4.0 * d;
    return (eps + 2.0 * d * ell + 6.0 * d) / (2.0 * mu);
}

PhiValue phi_eval(const PoleAnsatz& ansatz, double s) {
    const double t = s - ansatz.s0();
    if (t == 0.0) throw std::domain_error("pole function is singular at s = ell/2");
    const double order = ansatz.n + 1.0;
    const double inv = 1.0 / t;
    const double phi = ansatz.c_coef * std::pow(inv, order);
    return {phi, -order * phi * inv, order * (order + 1.0) * phi * inv * inv};
}

double transformed_residual(const PoleAnsatz& ansatz, const CoefficientConditions& coeffs,
                            double d, double s) {
    const PhiValue p = phi_eval(ansatz, s);
    const double ell = ansatz.ell;
    return d * (ell - 2.0 * s) * p.second + (s * s + 2.0 * s + coeffs.eps_tilde) * p.first +
           (coeffs.gamma * s + coeffs.alpha) * p.phi;
}

InverseTransform::InverseTransform(const PoleAnsatz& ansatz)
    : scale_(ansatz.c_coef / std::tgamma(ansatz.n + 1.0)), n_(ansatz.n), rate_(ansatz.ell / 2.0) {}

double InverseTransform::operator()(double r) const { return derivatives(r).value; }

InverseTransform::Derivatives InverseTransform::derivatives(double r) const {
    if (r < 0.0) throw std::domain_error("inverse transform requires r >= 0");
    const double n = n_;
    const auto power = [r](int k) { return k < 0 ? 0.0 : std::pow(r, k); };
    const int m = static_cast<int>(n_);
    const double e = scale_ * std::exp(rate_ * r);
    const double p0 = power(m);
    const double p1 = m >= 1 ? n * power(m - 1) : 0.0;
    const double p2 = m >= 2 ? n * (n - 1.0) * power(m - 2) : 0.0;
    return {e * p0, e * (p1 + rate_ * p0), e * (p2 + 2.0 * rate_ * p1 + rate_ * rate_ * p0)};
}

Residual reduced_residual(const PotentialParams& params, const QuantumNumbers& qn, double energy,
                          double r) {
    require_positive_r(r);
    const double c_coef = analytic::normalization(params, qn);
    const DerivedParams dp = derive(params, qn, energy);
    const auto f = InverseTransform({c_coef, qn.n, qn.ell}).derivatives(r);
    const double d = dp.d;
    const double raw = r * f.second + (dp.eta + 2.0 * r - 2.0 * d * r * r) * f.first +
                       (-d * qn.ell * r * r + *dp.eps * r - 2.0 * params.mu * params.a_coef) * f.value;
    return make_residual(raw, f.value);
}

Residual radial_residual(const PotentialParams& params, const QuantumNumbers& qn, double energy,
                         double r) {
    require_positive_r(r);
    const auto R = analytic::RadialWavefunction(params, qn).derivatives(r);
    const double ell = qn.ell;
    const double potential = params.delta * r * r + params.a_coef / r + params.b_coef / (r * r);
    const double raw = R.second + 2.0 / r * R.first +
                       (-ell * (ell + 1.0) / (r * r) + 2.0 * params.mu * (energy - potential)) * R.value;
    return make_residual(raw, R.value);
}

void radial_residual_profile(const PotentialParams& params, const QuantumNumbers& qn,
                             double energy, std::span<const double> r, std::span<double> values,
                             std::span<double> residuals) {
    if (values.size() != r.size() || residuals.size() != r.size()) {
        throw std::invalid_argument("residual profile buffers must match the grid size");
    }
    const analytic::RadialWavefunction wf(params, qn);
    for (std::size_t i = 0; i < r.size(); ++i) values[i] = wf(r[i]);
    const double ell = qn.ell;
    const kernels::ResidualCoeffs coeffs{wf.power(),           wf.width(),   wf.linear(),
                                         ell * (ell + 1.0),    2.0 * params.mu, energy,
                                         params.delta,         params.a_coef, params.b_coef};
    kernels::radial_residual_profile(r, values, coeffs, residuals);
}

ResidualStats summarize(std::span<const Residual> residuals) {
    ResidualStats s;
    s.count = residuals.size();
    if (residuals.empty()) return s;
    double sum = 0.0;
    for (const Residual& r : residuals) {
        const double a = std::abs(r.raw);
        s.max_abs = std::max(s.max_abs, a);
        s.max_relative = std::max(s.max_relative, std::abs(r.relative));
        sum += a;
    }
    s.mean_abs = sum / static_cast<double>(residuals.size());
    return s;
}

std::vector<double> standard_s_grid(unsigned ell, std::size_t count) {
    const double lo = ell / 2.0 + 0.5;
    const double hi = ell / 2.0 + 10.0;
    std::vector<double> s(count);
    if (count == 1) {
        s[0] = lo;
        return s;
    }
    for (std::size_t i = 0; i < count; ++i) {
        s[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return s;
}

}  // namespace qhp::laplace
