#include <cassert>

#include "qhp/kernels.hpp"

namespace qhp::kernels::scalar {
namespace {

void tabulate_potential(std::span<const double> r, double centrifugal, double delta,
                        double a_coef, std::span<double> out) {
    assert(out.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = r[i];
        const double inv = 1.0 / x;
        out[i] = centrifugal * (inv * inv) + delta * (x * x) + a_coef * inv;
    }
}

void numerov_factor(std::span<const double> w, double energy, double scale,
                    std::span<double> out) {
    assert(out.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = 1.0 - scale * (w[i] - energy);
}

Moments weighted_square_moments(std::span<const double> weights, std::span<const double> r,
                                std::span<const double> f) {
    assert(weights.size() == f.size() && r.size() == f.size());
    Moments m;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double p = weights[i] * (f[i] * f[i]);
        const double r2 = r[i] * r[i];
        m.m0 += p;
        m.m2 += p * r2;
        m.m4 += (p * r2) * r2;
    }
    return m;
}

double weighted_dot(std::span<const double> weights, std::span<const double> a,
                    std::span<const double> b) {
    assert(weights.size() == a.size() && a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += weights[i] * (a[i] * b[i]);
    return s;
}

void radial_residual_profile(std::span<const double> r, std::span<const double> values,
                             const ResidualCoeffs& c, std::span<double> out) {
    assert(r.size() == values.size() && out.size() == r.size());
    const double two_d = 2.0 * c.width;
    const double singular = c.centrifugal + c.two_mu * c.b_coef;
    const double coulomb = c.two_mu * c.a_coef;
    const double harmonic = c.two_mu * c.delta;
    const double constant = c.two_mu * c.energy - two_d;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = r[i];
        const double inv = 1.0 / x;
        // g = log R, g' = m/r - 2dr + c, g'' = -m/r^2 - 2d
        const double g1 = c.power * inv - two_d * x + c.linear;
        const double g2 = -c.power * (inv * inv);
        const double bracket = g2 + g1 * g1 + 2.0 * g1 * inv - singular * (inv * inv) -
                               coulomb * inv - harmonic * (x * x) + constant;
        out[i] = values[i] * bracket;
    }
}

}  // namespace

const KernelTable& table() {
    static const KernelTable t{Isa::scalar,           tabulate_potential, numerov_factor,
                               weighted_square_moments, weighted_dot,     radial_residual_profile};
    return t;
}

}  // namespace qhp::kernels::scalar
