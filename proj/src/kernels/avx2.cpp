#include <immintrin.h>

#include <cassert>

#include "qhp/kernels.hpp"

namespace qhp::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

double hsum(__m256d v) {
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void tabulate_potential(std::span<const double> r, double centrifugal, double delta,
                        double a_coef, std::span<double> out) {
    assert(out.size() == r.size());
    const std::size_t n = r.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vc = _mm256_set1_pd(centrifugal);
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d va = _mm256_set1_pd(a_coef);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d x = _mm256_loadu_pd(r.data() + i);
        const __m256d inv = _mm256_div_pd(one, x);
        __m256d acc = _mm256_mul_pd(vc, _mm256_mul_pd(inv, inv));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vd, _mm256_mul_pd(x, x)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, inv));
        _mm256_storeu_pd(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        const double x = r[i];
        const double inv = 1.0 / x;
        out[i] = centrifugal * (inv * inv) + delta * (x * x) + a_coef * inv;
    }
}

void numerov_factor(std::span<const double> w, double energy, double scale,
                    std::span<double> out) {
    assert(out.size() == w.size());
    const std::size_t n = w.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d ve = _mm256_set1_pd(energy);
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d shifted = _mm256_sub_pd(_mm256_loadu_pd(w.data() + i), ve);
        _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(one, _mm256_mul_pd(vs, shifted)));
    }
    for (; i < n; ++i) out[i] = 1.0 - scale * (w[i] - energy);
}

Moments weighted_square_moments(std::span<const double> weights, std::span<const double> r,
                                std::span<const double> f) {
    assert(weights.size() == f.size() && r.size() == f.size());
    const std::size_t n = f.size();
    __m256d s0 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    __m256d s4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d fv = _mm256_loadu_pd(f.data() + i);
        const __m256d x = _mm256_loadu_pd(r.data() + i);
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(weights.data() + i), _mm256_mul_pd(fv, fv));
        const __m256d r2 = _mm256_mul_pd(x, x);
        const __m256d pr2 = _mm256_mul_pd(p, r2);
        s0 = _mm256_add_pd(s0, p);
        s2 = _mm256_add_pd(s2, pr2);
        s4 = _mm256_add_pd(s4, _mm256_mul_pd(pr2, r2));
    }
    Moments m{hsum(s0), hsum(s2), hsum(s4)};
    for (; i < n; ++i) {
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
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(weights.data() + i), ab));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += weights[i] * (a[i] * b[i]);
    return s;
}

void radial_residual_profile(std::span<const double> r, std::span<const double> values,
                             const ResidualCoeffs& c, std::span<double> out) {
    assert(r.size() == values.size() && out.size() == r.size());
    const std::size_t n = r.size();
    const double two_d = 2.0 * c.width;
    const double singular = c.centrifugal + c.two_mu * c.b_coef;
    const double coulomb = c.two_mu * c.a_coef;
    const double harmonic = c.two_mu * c.delta;
    const double constant = c.two_mu * c.energy - two_d;

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vpow = _mm256_set1_pd(c.power);
    const __m256d vnegpow = _mm256_set1_pd(-c.power);
    const __m256d vtwo_d = _mm256_set1_pd(two_d);
    const __m256d vlin = _mm256_set1_pd(c.linear);
    const __m256d vsing = _mm256_set1_pd(singular);
    const __m256d vcoul = _mm256_set1_pd(coulomb);
    const __m256d vharm = _mm256_set1_pd(harmonic);
    const __m256d vconst = _mm256_set1_pd(constant);

    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d x = _mm256_loadu_pd(r.data() + i);
        const __m256d inv = _mm256_div_pd(one, x);
        const __m256d inv2 = _mm256_mul_pd(inv, inv);
        const __m256d g1 = _mm256_add_pd(
            _mm256_sub_pd(_mm256_mul_pd(vpow, inv), _mm256_mul_pd(vtwo_d, x)), vlin);
        const __m256d g2 = _mm256_mul_pd(vnegpow, inv2);
        __m256d b = _mm256_add_pd(g2, _mm256_mul_pd(g1, g1));
        b = _mm256_add_pd(b, _mm256_mul_pd(_mm256_mul_pd(two, g1), inv));
        b = _mm256_sub_pd(b, _mm256_mul_pd(vsing, inv2));
        b = _mm256_sub_pd(b, _mm256_mul_pd(vcoul, inv));
        b = _mm256_sub_pd(b, _mm256_mul_pd(vharm, _mm256_mul_pd(x, x)));
        b = _mm256_add_pd(b, vconst);
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(values.data() + i), b));
    }
    for (; i < n; ++i) {
        const double x = r[i];
        const double inv = 1.0 / x;
        const double g1 = c.power * inv - two_d * x + c.linear;
        const double g2 = -c.power * (inv * inv);
        const double bracket = g2 + g1 * g1 + 2.0 * g1 * inv - singular * (inv * inv) -
                               coulomb * inv - harmonic * (x * x) + constant;
        out[i] = values[i] * bracket;
    }
}

}  // namespace

const KernelTable& table() {
    static const KernelTable t{Isa::avx2,             tabulate_potential, numerov_factor,
                               weighted_square_moments, weighted_dot,     radial_residual_profile};
    return t;
}

}  // namespace qhp::kernels::avx2
