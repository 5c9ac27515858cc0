#pragma once

// Data-parallel inner loops over radial grids. Every kernel has a scalar
// reference implementation and, where the target supports it, an AVX2 variant
// with the same signature. The variant is selected once at runtime.
//
// Elementwise kernels produce bit-identical results across variants (no FMA
// contraction, same operation order per element). Reductions differ only in
// summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace qhp::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct Moments {
    double m0 = 0.0;  // sum w f^2
    double m2 = 0.0;  // sum w f^2 r^2
    double m4 = 0.0;  // sum w f^2 r^4
};

struct ResidualCoeffs {
    double power = 0.0;        // m in R ~ r^m exp(-d r^2 + c r)
    double width = 0.0;        // d
    double linear = 0.0;       // c
    double centrifugal = 0.0;  // ell(ell+1)
    double two_mu = 0.0;
    double energy = 0.0;
    double delta = 0.0;
    double a_coef = 0.0;
    double b_coef = 0.0;
};

struct KernelTable {
    Isa isa;
    /// out[i] = c / r^2 + delta r^2 + a / r
    void (*tabulate_potential)(std::span<const double> r, double centrifugal, double delta,
                               double a_coef, std::span<double> out);
    /// out[i] = 1 - scale * (w[i] - energy)
    void (*numerov_factor)(std::span<const double> w, double energy, double scale,
                           std::span<double> out);
    Moments (*weighted_square_moments)(std::span<const double> weights, std::span<const double> r,
                                       std::span<const double> f);
    double (*weighted_dot)(std::span<const double> weights, std::span<const double> a,
                           std::span<const double> b);
    /// Residual of R'' + 2R'/r + [-ell(ell+1)/r^2 + 2mu(E - V)] R for
    /// R = r^m exp(-d r^2 + c r), given the samples of R.
    void (*radial_residual_profile)(std::span<const double> r, std::span<const double> values,
                                    const ResidualCoeffs& coeffs, std::span<double> out);
};

namespace scalar {
const KernelTable& table();
}

#if defined(QHP_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

bool isa_available(Isa isa);

/// Throws std::invalid_argument if the variant is not compiled in or not
/// supported by the running CPU.
const KernelTable& table_for(Isa isa);

/// Best variant supported by this CPU.
const KernelTable& active();

inline Isa active_isa() { return active().isa; }

inline void tabulate_potential(std::span<const double> r, double centrifugal, double delta,
                               double a_coef, std::span<double> out) {
    active().tabulate_potential(r, centrifugal, delta, a_coef, out);
}

inline void numerov_factor(std::span<const double> w, double energy, double scale,
                           std::span<double> out) {
    active().numerov_factor(w, energy, scale, out);
}

inline Moments weighted_square_moments(std::span<const double> weights, std::span<const double> r,
                                       std::span<const double> f) {
    return active().weighted_square_moments(weights, r, f);
}

inline double weighted_dot(std::span<const double> weights, std::span<const double> a,
                           std::span<const double> b) {
    return active().weighted_dot(weights, a, b);
}

inline void radial_residual_profile(std::span<const double> r, std::span<const double> values,
                                    const ResidualCoeffs& coeffs, std::span<double> out) {
    active().radial_residual_profile(r, values, coeffs, out);
}

}  // namespace qhp::kernels
