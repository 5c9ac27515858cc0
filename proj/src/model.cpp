#include "qhp/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qhp {

void PotentialParams::validate() const {
    if (!std::isfinite(mu) || !std::isfinite(delta) || !std::isfinite(a_coef) ||
        !std::isfinite(b_coef)) {
        throw std::invalid_argument("potential parameters must be finite");
    }
    if (mu <= 0.0) throw std::invalid_argument("mu must be positive, got " + std::to_string(mu));
    if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
    if (a_coef < 0.0) throw std::invalid_argument("a must be non-negative");
    if (b_coef < 0.0) throw std::invalid_argument("b must be non-negative");
}

double width_parameter(const PotentialParams& params) {
    return std::sqrt(params.mu * params.delta / 2.0);
}

DerivedParams derive(const PotentialParams& params, const QuantumNumbers& qn,
                     std::optional<double> energy) {
    params.validate();
    const double k = k_roots(qn.ell).first;
    const double ell = qn.ell;
    const double n = qn.n;

    DerivedParams out;
    out.d = width_parameter(params);
    out.eta = 2.0 * k;
    out.gamma = 2.0 - 2.0 * ell;
    out.alpha = 2.0 * params.mu * params.a_coef + 2.0;
    out.q_factor = k * (k + 3.0) - ell * (ell + 1.0) - 2.0 * params.mu * params.b_coef;
    out.n_tilde = 4.0 * out.d * (n + 1.0) * (n + 2.0);
    if (energy) {
        out.eps = 2.0 * params.mu * *energy - 2.0 * out.d * k - 6.0 * out.d;
        out.eps_tilde = *out.eps - 4.0 * out.d;
    }
    return out;
}

std::pair<double, double> k_roots(unsigned ell) {
    const double l = ell;
    return {l, -(l + 3.0)};
}

double required_b(const QuantumNumbers& qn, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    return static_cast<double>(qn.ell) / mu;
}

double required_a(const QuantumNumbers& qn, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    const double n1 = qn.n + 1.0;
    return (n1 * (qn.ell + 4.0) - 4.0) / (4.0 * mu);
}

ConsistencyReport check_consistency(const PotentialParams& params, const QuantumNumbers& qn,
                                    const ConsistencyThresholds& thresholds) {
    const DerivedParams dp = derive(params, qn);
    const double ell = qn.ell;
    const double n1 = qn.n + 1.0;

    ConsistencyReport r;
    r.mu_b_residual = std::abs(params.mu * params.b_coef - ell);
    r.alpha_residual = std::abs(2.0 * dp.alpha - 4.0 * n1 - ell * n1);
    r.gamma_conflict = std::abs(dp.gamma - n1);
    r.d = dp.d;
    r.d_small = dp.d < thresholds.d_small;
    r.mu_b_pass = r.mu_b_residual <= thresholds.mu_b_tol;
    r.alpha_pass = r.alpha_residual <= thresholds.alpha_tol;
    r.gamma_pass = r.gamma_conflict <= thresholds.gamma_tol;
    return r;
}

}  // namespace qhp
