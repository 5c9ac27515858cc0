#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qhp/critical.hpp"

using namespace qhp;

namespace {
const PotentialParams kWorked{1.0, 1.0, 8.0, 1.0};

PotentialParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> e(-3.0, 3.0);
    return {1.0, std::pow(10.0, e(rng)), std::pow(10.0, e(rng)), std::pow(10.0, e(rng))};
}
}  // namespace

TEST_CASE("potential and effective potential") {
    const auto v = critical::potential(kWorked, 1.0);
    CHECK(v.value == 10.0);
    CHECK(v.first == 2.0 - 8.0 - 2.0);
    CHECK(v.second == 2.0 + 16.0 + 6.0);
    CHECK(critical::v_eff({kWorked, 1.0, 1}, 1.0) == -10.0 + 2.0);
    CHECK(critical::v_eff({kWorked, 2.0, 0}, 2.0) == doctest::Approx(-2.0 * (4.0 + 4.0 + 0.25)));
    CHECK_THROWS_AS(critical::v_eff({kWorked, 1.0, 0}, 0.0), std::domain_error);

    // derivatives against finite differences
    const PotentialParams p{1.0, 0.3, 1.7, 0.4};
    const auto f = [&](double r) { return critical::potential(p, r).value; };
    for (double r : {0.4, 1.0, 3.3}) {
        const auto d = critical::potential(p, r);
        CHECK(d.first == doctest::Approx(test::central_first(f, r, 1e-6)).epsilon(1e-7));
        CHECK(d.second == doctest::Approx(test::central_second(f, r, 1e-4)).epsilon(1e-5));
    }
}

TEST_CASE("worked case") {
    CHECK(critical::r0_prime(kWorked) == 1.0);
    const auto den = critical::barrier_denominator(kWorked);
    CHECK(den.generic == 8.0);
    CHECK(den.simplified == 8.0);
    CHECK(critical::lambda_c_bound(kWorked, 0) == 0.0);
    CHECK(critical::lambda_c_bound(kWorked, 1) == 0.5);
    CHECK(critical::lambda_c_bound(kWorked, 2) == 1.5);
    const auto l = critical::ell_c_plus(kWorked, 1.0);
    CHECK(l.simplified == 2.0);
    CHECK(l.generic == 2.0);
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(critical::r0_prime({1.0, 0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(critical::r0_prime({1.0, 1.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(critical::ell_c_plus(kWorked, 0.0), std::domain_error);
    CHECK_THROWS_AS(critical::ell_c_plus(kWorked, -1.0), std::domain_error);
}

TEST_CASE("generic and simplified denominators agree on random triples") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const auto den = critical::barrier_denominator(p);
        CHECK(std::abs(den.generic - den.simplified) <= 1e-12 * den.simplified);
    }
}

TEST_CASE("closed-form r0' is the root of 3V' + rV''") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const double closed = critical::r0_prime(p);
        CHECK(std::abs(critical::r0_prime_numeric(p) - closed) <= 1e-10 * closed);
        // hand root of 6 delta r - 2 A / r^2 = 0, independent of the library
        CHECK(closed == doctest::Approx(std::cbrt(p.a_coef / (8.0 * p.delta))).epsilon(1e-14));
    }
}

TEST_CASE("r0' does not depend on B") {
    for (double b : {0.0, 1e-3, 1.0, 1e3}) {
        CHECK(critical::r0_prime({1.0, 2.0, 5.0, b}) == critical::r0_prime({1.0, 2.0, 5.0, 0.0}));
        CHECK(critical::r0_prime_numeric({1.0, 2.0, 5.0, b}) ==
              doctest::Approx(critical::r0_prime({1.0, 2.0, 5.0, 0.0})).epsilon(1e-12));
    }
}

TEST_CASE("ell_c+ scales with sqrt(lambda)") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_params(rng);
        const auto one = critical::ell_c_plus(p, 1.0);
        for (double s : {4.0, 16.0, 0.25}) {
            const auto l = critical::ell_c_plus(p, s);
            CHECK(l.simplified == std::sqrt(s) * one.simplified);
            CHECK(l.generic == std::sqrt(s) * one.generic);
        }
    }
}

TEST_CASE("ell_c+ bounds the admissible ell from above") {
    // The largest ell with lambda_c(ell) <= lambda satisfies ell(ell+1) <= lambda D / 2,
    // so it never exceeds ell_c+ and the next integer above ell_c+ is excluded.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lam(0.1, 50.0);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const double lambda = lam(rng);
        const double bound = critical::ell_c_plus(p, lambda).generic;
        if (bound > 1e4) continue;
        unsigned admissible = 0;
        while (critical::lambda_c_bound(p, admissible + 1) <= lambda) ++admissible;
        CHECK(admissible <= bound);
        const auto above = static_cast<unsigned>(std::floor(bound)) + 1;
        CHECK(critical::lambda_c_bound(p, above) > lambda);
    }
    // the worked case: ell_c+ = 2 but lambda_c(2) = 1.5 > 1
    CHECK(critical::lambda_c_bound(kWorked, 1) <= 1.0);
    CHECK(critical::lambda_c_bound(kWorked, 2) > 1.0);
}
