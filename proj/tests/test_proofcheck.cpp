#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracbern/errors.hpp"
#include "fracbern/proofcheck.hpp"
#include "fracbern/two_free.hpp"
#include "oracles.hpp"

using namespace fracbern;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// int over x in (lo, hi) of dx / (x - y)^2 by the oracle, then over y.
double double_integral(double ylo, double yhi, const std::function<double(double)>& inner) {
    return oracle::integrate([&](double y, double, double) { return inner(y); }, ylo, yhi, 30);
}

double to_infinity_from(double x0, double y) {
    // int_{x0}^inf dx / (x - y)^2, x0 > y
    return oracle::integrate_to_inf([&](double x, double) { return 1.0 / ((x - y) * (x - y)); }, x0, x0 - y);
}

double finite_inner(double lo, double hi, double y) {
    return oracle::integrate([&](double x, double, double) { return 1.0 / ((x - y) * (x - y)); }, lo, hi, 30);
}

// The three lower-bound terms as the double integrals they come from.
double f1_by_quadrature(double a, double b) {
    const double pre = 2.0 / (kPi2 * a);
    const double I = pre * double_integral(-a, a, [&](double y) {
        return to_infinity_from(1.0, y) + to_infinity_from(1.0, -y);  // mirror for (-inf, -1)
    });
    const double II = pre * 2.0 * double_integral(-a, a, [&](double y) { return 0.25 * finite_inner(b, 1.0, y); });
    const double III = pre * 2.0 * double_integral(a, b, [&](double y) {
        return 0.25 * (to_infinity_from(1.0, y) + to_infinity_from(1.0, -y));
    });
    return I + II + III;
}

// F2 with every integral by the oracle and the alpha = 1 closed forms of Phi.
double f2_by_quadrature(double a) {
    auto phi_reflected = [&](double y) { return 1.0 / (std::sqrt((y + a) * (y + 1.0)) * (y + a)); };
    const double first = oracle::integrate_to_inf(
        [&](double, double t) { return 1.0 / (std::sqrt((t + 1.0 - a) * t) * (t + 1.0 - a)); }, 1.0, 1.0);
    const double second = oracle::integrate_to_inf([&](double y, double) { return phi_reflected(y); }, a, 2 * a + 0.1);
    const double third = oracle::integrate(
        [&](double y, double fa, double f1o) {
            const double first_iter =
                2.0 / std::numbers::pi * std::atan(std::sqrt(2.0 * a) * std::sqrt(f1o) / (std::sqrt(1.0 + a) * std::sqrt(fa)));
            return phi_reflected(y) * first_iter;
        },
        a, 1.0, 30);
    return std::sqrt(1.0 - a) / std::numbers::pi * (first + second - third);
}

}  // namespace

TEST_CASE("F1 equals the sum of its three double integrals") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> ua(0.05, 0.9);
    for (int k = 0; k < 10; ++k) {
        const double a = ua(rng);
        const double b = std::uniform_real_distribution<double>(a + 0.02, 0.98)(rng);
        CHECK(std::abs(f1(a, b) - f1_by_quadrature(a, b)) < 1e-8);
    }
}

TEST_CASE("F1 domain and divergence") {
    CHECK_THROWS_AS(f1(0.5, 0.5), DomainError);
    CHECK_THROWS_AS(f1(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(f1(0.5, 1.0), DomainError);
    CHECK(f1(0.5, 0.5001) > f1(0.5, 0.6));
    CHECK(f1(0.5, 0.9999) > f1(0.5, 0.7));
}

TEST_CASE("F1 infimum") {
    const F1Minimum m = f1_infimum(400);
    CHECK(m.value >= 1.1582);
    CHECK(std::sqrt(m.value) >= 1.0761);
    CHECK(m.value <= m.grid_value);
    CHECK(m.value == doctest::Approx(f1(m.a, m.b)));
    CHECK(std::abs(f1_infimum(800).value - m.value) < 1e-3);
    CHECK(std::abs(f1_infimum(100).value - m.value) < 1e-3);
    CHECK_THROWS_AS(f1_infimum(50), DomainError);
}

TEST_CASE("F2") {
    CHECK(f2(0.34) < 1.03);
    CHECK(f2(0.99) > f2(0.5));
    const AlphaContext c = make_alpha_context(1.0);
    for (double a : {0.2, 0.34, 0.5, 0.7}) {
        CHECK(f2(a) == doctest::Approx(f2_by_quadrature(a)).epsilon(1e-9));
        CHECK(f2(a) >= psi(c, a));
    }
    CHECK_THROWS_AS(f2(1.0), DomainError);
}

TEST_CASE("proof report") {
    const ProofReport r = check_inequality();
    CHECK(r.conclusion_holds);
    CHECK(r.conclusion_holds == (std::sqrt(r.f1_infimum_estimate) > r.f2_minimum));
    CHECK(r.lambda_lower_from_f1 == std::sqrt(r.f1_infimum_estimate));
    CHECK(r.lambda_lower_from_f1 >= 1.0761);
    CHECK(r.f2_minimum < 1.03);
    CHECK(r.f2_minimum <= r.f2_at_034);
    CHECK(r.f1_min_a < r.f1_min_b);
}
