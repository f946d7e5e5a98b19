#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracbern/errors.hpp"
#include "fracbern/two_free.hpp"
#include "oracles.hpp"

using namespace fracbern;

namespace {

double closed_first(double a, double y) {
    return 1.0 - 2.0 / std::numbers::pi * std::atan(std::sqrt(1.0 + a) * std::sqrt(y - a) /
                                                    (std::sqrt(2.0 * a) * std::sqrt(1.0 - y)));
}

// sup over a fine grid of the mirror mass, each by the oracle quadrature.
double oracle_contraction(double alpha, double a) {
    double best = 0.0;
    for (int k = 1; k < 400; ++k) {
        const double x = a + (1.0 - a) * k / 400.0;
        const double m = oracle::integrate(
            [&](double y, double, double) { return oracle::poisson(alpha, a, 1.0, x, y); }, -1.0, -a, 30);
        best = std::max(best, m);
    }
    return best;
}

}  // namespace

TEST_CASE("series spec validation") {
    SeriesSpec s;
    s.grid_points = 8;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = SeriesSpec{};
    s.max_terms = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK_THROWS_AS(neumann_f(make_alpha_context(1.0), 1.0), DomainError);
}

TEST_CASE("first iterate") {
    const AlphaContext c1 = make_alpha_context(1.0);
    // alpha = 1 closed form equals the P_(a,1) mass of (-a, a)
    const double a = 0.34;
    const double ref = oracle::first_iterate(1.0, a, 0.5 - a, 0.5);
    CHECK(ref == doctest::Approx(closed_first(a, 0.5)).epsilon(1e-11));
    CHECK(neumann_first_term(c1, a, 0.5 - a, 0.5) == doctest::Approx(ref).epsilon(1e-12));
    // quadrature path at other alpha
    for (double alpha : {0.5, 1.5}) {
        const AlphaContext c = make_alpha_context(alpha);
        for (double y : {0.35, 0.6, 0.99}) {
            CHECK(neumann_first_term(c, a, y - a, 1.0 - y) ==
                  doctest::Approx(oracle::first_iterate(alpha, a, y - a, 1.0 - y)).epsilon(1e-9));
        }
    }
}

TEST_CASE("contraction ratio") {
    const AlphaContext c = make_alpha_context(1.0);
    const double q = contraction_delta(c, 0.5);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    CHECK(q == doctest::Approx(oracle_contraction(1.0, 0.5)).epsilon(1e-5));
    CHECK(contraction_delta(c, 0.7) < q);
    CHECK(contraction_delta(c, 0.9) < contraction_delta(c, 0.7));
    for (double alpha : {0.25, 1.75}) {
        for (double a : {0.01, 0.5, 0.99}) CHECK(contraction_delta(make_alpha_context(alpha), a) < 1.0);
    }
}

TEST_CASE("series solution against the fixed-point oracle") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        for (double a : {0.34, 0.6}) {
            const AlphaContext c = make_alpha_context(alpha);
            const NeumannSolution s = neumann_f(c, a);
            const oracle::Profile p = oracle::fixed_point_profile(alpha, a);
            for (double y : {a + 1e-6, 0.5 * (a + 1.0), 0.7, 0.9, 1.0 - 1e-6}) {
                if (!(y > a)) continue;
                CHECK(s.evaluate(y) == doctest::Approx(oracle::profile_at(p, y)).epsilon(1e-7));
            }
            CHECK(s.tail_bound <= 1e-8);
            CHECK(s.delta > 0.0);
            CHECK(s.delta < 1.0);
            for (std::size_t i = 0; i < s.node_f.size(); ++i) {
                CHECK(s.node_f[i] >= 0.0);
                CHECK(s.node_f[i] <= 1.0);
                CHECK(s.node_f[i] >= s.node_f1[i]);
            }
        }
    }
}

TEST_CASE("assembled profile") {
    const NeumannSolution s = neumann_f(make_alpha_context(1.0), 0.4);
    for (int k = 0; k < 50; ++k) {
        const double x = -1.5 + 3.0 * (k + 0.5) / 50.0;
        CHECK(s.profile(x) == s.profile(-x));
    }
    CHECK(s.profile(0.2) == 1.0);
    CHECK(s.profile(-1.0) == 0.0);
    CHECK(s.profile(0.41) < 1.0);
    CHECK(s.profile(0.41) > s.profile(0.8));
    CHECK_THROWS_AS(s.evaluate(0.4), DomainError);
}

TEST_CASE("tail bound is honest") {
    for (double alpha : {0.5, 1.0}) {
        const AlphaContext c = make_alpha_context(alpha);
        const NeumannSolution s4 = neumann_fixed_terms(c, 0.3, 4);
        const NeumannSolution s8 = neumann_fixed_terms(c, 0.3, 8);
        CHECK(s4.terms_used == 4);
        double change = 0.0;
        for (std::size_t i = 0; i < s4.node_f.size(); ++i) {
            change = std::max(change, std::abs(s8.node_f[i] - s4.node_f[i]));
        }
        CHECK(change > 0.0);
        CHECK(change < s4.tail_bound);
    }
}

TEST_CASE("series that cannot meet its tolerance reports the partial sum") {
    SeriesSpec s;
    s.max_terms = 2;
    s.tail_tol = 1e-14;
    try {
        neumann_f(make_alpha_context(1.0), 0.1, s);
        FAIL("expected SeriesAccuracyError");
    } catch (const SeriesAccuracyError& e) {
        CHECK(e.partial().terms_used == 2);
        CHECK(e.error_estimate() > 1e-14);
    }
}

TEST_CASE("reflected Phi integral closed form at alpha = 1") {
    const AlphaContext c = make_alpha_context(1.0);
    for (double a : {0.01, 0.3, 0.9}) {
        // int_{2a}^inf v^{-3/2} (v + b)^{-1/2} dv with b = 1 - a
        const double b = 1.0 - a;
        const double ref = 2.0 * std::sqrt(1.0 + a) / (b * std::sqrt(2.0 * a)) - 2.0 / b;
        CHECK(phi_reflected_integral(c, a) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("Psi against the oracle pipeline") {
    for (double alpha : {0.5, 1.0}) {
        const AlphaContext c = make_alpha_context(alpha);
        for (double a : {0.34, 0.5}) {
            const double ref = oracle::psi(oracle::fixed_point_profile(alpha, a));
            CHECK(std::abs(psi(c, a) - ref) < 1e-6);
        }
    }
    // Close to the left end, where Psi grows only logarithmically.
    const double ref = oracle::psi(oracle::fixed_point_profile(1.0, 0.01));
    CHECK(std::abs(psi(make_alpha_context(1.0), 0.01) - ref) < 1e-6);
}

TEST_CASE("Psi at alpha = 1 near the minimum") {
    const double v = psi(make_alpha_context(1.0), 0.34);
    CHECK(v > 0.7957);
    CHECK(v < 1.03);
}

TEST_CASE("pointwise bounds") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        const AlphaContext c = make_alpha_context(alpha);
        for (int k = 1; k <= 64; k += 7) {
            const double a = k / 65.0;
            const double v = psi(c, a);
            CHECK(v >= psi_lower_bound(c, a));
            CHECK(v <= psi_upper_bound(c, a));
        }
    }
}

TEST_CASE("closed-form bracket") {
    const Bounds b = bounds_LU(make_alpha_context(1.0));
    CHECK(b.lower == doctest::Approx(2.5 / std::numbers::pi).epsilon(1e-14));
    CHECK(b.upper == doctest::Approx(2.5 * std::sqrt(2.0) / std::numbers::pi).epsilon(1e-14));
    for (int k = 1; k <= 50; ++k) {
        const Bounds bk = bounds_LU(make_alpha_context(2.0 * k / 51.0));
        CHECK(bk.lower < bk.upper);
    }
}

TEST_CASE("lambda constant at alpha = 1 and scaling") {
    const AlphaContext c = make_alpha_context(1.0);
    const BernoulliResult r = lambda_constant(c, Interval(0.0, 1.0));
    CHECK(r.constant >= 0.7957747);
    CHECK(r.constant <= 1.03);
    CHECK(r.bracket_width <= 1e-6);
    const BernoulliResult r4 = lambda_constant(c, Interval(-2.0, 4.0));
    CHECK(r4.constant == doctest::Approx(r.constant / 2.0).epsilon(1e-6));
}

TEST_CASE("two free points: counts and symmetry") {
    const AlphaContext c = make_alpha_context(1.0);
    TwoFreeOptions o;
    o.profile_points = 16;
    const Interval d(0.0, 1.0);
    const TwoFreeOutcome below = solve_two_free(c, d, 0.9, o);
    CHECK(below.solutions.empty());
    const double lam = below.constant.constant;
    const TwoFreeOutcome at = solve_two_free(c, d, lam, o);
    REQUIRE(at.solutions.size() == 1);
    CHECK(at.solutions[0].parameter_a == doctest::Approx(below.constant.argmin_a));
    const TwoFreeOutcome above = solve_two_free(c, d, 1.2, o);
    REQUIRE(above.solutions.size() == 2);
    CHECK(above.warnings.empty());
    for (const auto& s : above.solutions) {
        CHECK(s.k_lo == -s.k_hi);
        CHECK(psi(c, s.parameter_a) == doctest::Approx(1.2).epsilon(1e-8));
        const std::size_t n = s.profile.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s.profile[i].x == -s.profile[n - 1 - i].x);
            CHECK(s.profile[i].u == s.profile[n - 1 - i].u);
        }
    }
    CHECK(above.solutions[0].parameter_a < above.solutions[1].parameter_a);
    // translated and scaled domain
    const TwoFreeOutcome moved = solve_two_free(c, Interval(5.0, 4.0), 0.6, o);
    REQUIRE(moved.solutions.size() == 2);
    CHECK(moved.solutions[0].k_lo + moved.solutions[0].k_hi == doctest::Approx(10.0));
}

TEST_CASE("unimodality diagnostic") {
    const UnimodalityReport r = unimodality_scan(make_alpha_context(1.0), 128);
    CHECK(r.sufficient_resolution);
    CHECK(r.consistent_with_unimodal);
    CHECK(r.samples.size() == 128);
    const UnimodalityReport coarse = unimodality_scan(make_alpha_context(1.0), 3);
    CHECK_FALSE(coarse.sufficient_resolution);
    CHECK_FALSE(coarse.consistent_with_unimodal);
    CHECK(coarse.summary.find("insufficient") != std::string::npos);
}
