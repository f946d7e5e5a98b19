#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cstdlib>
#include <stdexcept>

#include "fracbern/one_free.hpp"
#include "fracbern/parallel.hpp"
#include "fracbern/proofcheck.hpp"
#include "fracbern/two_free.hpp"

using namespace fracbern;

// The OpenMP paths must reproduce the serial reference bit for bit.

TEST_CASE("map_indices") {
    auto f = [](std::size_t i) { return std::sqrt(static_cast<double>(i)) * 1.5; };
    CHECK(map_indices(1000, f, Execution::serial) == map_indices(1000, f, Execution::parallel));
    CHECK(map_indices(0, f).empty());
    CHECK_THROWS_AS(map_indices(
                        100,
                        [](std::size_t i) -> double {
                            if (i == 37) throw std::runtime_error("boom");
                            return 0.0;
                        },
                        Execution::parallel),
                    std::runtime_error);
}

TEST_CASE("series operator") {
    const NeumannSolution s = neumann_f(make_alpha_context(1.0), 0.3);
    std::vector<double> a, b;
    apply_series_operator(s, s.node_f, a, Execution::serial);
    apply_series_operator(s, s.node_f, b, Execution::parallel);
    CHECK(a == b);
    const AlphaContext c = make_alpha_context(0.5);
    CHECK(neumann_f(c, 0.4, {}, {}, Execution::serial).node_f == neumann_f(c, 0.4, {}, {}, Execution::parallel).node_f);
}

TEST_CASE("curves") {
    const AlphaContext c = make_alpha_context(1.0);
    auto values = [](const std::vector<CurveSample>& v) {
        std::vector<double> out;
        for (const auto& p : v) out.push_back(p.value);
        return out;
    };
    CHECK(values(rate_R_curve(c, 50, Execution::serial)) == values(rate_R_curve(c, 50, Execution::parallel)));
    CHECK(values(psi_curve(c, 20, {}, {}, Execution::serial)) == values(psi_curve(c, 20, {}, {}, Execution::parallel)));
}

TEST_CASE("F1 grid scan") {
    const F1Minimum s = f1_infimum(150, 10, Execution::serial);
    const F1Minimum p = f1_infimum(150, 10, Execution::parallel);
    CHECK(s.value == p.value);
    CHECK(s.a == p.a);
    CHECK(s.b == p.b);
}

TEST_CASE("thread cap from the environment") {
    const int before = max_threads();
    setenv("FRACBERN_THREADS", "1", 1);
    configure_threads_from_env();
    CHECK(max_threads() == 1);
    setenv("FRACBERN_THREADS", "junk", 1);
    configure_threads_from_env();
    CHECK(max_threads() == 1);
    omp_set_num_threads(before);
    unsetenv("FRACBERN_THREADS");
}
