#include "fracbern/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracbern/errors.hpp"
#include "fracbern/kernels.hpp"
#include "fracbern/solvers.hpp"
#include "fracbern/specfn.hpp"

namespace fracbern {

namespace {

constexpr double kMargin = 1e-4;

bool admissible(double a, double b) {
    return a >= kMargin && b - a >= kMargin && b <= 1.0 - kMargin;
}

const AlphaContext& alpha_one() {
    static const AlphaContext ctx = make_alpha_context(1.0);
    return ctx;
}

}  // namespace

double f1(double a, double b) {
    if (!(a > 0.0 && a < b && b < 1.0)) throw DomainError("f1: requires 0 < a < b < 1");
    const double pi2a = std::numbers::pi * std::numbers::pi * a;
    const double t1 = 2.0 / pi2a * std::log((1.0 + a) * (1.0 + a) / ((1.0 - a) * (1.0 - a)));
    const double t2 = 1.0 / pi2a * std::log((1.0 - a) * (a + b) / ((1.0 + a) * (b - a)));
    const double t3 = 1.0 / pi2a * std::log((1.0 - a) * (1.0 + b) / ((1.0 + a) * (1.0 - b)));
    return t1 + t2 + t3;
}

F1Minimum f1_infimum(int grid, int refine_iters, Execution exec) {
    if (grid < 100) throw DomainError("f1_infimum: grid must be at least 100");
    if (refine_iters < 0) throw DomainError("f1_infimum: refine_iters must be non-negative");
    const double step0 = (1.0 - 2.0 * kMargin) / (grid - 1);
    auto node = [&](int i) { return kMargin + step0 * i; };

    // Row minima over b for each a, then the overall minimum.
    std::vector<double> row_b(static_cast<std::size_t>(grid), 0.0);
    const std::vector<double> row_min = map_indices(
        static_cast<std::size_t>(grid),
        [&](std::size_t i) {
            const double a = node(static_cast<int>(i));
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < grid; ++j) {
                const double b = node(j);
                if (!admissible(a, b)) continue;
                const double v = f1(a, b);
                if (v < best) {
                    best = v;
                    row_b[i] = b;
                }
            }
            return best;
        },
        exec);
    std::size_t k = 0;
    for (std::size_t i = 1; i < row_min.size(); ++i) {
        if (row_min[i] < row_min[k]) k = i;
    }
    F1Minimum m{row_min[k], node(static_cast<int>(k)), row_b[k], row_min[k]};

    double step = step0;
    for (int it = 0; it < refine_iters; ++it) {
        bool moved = true;
        while (moved) {
            moved = false;
            const double cand[4][2] = {
                {m.a + step, m.b}, {m.a - step, m.b}, {m.a, m.b + step}, {m.a, m.b - step}};
            for (const auto& c : cand) {
                if (!admissible(c[0], c[1])) continue;
                const double v = f1(c[0], c[1]);
                if (v < m.value) {
                    m.value = v;
                    m.a = c[0];
                    m.b = c[1];
                    moved = true;
                }
            }
        }
        step *= 0.5;
    }
    return m;
}

double f2(double a, const QuadratureSpec& spec) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("f2: a must lie in (0, 1)");
    const AlphaContext& ctx = alpha_one();
    const double len = 1.0 - a;

    // Integral of Phi(a, -y) over (a, inf) in s = y - a.
    OffsetIntegrand reflected = [&](const QuadPoint& q) { return phi(ctx, a, -(a + q.from_lo)); };
    std::vector<double> cuts;
    for (double c = 2.0 * a; c < 1.0 + a; c *= 4.0) cuts.push_back(c);
    const double second = integrate_semi_infinite(reflected, 0.0, cuts, -2.0, spec.with_exponents(0.0, 0.0)).value;

    // Against the first iterate; split where its arctan argument is 1.
    OffsetIntegrand coupled = [&](const QuadPoint& q) {
        const double arg = std::sqrt(1.0 + a) * std::sqrt(q.from_lo) / (std::sqrt(2.0 * a) * std::sqrt(q.from_hi));
        const double first = 2.0 / std::numbers::pi * std::atan(1.0 / arg);
        return phi(ctx, a, -(a + q.from_lo)) * first;
    };
    const double y_star = a * (3.0 + a) / (1.0 + 3.0 * a);
    const double pts[3] = {a, y_star, 1.0};
    const double third = integrate_pieces(coupled, pts, spec.with_exponents(0.0, 0.0)).value;

    const double first = ctx.t_alpha / len;
    return std::sqrt(len) / std::numbers::pi * (first + second - third);
}

ProofReport check_inequality(int grid, int refine_iters, Execution exec) {
    const F1Minimum m = f1_infimum(grid, refine_iters, exec);
    constexpr int n = 64;
    const std::vector<double> scan = map_indices(
        n, [&](std::size_t k) { return f2((k + 1.0) / (n + 1.0)); }, exec);
    std::size_t k = 0;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        if (scan[i] < scan[k]) k = i;
    }
    const double lo = k / (n + 1.0);
    const double hi = (k + 2.0) / (n + 1.0);
    const ScalarMinimum best = golden_section([](double a) { return f2(a); }, lo, hi, 1e-8);

    ProofReport r{};
    r.f1_grid = grid;
    r.f1_infimum_estimate = m.value;
    r.f1_min_a = m.a;
    r.f1_min_b = m.b;
    r.f2_at_034 = f2(0.34);
    r.f2_minimum = std::min(best.value, scan[k]);
    r.f2_argmin = best.value <= scan[k] ? best.x : (k + 1.0) / (n + 1.0);
    r.lambda_lower_from_f1 = std::sqrt(m.value);
    r.conclusion_holds = r.lambda_lower_from_f1 > r.f2_minimum;
    r.note = "f1_infimum_estimate is the smallest value found by a floating-point search, an upper bound on the "
             "infimum and not a certified enclosure";
    return r;
}

}  // namespace fracbern
