#include "fracbern/one_free.hpp"

#include <cmath>
#include <numbers>

#include "fracbern/errors.hpp"
#include "fracbern/kernels.hpp"
#include "fracbern/solvers.hpp"

namespace fracbern {

namespace {

void check_parameter(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("free-point parameter a must lie in (0, 1)");
}

// Exterior data of w_a: 1 on (0, 1)^c.
const PiecewiseFunction& exterior_of_unit() {
    static const PiecewiseFunction g{[](double y) { return (y <= 0.0 || y >= 1.0) ? 1.0 : 0.0; }, {0.0, 1.0}};
    return g;
}

// Reference-level scale: radius r corresponds to s = 2r times the reference
// domain (0, 1).
double level_scale(const AlphaContext& ctx, const Interval& domain) {
    return std::pow(2.0 * domain.radius, -ctx.alpha / 2.0);
}

std::vector<double> chebyshev_interior(double lo, double hi, int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        s[static_cast<std::size_t>(k)] =
            lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * (k + 0.5) / n));
    }
    return s;
}

}  // namespace

double profile_w(const AlphaContext& ctx, double a, double x, const QuadratureSpec& spec) {
    check_parameter(a);
    if (!(x > 0.0 && x < a)) throw DomainError("profile_w: x must lie in (0, a)");
    return dirichlet_integral(ctx, OpenInterval(0.0, a), exterior_of_unit(), x, a - x, spec).value;
}

double profile_u(const AlphaContext& ctx, double a, double x, const QuadratureSpec& spec) {
    check_parameter(a);
    if (x <= 0.0 || x >= 1.0) return 0.0;
    if (x >= a) return 1.0;
    if (x >= 0.5 * a) return 1.0 - profile_w(ctx, a, x, spec);
    // Far from the free point the integral over K itself is the regular one.
    const double h = ctx.alpha / 2.0;
    const double gap = a - x;
    OffsetIntegrand f = [&](const QuadPoint& q) {
        const double d = q.from_lo;  // y - a
        return std::pow((a + d) * d, -h) / (gap + d);
    };
    const double weight = ctx.c_alpha * std::pow(x * gap, h);
    QuadratureSpec s = spec.with_exponents(-h, 0.0);
    s.abs_tol = spec.abs_tol / std::max(weight, 1e-300);
    return weight * integrate_finite(f, a, 1.0, s).value;
}

double rate_R(const AlphaContext& ctx, double a) {
    check_parameter(a);
    const double al = ctx.alpha;
    const double h = al / 2.0;
    const double f = hyp2f1(h + 1.0, al, al + 1.0, a);
    return ctx.c_alpha * (ctx.t_alpha * std::pow(a, -h) + std::pow(a, h) * f / al);
}

BernoulliResult mu_constant(const AlphaContext& ctx, const Interval& domain) {
    const ScalarMinimum m = golden_section([&](double a) { return rate_R(ctx, a); }, 0.0, 1.0, 1e-10);
    return BernoulliResult{level_scale(ctx, domain) * m.value, m.x, m.evaluations, m.bracket_width};
}

std::vector<ProfileSample> sample_one_free_profile(const AlphaContext& ctx, const Interval& domain, double a,
                                                   const OneFreeOptions& opts) {
    check_parameter(a);
    const double lo = domain.lo();
    const double r = domain.radius;
    auto to_domain = [&](double s) { return lo + 2.0 * r * s; };

    std::vector<ProfileSample> out;
    for (double t : {1.0, 0.5, 0.1}) out.push_back({lo - t * r, 0.0});
    out.push_back({lo, 0.0});

    const std::vector<double> s = chebyshev_interior(0.0, a, opts.harmonic_points);
    const std::vector<double> u = map_indices(
        s.size(), [&](std::size_t i) { return profile_u(ctx, a, s[i], opts.quad); }, opts.exec);
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back({to_domain(s[i]), u[i]});

    out.push_back({to_domain(a), 1.0});
    for (int k = 1; k <= 16; ++k) out.push_back({to_domain(a + (1.0 - a) * k / 17.0), 1.0});
    // x0 + r itself is left unsampled: u is not defined there.
    for (double t : {0.1, 0.5, 1.0}) out.push_back({domain.hi() + t * r, 0.0});
    return out;
}

std::vector<FreeBoundarySolution> solve_one_free(const AlphaContext& ctx, const Interval& domain, double lambda,
                                                 const OneFreeOptions& opts) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const double scale = level_scale(ctx, domain);
    const double target = lambda / scale;  // level on the reference domain
    const BernoulliResult mu = mu_constant(ctx, Interval(0.5, 0.5));
    const double r_min = mu.constant;

    auto make_solution = [&](double a) {
        FreeBoundarySolution sol{domain, {domain.lo() + 2.0 * domain.radius * a}, 0.0, domain.hi(), lambda, a, {}};
        sol.k_lo = sol.free_points.front();
        sol.profile = sample_one_free_profile(ctx, domain, a, opts);
        return sol;
    };

    if (target < r_min - opts.equality_tol) return {};
    if (std::abs(target - r_min) <= opts.equality_tol) return {make_solution(mu.argmin_a)};

    auto g = [&](double a) { return rate_R(ctx, a) - target; };
    // R diverges at both ends; tighten the outer bracket until it exceeds the
    // target.
    double left = 1e-9;
    while (g(left) <= 0.0) {
        left *= 0.1;
        if (left < 1e-300) throw BracketError("solve_one_free: left root not bracketed");
    }
    double right_gap = 1e-9;
    while (g(1.0 - right_gap) <= 0.0) {
        right_gap *= 0.1;
        if (1.0 - right_gap == 1.0) throw BracketError("solve_one_free: right root not bracketed");
    }
    const double a_star = mu.argmin_a;
    const double g_star = r_min - target;  // < 0
    const double a_small = bisect_root(g, left, a_star, g(left), 1e-15);
    const double a_large = bisect_root(g, a_star, 1.0 - right_gap, g_star, 1e-15);
    // Smaller free point first, as in the i = 1, 2 labelling of the
    // closed-form solutions.
    return {make_solution(a_small), make_solution(a_large)};
}

std::vector<CurveSample> rate_R_curve(const AlphaContext& ctx, int n, Execution exec) {
    if (n < 1) throw DomainError("curve grid must have at least one point");
    const std::vector<double> v = map_indices(
        static_cast<std::size_t>(n), [&](std::size_t k) { return rate_R(ctx, (k + 1.0) / (n + 1.0)); }, exec);
    std::vector<CurveSample> out;
    for (int k = 0; k < n; ++k) out.push_back({(k + 1.0) / (n + 1.0), v[static_cast<std::size_t>(k)]});
    return out;
}

}  // namespace fracbern
