#include "fracbern/two_free.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "fracbern/solvers.hpp"

namespace fracbern {

namespace {

void check_parameter(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("free-point parameter a must lie in (0, 1)");
}

std::vector<double> geometric_cuts(double lo, double first, double hi) {
    std::vector<double> cuts{lo};
    for (double c = first; c < hi; c *= 4.0) {
        if (c > cuts.back()) cuts.push_back(c);
    }
    if (hi > cuts.back()) cuts.push_back(hi);
    return cuts;
}

// Mass of P_(a,1)(x, .) on (-1, -a) for x = a + from_a.
double mass_on_mirror(const AlphaContext& ctx, double a, double from_a, const QuadratureSpec& spec) {
    const double h = ctx.alpha / 2.0;
    const double len = 1.0 - a;
    const double from_1 = len - from_a;
    const double weight = ctx.c_alpha * std::pow(from_a * from_1, h);
    // t = a - y runs over (2a, 1 + a).
    OffsetIntegrand f = [&](const QuadPoint& q) {
        const double t = 2.0 * a + q.from_lo;
        return std::pow(t * (t + len), -h) / (from_a + t);
    };
    const std::vector<double> cuts = geometric_cuts(0.0, std::max(from_a, 2.0 * a), 1.0 - a);
    QuadratureSpec s = spec.with_exponents(0.0, 0.0);
    s.abs_tol = spec.abs_tol / std::max(weight, 1e-300);
    return weight * integrate_pieces(f, cuts, s).value;
}

struct NodeRule {
    std::vector<double> from_a, from_1, weight;
};

// Tanh-sinh rule on (a, 1) with exact endpoint offsets.
NodeRule tanh_sinh_rule(double a, int n) {
    const double len = 1.0 - a;
    const double u_max = 0.5 * (36.8 + std::max(0.0, std::log(1.0 / a)));
    const double t_max = std::asinh(2.0 * u_max / std::numbers::pi);
    const double step = 2.0 * t_max / (n - 1);
    NodeRule r;
    for (int k = 0; k < n; ++k) {
        const double t = -t_max + k * step;
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        const double cu = std::cosh(u);
        r.from_a.push_back(len / (1.0 + std::exp(-2.0 * u)));
        r.from_1.push_back(len / (1.0 + std::exp(2.0 * u)));
        r.weight.push_back(step * 0.5 * std::numbers::pi * std::cosh(t) * len / (2.0 * cu * cu));
    }
    return r;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

// Set-up shared by both series drivers: nodes, first iterate, operator, q.
NeumannSolution prepare(const AlphaContext& ctx, double a, const SeriesSpec& sspec, const QuadratureSpec& qspec,
                        Execution exec) {
    check_parameter(a);
    sspec.validate();
    qspec.validate();
    const double h = ctx.alpha / 2.0;
    const std::size_t n = static_cast<std::size_t>(sspec.grid_points);
    const NodeRule rule = tanh_sinh_rule(a, sspec.grid_points);

    NeumannSolution sol{ctx, qspec, a, {}, {}, 0, 0.0, 0.0, rule.from_a, rule.from_1, rule.weight, {}, {}, {}};
    sol.node_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.node_x[i] = rule.from_a[i] <= rule.from_1[i] ? a + rule.from_a[i] : 1.0 - rule.from_1[i];
    }
    sol.node_f1 = map_indices(
        n, [&](std::size_t i) { return neumann_first_term(ctx, a, rule.from_a[i], rule.from_1[i], qspec); }, exec);

    sol.op_matrix.resize(n * n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double g = std::pow((2.0 * a + rule.from_a[j]) * (2.0 - rule.from_1[j]), -h);
        col[j] = rule.weight[j] * g;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double w = ctx.c_alpha * std::pow(rule.from_a[i] * rule.from_1[i], h);
        for (std::size_t j = 0; j < n; ++j) {
            sol.op_matrix[i * n + j] = w * col[j] / (2.0 * a + rule.from_a[i] + rule.from_a[j]);
        }
    }
    const double q = contraction_delta(ctx, a, qspec);
    sol.delta = 1.0 - q;
    return sol;
}

double tail_after(const NeumannSolution& sol, int terms) {
    const double q = 1.0 - sol.delta;
    return std::pow(q, terms) / sol.delta * max_of(sol.node_f1);
}

void finish(NeumannSolution& sol, const std::vector<double>& sum, int terms) {
    sol.node_f = sum;
    sol.terms_used = terms;
    sol.tail_bound = tail_after(sol, terms);
    const double h = sol.ctx.alpha / 2.0;
    const std::size_t n = sum.size();
    sol.extension.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double g = std::pow((2.0 * sol.a + sol.node_from_a[j]) * (2.0 - sol.node_from_1[j]), -h);
        sol.extension[j] = sol.node_weight[j] * g * sum[j];
    }
}

NeumannSolution run_series(const AlphaContext& ctx, double a, int fixed_terms, const SeriesSpec& sspec,
                           const QuadratureSpec& qspec, Execution exec) {
    NeumannSolution sol = prepare(ctx, a, sspec, qspec, exec);
    std::vector<double> sum = sol.node_f1;
    std::vector<double> term = sol.node_f1;
    std::vector<double> next(term.size());
    int terms = 1;
    auto more = [&] {
        if (fixed_terms > 0) return terms < fixed_terms;
        return terms < sspec.max_terms && tail_after(sol, terms) > sspec.tail_tol;
    };
    while (more()) {
        apply_series_operator(sol, term, next, exec);
        std::swap(term, next);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
        ++terms;
    }
    finish(sol, sum, terms);
    if (fixed_terms <= 0 && sol.tail_bound > sspec.tail_tol) {
        throw SeriesAccuracyError("neumann_f: tail bound above tolerance at max_terms", sol);
    }
    return sol;
}

double psi_at(const AlphaContext& ctx, double a, const SeriesSpec& sspec, const QuadratureSpec& qspec,
              Execution exec) {
    return psi_from_solution(neumann_f(ctx, a, sspec, qspec, exec), qspec);
}

struct MinimumScan {
    std::vector<CurveSample> grid;
    BernoulliResult best;  // reference domain
};

MinimumScan scan_minimum(const AlphaContext& ctx, const SeriesSpec& sspec, const QuadratureSpec& qspec,
                         Execution exec) {
    constexpr int n = 64;
    MinimumScan out;
    out.grid = psi_curve(ctx, n, sspec, qspec, exec);
    std::size_t k = 0;
    for (std::size_t i = 1; i < out.grid.size(); ++i) {
        if (out.grid[i].value < out.grid[k].value) k = i;
    }
    const double lo = k == 0 ? 0.0 : out.grid[k - 1].a;
    const double hi = k + 1 == out.grid.size() ? 1.0 : out.grid[k + 1].a;
    const ScalarMinimum m = golden_section([&](double a) { return psi_at(ctx, a, sspec, qspec, exec); }, lo, hi, 1e-6);
    if (m.value <= out.grid[k].value) {
        out.best = BernoulliResult{m.value, m.x, n + m.evaluations, m.bracket_width};
    } else {
        out.best = BernoulliResult{out.grid[k].value, out.grid[k].a, n + m.evaluations, m.bracket_width};
    }
    return out;
}

std::vector<double> chebyshev_interior(double lo, double hi, int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        s[static_cast<std::size_t>(k)] =
            lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * (k + 0.5) / n));
    }
    return s;
}

FreeBoundarySolution make_two_free_solution(const AlphaContext& ctx, const Interval& domain, double lambda, double a,
                                            const TwoFreeOptions& opts) {
    const NeumannSolution sol = neumann_f(ctx, a, opts.series, opts.quad, opts.exec);
    const double x0 = domain.center;
    const double r = domain.radius;
    FreeBoundarySolution out{domain, {x0 - a * r, x0 + a * r}, x0 - a * r, x0 + a * r, lambda, a, {}};

    std::vector<ProfileSample> right;  // reference s >= 0
    const std::vector<double> s = chebyshev_interior(a, 1.0, opts.profile_points);
    const std::vector<double> f = map_indices(
        s.size(), [&](std::size_t i) { return sol.evaluate(s[i]); }, opts.exec);
    for (int k = 0; k <= 16; ++k) right.push_back({a * k / 16.0, 1.0});
    for (std::size_t i = 0; i < s.size(); ++i) right.push_back({s[i], f[i]});
    right.push_back({1.0, 0.0});
    for (double t : {0.1, 0.5, 1.0}) right.push_back({1.0 + t, 0.0});

    for (auto it = right.rbegin(); it != right.rend(); ++it) {
        if (it->x > 0.0) out.profile.push_back({x0 - r * it->x, it->u});
    }
    for (const ProfileSample& p : right) out.profile.push_back({x0 + r * p.x, p.u});
    return out;
}

}  // namespace

void SeriesSpec::validate() const {
    if (max_terms < 1) throw DomainError("series max_terms must be at least 1");
    if (!(tail_tol > 0.0)) throw DomainError("series tail_tol must be positive");
    if (grid_points < 16) throw DomainError("series grid_points must be at least 16");
}

SeriesAccuracyError::SeriesAccuracyError(const std::string& what, NeumannSolution partial)
    : AccuracyError(what, partial.node_f.empty() ? 0.0 : max_of(partial.node_f), partial.tail_bound),
      partial_(std::move(partial)) {}

double NeumannSolution::evaluate(double x) const {
    if (!(x > a && x < 1.0)) throw DomainError("NeumannSolution::evaluate: x must lie in (a, 1)");
    return evaluate_offsets(x - a, 1.0 - x);
}

double NeumannSolution::evaluate_offsets(double from_a, double from_1) const {
    const double h = ctx.alpha / 2.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < extension.size(); ++j) {
        acc += extension[j] / (2.0 * a + from_a + node_from_a[j]);
    }
    const double w = ctx.c_alpha * std::pow(from_a * from_1, h);
    return neumann_first_term(ctx, a, from_a, from_1, quad) + w * acc;
}

double NeumannSolution::profile(double x) const {
    const double ax = std::abs(x);
    if (ax <= a) return 1.0;
    if (ax >= 1.0) return 0.0;
    return evaluate_offsets(ax - a, 1.0 - ax);
}

double neumann_first_term(const AlphaContext& ctx, double a, double from_a, double from_1,
                          const QuadratureSpec& spec) {
    check_parameter(a);
    if (!(from_a > 0.0) || !(from_1 > 0.0)) throw DomainError("neumann_first_term: x must lie in (a, 1)");
    if (ctx.alpha == 1.0) {
        const double arg = std::sqrt(1.0 + a) * std::sqrt(from_a) / (std::sqrt(2.0 * a) * std::sqrt(from_1));
        return 2.0 / std::numbers::pi * std::atan(1.0 / arg);
    }
    const double h = ctx.alpha / 2.0;
    const double len = 1.0 - a;
    const double weight = ctx.c_alpha * std::pow(from_a * from_1, h);
    // t = a - y runs over (0, 2a).
    OffsetIntegrand f = [&](const QuadPoint& q) {
        const double t = q.from_lo;
        return std::pow(t * (t + len), -h) / (from_a + t);
    };
    const std::vector<double> cuts = geometric_cuts(0.0, std::min(from_a, a), 2.0 * a);
    QuadratureSpec s = spec.with_exponents(-h, 0.0);
    s.abs_tol = spec.abs_tol / std::max(weight, 1e-300);
    return weight * integrate_pieces(f, cuts, s).value;
}

double contraction_delta(const AlphaContext& ctx, double a, const QuadratureSpec& spec) {
    check_parameter(a);
    constexpr int n = 128;
    const double len = 1.0 - a;
    std::vector<double> q(n);
    int best = 0;
    for (int k = 0; k < n; ++k) {
        q[static_cast<std::size_t>(k)] = mass_on_mirror(ctx, a, len * (k + 0.5) / n, spec);
        if (q[static_cast<std::size_t>(k)] > q[static_cast<std::size_t>(best)]) best = k;
    }
    const double lo = len * std::max(0.0, best - 0.5) / n;
    const double hi = len * std::min(double(n), best + 1.5) / n;
    const ScalarMinimum m =
        golden_section([&](double d) { return -mass_on_mirror(ctx, a, d, spec); }, lo, hi, 1e-9 * len);
    return std::max(q[static_cast<std::size_t>(best)], -m.value);
}

void apply_series_operator(const NeumannSolution& sol, const std::vector<double>& in, std::vector<double>& out,
                           Execution exec) {
    const long n = static_cast<long>(in.size());
    out.assign(in.size(), 0.0);
    const double* m = sol.op_matrix.data();
    auto row = [&](long i) {
        const double* mi = m + i * n;
        double acc = 0.0;
        for (long j = 0; j < n; ++j) acc += mi[j] * in[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    };
    if (exec == Execution::serial) {
        for (long i = 0; i < n; ++i) row(i);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) row(i);
}

NeumannSolution neumann_f(const AlphaContext& ctx, double a, const SeriesSpec& sspec, const QuadratureSpec& qspec,
                          Execution exec) {
    return run_series(ctx, a, 0, sspec, qspec, exec);
}

NeumannSolution neumann_fixed_terms(const AlphaContext& ctx, double a, int terms, const SeriesSpec& sspec,
                                    const QuadratureSpec& qspec, Execution exec) {
    if (terms < 1) throw DomainError("neumann_fixed_terms: terms must be at least 1");
    return run_series(ctx, a, terms, sspec, qspec, exec);
}

double phi_reflected_integral(const AlphaContext& ctx, double a, const QuadratureSpec& spec) {
    check_parameter(a);
    const double h = ctx.alpha / 2.0;
    // s = y - a >= 0.
    OffsetIntegrand f = [&](const QuadPoint& q) {
        const double s = q.from_lo;
        return std::pow((s + 2.0 * a) * (s + 1.0 + a), -h) / (s + 2.0 * a);
    };
    std::vector<double> cuts;
    for (double c = 2.0 * a; c < 1.0 + a; c *= 4.0) cuts.push_back(c);
    return integrate_semi_infinite(f, 0.0, cuts, -ctx.alpha - 1.0, spec.with_exponents(0.0, 0.0)).value;
}

double psi_from_solution(const NeumannSolution& sol, const QuadratureSpec& qspec) {
    const AlphaContext& ctx = sol.ctx;
    const double a = sol.a;
    const double h = ctx.alpha / 2.0;
    const double len = 1.0 - a;
    // The node rule integrates Phi(a, -y) f_a(y) over (a, 1); extension
    // already holds weight * ((y+a)(y+1))^{-h} * f at each node.
    double coupled = 0.0;
    for (std::size_t j = 0; j < sol.extension.size(); ++j) {
        coupled += sol.extension[j] / (2.0 * a + sol.node_from_a[j]);
    }
    const double direct = ctx.t_alpha * std::pow(len, -ctx.alpha);
    const double value = ctx.c_alpha * std::pow(len, h) * (direct + phi_reflected_integral(ctx, a, qspec) - coupled);
    return value;
}

double psi(const AlphaContext& ctx, double a, const SeriesSpec& sspec, const QuadratureSpec& qspec) {
    return psi_at(ctx, a, sspec, qspec, Execution::serial);
}

std::vector<CurveSample> psi_curve(const AlphaContext& ctx, int n, const SeriesSpec& sspec,
                                   const QuadratureSpec& qspec, Execution exec) {
    if (n < 1) throw DomainError("curve grid must have at least one point");
    const std::vector<double> v = map_indices(
        static_cast<std::size_t>(n),
        [&](std::size_t k) { return psi_at(ctx, (k + 1.0) / (n + 1.0), sspec, qspec, Execution::serial); }, exec);
    std::vector<CurveSample> out;
    for (int k = 0; k < n; ++k) out.push_back({(k + 1.0) / (n + 1.0), v[static_cast<std::size_t>(k)]});
    return out;
}

BernoulliResult lambda_constant(const AlphaContext& ctx, const Interval& domain, const SeriesSpec& sspec,
                                const QuadratureSpec& qspec, Execution exec) {
    BernoulliResult b = scan_minimum(ctx, sspec, qspec, exec).best;
    b.constant *= std::pow(domain.radius, -ctx.alpha / 2.0);
    return b;
}

double psi_lower_bound(const AlphaContext& ctx, double a) {
    const double al = ctx.alpha;
    return ctx.c_alpha * std::pow(1.0 - a, al / 2.0) *
           (ctx.t_alpha * std::pow(1.0 - a, -al) + 1.0 / (al * std::pow(2.0, al)));
}

double psi_upper_bound(const AlphaContext& ctx, double a) {
    const double al = ctx.alpha;
    return ctx.c_alpha * std::pow(1.0 - a, -al / 2.0) *
           (ctx.t_alpha + std::pow(1.0 / a - 1.0, al) / (al * std::pow(2.0, al)));
}

Bounds bounds_LU(const AlphaContext& ctx) {
    return Bounds{psi_lower_bound(ctx, 0.0), psi_upper_bound(ctx, 1.0 - ctx.alpha / 2.0)};
}

TwoFreeOutcome solve_two_free(const AlphaContext& ctx, const Interval& domain, double lambda,
                              const TwoFreeOptions& opts) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const double target = lambda * std::pow(domain.radius, ctx.alpha / 2.0);
    const MinimumScan scan = scan_minimum(ctx, opts.series, opts.quad, opts.exec);
    TwoFreeOutcome out;
    out.constant = scan.best;
    out.constant.constant *= std::pow(domain.radius, -ctx.alpha / 2.0);

    const double lmin = scan.best.constant;
    if (target < lmin - opts.equality_tol) return out;
    if (std::abs(target - lmin) <= opts.equality_tol) {
        out.solutions.push_back(make_two_free_solution(ctx, domain, lambda, scan.best.argmin_a, opts));
        return out;
    }

    auto psi_fn = [&](double a) { return psi_at(ctx, a, opts.series, opts.quad, opts.exec); };
    std::vector<CurveSample> pts = scan.grid;
    pts.push_back({scan.best.argmin_a, lmin});
    // Psi diverges at both ends; extend the scan until it exceeds the target.
    for (double a = pts.front().a * 0.1;; a *= 0.1) {
        if (a < 1e-8) {
            out.warnings.push_back("Psi stays below lambda down to a = 1e-8; left root not bracketed");
            break;
        }
        const double v = psi_fn(a);
        pts.push_back({a, v});
        if (v > target) break;
    }
    for (double gap = (1.0 - scan.grid.back().a) * 0.1;; gap *= 0.1) {
        if (gap < 1e-8) {
            out.warnings.push_back("Psi stays below lambda up to a = 1 - 1e-8; right root not bracketed");
            break;
        }
        const double v = psi_fn(1.0 - gap);
        pts.push_back({1.0 - gap, v});
        if (v > target) break;
    }
    std::sort(pts.begin(), pts.end(), [](const CurveSample& l, const CurveSample& r) { return l.a < r.a; });

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double g0 = pts[i].value - target;
        const double g1 = pts[i + 1].value - target;
        if ((g0 > 0.0) == (g1 > 0.0)) continue;
        roots.push_back(bisect_root([&](double a) { return psi_fn(a) - target; }, pts[i].a, pts[i + 1].a, g0, 1e-10));
    }
    if (roots.size() > 2) {
        out.warnings.push_back("found " + std::to_string(roots.size()) +
                               " roots of Psi = lambda; Psi is not unimodal on the scan grid");
    }
    for (double a : roots) out.solutions.push_back(make_two_free_solution(ctx, domain, lambda, a, opts));
    return out;
}

UnimodalityReport unimodality_scan(const AlphaContext& ctx, int grid_points, const SeriesSpec& sspec,
                                   const QuadratureSpec& qspec, Execution exec) {
    UnimodalityReport rep{grid_points, {}, 0, grid_points >= 32, false, {}};
    if (grid_points >= 1) rep.samples = psi_curve(ctx, grid_points, sspec, qspec, exec);
    int last = 0;
    for (std::size_t i = 0; i + 1 < rep.samples.size(); ++i) {
        const double d = rep.samples[i + 1].value - rep.samples[i].value;
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++rep.direction_changes;
        last = sign;
    }
    if (!rep.sufficient_resolution) {
        rep.summary = "insufficient resolution: at least 32 grid points are needed";
        return rep;
    }
    rep.consistent_with_unimodal = rep.direction_changes == 1;
    rep.summary = rep.consistent_with_unimodal
                      ? "consistent with unimodal"
                      : "not consistent with unimodal: " + std::to_string(rep.direction_changes) +
                            " direction changes";
    return rep;
}

}  // namespace fracbern
