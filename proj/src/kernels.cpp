#include "fracbern/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracbern/errors.hpp"

namespace fracbern {

namespace {

// Breakpoints at offsets peak, 4 peak, 16 peak, ... below `limit`, plus the
// data jumps mapped into the offset variable.
std::vector<double> offset_cuts(double peak, double limit, std::vector<double> jumps) {
    std::vector<double> cuts;
    for (double c = peak; c < limit; c *= 4.0) cuts.push_back(c);
    cuts.insert(cuts.end(), jumps.begin(), jumps.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::erase_if(cuts, [](double c) { return !(c > 0.0) || !std::isfinite(c); });
    // Drop cuts that would create slivers.
    std::vector<double> kept;
    double last = 0.0;
    for (double c : cuts) {
        if (c > last * (1.0 + 1e-12) + 1e-300) {
            kept.push_back(c);
            last = c;
        }
    }
    return kept;
}

}  // namespace

OpenInterval::OpenInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw DomainError("interval requires lo < hi");
}

PiecewiseFunction PiecewiseFunction::constant(double c) {
    return PiecewiseFunction{[c](double) { return c; }, {}};
}

PiecewiseFunction PiecewiseFunction::indicator(double lo, double hi) {
    std::vector<double> bp;
    if (std::isfinite(lo)) bp.push_back(lo);
    if (std::isfinite(hi)) bp.push_back(hi);
    return PiecewiseFunction{[lo, hi](double y) { return (y > lo && y < hi) ? 1.0 : 0.0; }, bp};
}

double poisson_interval(const AlphaContext& ctx, const OpenInterval& iv, double x, double y) {
    if (!iv.contains(x)) throw DomainError("poisson_interval: x must lie inside the open interval");
    if (y >= iv.lo && y <= iv.hi) throw DomainError("poisson_interval: y must lie outside the closed interval");
    const double h = ctx.alpha / 2.0;
    const double inside = (x - iv.lo) * (iv.hi - x);
    const double outside = (y - iv.lo) * (y - iv.hi);
    return ctx.c_alpha * std::pow(inside / outside, h) / std::abs(x - y);
}

double phi(const AlphaContext& ctx, double a, double y) {
    if (!(y > 1.0 || y < a)) throw DomainError("phi: y must satisfy y > 1 or y < a");
    const double h = ctx.alpha / 2.0;
    return std::pow((y - a) * (y - 1.0), -h) / std::abs(y - a);
}

IntegralResult dirichlet_integral(const AlphaContext& ctx, const OpenInterval& iv, const PiecewiseFunction& g,
                                  double from_lo, double from_hi, const QuadratureSpec& spec) {
    if (!(from_lo > 0.0) || !(from_hi > 0.0)) throw DomainError("dirichlet_eval: x must lie inside the interval");
    const double h = ctx.alpha / 2.0;
    const double len = iv.length();
    const double weight = ctx.c_alpha * std::pow(from_lo * from_hi, h);
    const double tail = -ctx.alpha - 1.0;
    const QuadratureSpec piece_spec = spec.with_exponents(-h, 0.0);

    // Left part: y = lo - t, t > 0.
    std::vector<double> left_jumps;
    std::vector<double> right_jumps;
    for (double b : g.breakpoints) {
        if (b < iv.lo) left_jumps.push_back(iv.lo - b);
        if (b > iv.hi) right_jumps.push_back(b - iv.hi);
    }
    const std::vector<double> lcuts = offset_cuts(from_lo, len, left_jumps);
    const std::vector<double> rcuts = offset_cuts(from_hi, len, right_jumps);

    OffsetIntegrand left = [&](const QuadPoint& q) {
        const double t = q.from_lo;
        return std::pow(t * (t + len), -h) / (from_lo + t) * g.value(iv.lo - t);
    };
    OffsetIntegrand right = [&](const QuadPoint& q) {
        const double t = q.from_lo;
        return std::pow(t * (t + len), -h) / (from_hi + t) * g.value(iv.hi + t);
    };
    // Each half gets half the absolute budget; the kernel weight scales it.
    QuadratureSpec half = piece_spec;
    half.abs_tol = 0.5 * spec.abs_tol / std::max(weight, 1e-300);
    const IntegralResult l = integrate_semi_infinite(left, 0.0, lcuts, tail, half);
    const IntegralResult r = integrate_semi_infinite(right, 0.0, rcuts, tail, half);
    return IntegralResult{weight * (l.value + r.value), weight * (l.error_estimate + r.error_estimate),
                          l.evaluations + r.evaluations};
}

double dirichlet_eval(const AlphaContext& ctx, const OpenInterval& iv, const PiecewiseFunction& g, double x,
                      const QuadratureSpec& spec) {
    if (!iv.contains(x)) throw DomainError("dirichlet_eval: x must lie inside the open interval");
    return dirichlet_integral(ctx, iv, g, x - iv.lo, iv.hi - x, spec).value;
}

double mean_value_residual(const AlphaContext& ctx, const PiecewiseFunction& u, const OpenInterval& sub, double x,
                           const QuadratureSpec& spec) {
    if (!sub.contains(x)) throw DomainError("mean_value_residual: x must lie inside the sub-interval");
    return u.value(x) - dirichlet_eval(ctx, sub, u, x, spec);
}

}  // namespace fracbern
