#pragma once

#include <functional>
#include <vector>

#include "fracbern/quadrature.hpp"
#include "fracbern/specfn.hpp"

namespace fracbern {

struct OpenInterval {
    double lo;
    double hi;

    OpenInterval(double lo_, double hi_);
    double length() const { return hi - lo; }
    bool contains(double x) const { return x > lo && x < hi; }
};

/// A bounded function on the real line, given as a closure plus the points
/// where it may jump. Quadrature always splits at the listed breakpoints.
struct PiecewiseFunction {
    std::function<double(double)> value;
    std::vector<double> breakpoints;

    static PiecewiseFunction constant(double c);
    /// Indicator of the open set (lo, hi); lo may be -inf and hi +inf.
    static PiecewiseFunction indicator(double lo, double hi);
};

/// P_(lo,hi)(x, y) = C_a ((x-lo)(hi-x))^{a/2} ((y-lo)(y-hi))^{-a/2} / |x-y|
/// for x inside the open interval and y outside its closure.
double poisson_interval(const AlphaContext& ctx, const OpenInterval& iv, double x, double y);

/// Phi(a, y) = ((y-a)(y-1))^{-alpha/2} / |y-a| for y > 1 or y < a.
double phi(const AlphaContext& ctx, double a, double y);

/// Solution of the exterior Dirichlet problem on `iv` with data `g`,
/// evaluated at x: the integral of P_iv(x, y) g(y) over the complement.
double dirichlet_eval(const AlphaContext& ctx, const OpenInterval& iv, const PiecewiseFunction& g, double x,
                      const QuadratureSpec& spec = {});

/// Same integral with the position of x given by its exact distances to
/// the interval ends, for points very close to an endpoint.
IntegralResult dirichlet_integral(const AlphaContext& ctx, const OpenInterval& iv, const PiecewiseFunction& g,
                                  double from_lo, double from_hi, const QuadratureSpec& spec = {});

/// u(x) minus the Poisson average of u over the complement of `sub`.
/// Vanishes (to quadrature accuracy) wherever u is alpha-harmonic on a
/// neighbourhood of the closure of `sub`.
double mean_value_residual(const AlphaContext& ctx, const PiecewiseFunction& u, const OpenInterval& sub, double x,
                           const QuadratureSpec& spec = {});

}  // namespace fracbern
