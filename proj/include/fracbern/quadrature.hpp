#pragma once

#include <functional>
#include <span>

namespace fracbern {

/// Tolerances and endpoint behaviour for one integral. The endpoint
/// exponents declare integrands that behave like (t - lo)^beta near lo and
/// (hi - t)^beta near hi; the integrator removes that behaviour by a power
/// substitution before refining.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double endpoint_exponent_left = 0.0;
    double endpoint_exponent_right = 0.0;

    QuadratureSpec with_exponents(double left, double right) const {
        QuadratureSpec s = *this;
        s.endpoint_exponent_left = left;
        s.endpoint_exponent_right = right;
        return s;
    }

    QuadratureSpec with_tolerance(double abs, double rel) const {
        QuadratureSpec s = *this;
        s.abs_tol = abs;
        s.rel_tol = rel;
        return s;
    }

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// A sample position that also carries its distances to the ends of the
/// integration range. Near a substituted endpoint `x` may round onto the
/// endpoint itself while `from_lo` / `from_hi` stay exact, so singular
/// factors should be formed from the offsets.
struct QuadPoint {
    double x;
    double from_lo;
    double from_hi;  // +inf on semi-infinite ranges
};

using Integrand = std::function<double(double)>;
using OffsetIntegrand = std::function<double(const QuadPoint&)>;

IntegralResult integrate_finite(const Integrand& f, double lo, double hi, const QuadratureSpec& spec);
IntegralResult integrate_finite(const OffsetIntegrand& f, double lo, double hi, const QuadratureSpec& spec);

/// Integrates over consecutive pieces [b0,b1], [b1,b2], ... under one global
/// error budget. The left exponent applies at b0, the right one at the last
/// breakpoint, and interior breakpoints are treated as regular points where
/// the integrand may jump. Offsets in QuadPoint are measured from b0 and the
/// last breakpoint.
IntegralResult integrate_pieces(const OffsetIntegrand& f, std::span<const double> breakpoints,
                                const QuadratureSpec& spec);

/// Integral over [lo, inf) of an integrand with power tail
/// f(y) ~ c * y^tail_exponent, tail_exponent < -1. The range is cut at the
/// point Y where the analytic tail bound falls below abs_tol / 2; the power
/// law tail beyond Y is added analytically. Only the left exponent of `spec`
/// is used. `from_hi` is +inf for every sample.
IntegralResult integrate_semi_infinite(const Integrand& f, double lo, double tail_exponent,
                                       const QuadratureSpec& spec);
IntegralResult integrate_semi_infinite(const OffsetIntegrand& f, double lo, double tail_exponent,
                                       const QuadratureSpec& spec);

/// Semi-infinite integral whose finite part is split at the given interior
/// breakpoints (all > lo), merged into one global error budget.
IntegralResult integrate_semi_infinite(const OffsetIntegrand& f, double lo, std::span<const double> breakpoints,
                                       double tail_exponent, const QuadratureSpec& spec);

}  // namespace fracbern
