#pragma once

#include <functional>

namespace fracbern {

struct ScalarMinimum {
    double x;
    double value;
    int evaluations;
    double bracket_width;
};

/// Golden-section search for a minimum of f on (lo, hi). Only interior
/// points are evaluated. Stops once the bracket is no wider than `width_tol`.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double width_tol);

/// Bisection for g(x) = 0 given g(lo) and g(hi) of opposite sign.
double bisect_root(const std::function<double(double)>& g, double lo, double hi, double g_lo, double x_tol,
                   int max_iter = 200);

}  // namespace fracbern
