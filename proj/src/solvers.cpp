#include "fracbern/solvers.hpp"

#include <cmath>

#include "fracbern/errors.hpp"

namespace fracbern {

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double width_tol) {
    if (!(lo < hi)) throw DomainError("golden_section: requires lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > width_tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            if (!(c > a && c < d)) break;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            if (!(d > c && d < b)) break;
            fd = f(d);
        }
        ++evals;
    }
    if (fc <= fd) return ScalarMinimum{c, fc, evals, b - a};
    return ScalarMinimum{d, fd, evals, b - a};
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi, double g_lo, double x_tol,
                   int max_iter) {
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fracbern
