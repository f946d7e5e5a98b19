#include "fracbern/specfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracbern/errors.hpp"
#include "fracbern/quadrature.hpp"

namespace fracbern {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Series part of the Lanczos approximation for Gamma(x + 1).
double lanczos_sum(double x) {
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x + i);
    return acc;
}

bool is_non_positive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum on its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    if (x > 171.7) return std::numeric_limits<double>::infinity();
    const double xm = x - 1.0;
    const double t = xm + kLanczosG + 0.5;
    // Split the power so t^(xm + 1/2) does not overflow before exp(-t) acts.
    const double half_pow = std::pow(t, 0.5 * (xm + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * (half_pow * std::exp(-t)) * half_pow * lanczos_sum(xm);
}

double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma_fn: argument must be positive");
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma_fn(1.0 - x);
    }
    const double xm = x - 1.0;
    const double t = xm + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm));
}

double beta_fn(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta_fn: arguments must be positive");
    if (p + q < 100.0) return gamma_fn(p) * gamma_fn(q) / gamma_fn(p + q);
    return std::exp(log_gamma_fn(p) + log_gamma_fn(q) - log_gamma_fn(p + q));
}

AlphaContext make_alpha_context(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
    AlphaContext ctx{};
    ctx.alpha = alpha;
    ctx.c_alpha = std::sin(std::numbers::pi * alpha / 2.0) / std::numbers::pi;
    ctx.t_alpha = beta_fn(alpha, 1.0 - alpha / 2.0);
    ctx.a_alpha = alpha * std::pow(2.0, alpha) * gamma_fn((1.0 + alpha) / 2.0) /
                  (2.0 * std::sqrt(std::numbers::pi) * gamma_fn(1.0 - alpha / 2.0));
    return ctx;
}

double hyp2f1_series(double p, double q, double r, double z, int max_terms) {
    if (is_non_positive_integer(r)) throw DomainError("hyp2f1: r must not be a non-positive integer");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1)");
    if (z == 0.0) return 1.0;

    // Past this index the term ratio approaches z monotonically.
    const double monotone_from = 2.0 * (std::abs(p) + std::abs(q) + std::abs(r)) + 4.0;
    double sum = 1.0;
    double comp = 0.0;  // Neumaier compensation
    double term = 1.0;
    double bound = std::numeric_limits<double>::infinity();
    for (int n = 0; n < max_terms; ++n) {
        const double dn = n;
        term *= (p + dn) * (q + dn) / ((r + dn) * (dn + 1.0)) * z;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        if (term == 0.0) return sum + comp;  // terminating series
        if (dn >= monotone_from) {
            const double m = dn + 1.0;
            const double next_ratio = (p + m) * (q + m) / ((r + m) * (m + 1.0)) * z;
            const double rho = std::max(std::abs(next_ratio), z);
            if (rho < 1.0) {
                bound = std::abs(term) * std::abs(next_ratio) / (1.0 - rho);
                if (bound <= 1e-16 * std::abs(sum + comp)) return sum + comp;
            }
        }
    }
    throw AccuracyError("hyp2f1: series did not converge within the term budget", sum + comp, bound);
}

double hyp2f1_integral(double p, double q, double r, double z) {
    if (!(r > q && q > 0.0)) throw DomainError("hyp2f1_integral: requires r > q > 0");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1)");
    const double w = 1.0 - z;
    const double e0 = r - q - 1.0;
    const double e1 = p - r;
    // B(q, r-q) 2F1 = int_0^inf t^{r-q-1} (t+1)^{p-r} (t+1-z)^{-p} dt
    OffsetIntegrand f = [=](const QuadPoint& pt) {
        const double t = pt.from_lo;
        return std::pow(t, e0) * std::pow(t + 1.0, e1) * std::pow(t + w, -p);
    };
    // The integrand peaks on the scale t ~ 1 - z; geometric breakpoints
    // resolve it.
    std::vector<double> cuts;
    for (double c = w; c < 1.0; c *= 4.0) cuts.push_back(c);
    QuadratureSpec spec;
    spec.abs_tol = 1e-15;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 4000;
    spec.endpoint_exponent_left = e0 < 0.0 ? e0 : 0.0;
    const IntegralResult res = integrate_semi_infinite(f, 0.0, cuts, -q - 1.0, spec);
    return res.value / beta_fn(q, r - q);
}

double hyp2f1(double p, double q, double r, double z) {
    if (is_non_positive_integer(r)) throw DomainError("hyp2f1: r must not be a non-positive integer");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1)");
    if (z > 0.9) {
        if (r > q && q > 0.0) return hyp2f1_integral(p, q, r, z);
        if (r > p && p > 0.0) return hyp2f1_integral(q, p, r, z);
    }
    return hyp2f1_series(p, q, r, z);
}

}  // namespace fracbern
