#pragma once

namespace fracbern {

/// The order alpha of (-Delta)^{alpha/2} together with the constants that
/// every kernel and bound formula consumes. Immutable once built.
struct AlphaContext {
    double alpha;
    double c_alpha;  // sin(pi alpha / 2) / pi, the interval Poisson kernel constant
    double t_alpha;  // B(alpha, 1 - alpha/2)
    double a_alpha;  // normalizing constant of the 1-D fractional Laplacian
};

/// Throws DomainError unless alpha lies in (0, 2).
AlphaContext make_alpha_context(double alpha);

/// Gamma function for x > 0 (Lanczos, g = 7).
double gamma_fn(double x);
double log_gamma_fn(double x);

/// B(p, q) for p, q > 0.
double beta_fn(double p, double q);

/// Gauss hypergeometric 2F1(p, q; r; z) for 0 <= z < 1.
///
/// Uses the power series with a ratio-test tail bound. For z > 0.9 and
/// r > q > 0 (or r > p > 0, by symmetry in p and q) it switches to the
/// Euler integral mapped onto (0, inf), which stays accurate as z -> 1.
/// Throws DomainError for z outside [0, 1) or r a non-positive integer, and
/// AccuracyError if the series does not settle within its term budget.
double hyp2f1(double p, double q, double r, double z);

/// Power-series path alone. Exposed for cross-checks against the integral.
double hyp2f1_series(double p, double q, double r, double z, int max_terms = 200000);

/// Integral-representation path alone; requires r > q > 0.
double hyp2f1_integral(double p, double q, double r, double z);

}  // namespace fracbern
