#pragma once

#include <vector>

#include "fracbern/parallel.hpp"
#include "fracbern/quadrature.hpp"
#include "fracbern/specfn.hpp"
#include "fracbern/types.hpp"

namespace fracbern {

// One free boundary point. All computation happens on the reference domain
// D = (0, 1) with K = (a, 1); other intervals are reached by scaling and
// translation.

/// u_a(x): 0 off (0, 1), 1 on [a, 1), and the Poisson integral of the
/// indicator of (a, 1) over P_(0,a)(x, .) on (0, a).
double profile_u(const AlphaContext& ctx, double a, double x, const QuadratureSpec& spec = {});

/// 1 - u_a(x) on (0, a), computed directly from the exterior part of the
/// Poisson integral so it keeps full relative accuracy as x -> a.
double profile_w(const AlphaContext& ctx, double a, double x, const QuadratureSpec& spec = {});

/// R(a) = C (T a^{-alpha/2} + a^{alpha/2} F(a) / alpha),
/// F(a) = 2F1(alpha/2 + 1, alpha; alpha + 1; a). Equals -D_n u_a(a).
double rate_R(const AlphaContext& ctx, double a);

/// mu_{alpha,D}: golden-section minimum of R (strictly convex), rescaled
/// from the reference radius 1/2 to the radius of `domain`.
BernoulliResult mu_constant(const AlphaContext& ctx, const Interval& domain);

struct OneFreeOptions {
    int harmonic_points = 512;  // Chebyshev samples on the harmonic part
    double equality_tol = 1e-8;
    Execution exec = Execution::parallel;
    QuadratureSpec quad{};
};

/// All solutions for level lambda: none below mu, one at mu, two above.
std::vector<FreeBoundarySolution> solve_one_free(const AlphaContext& ctx, const Interval& domain, double lambda,
                                                 const OneFreeOptions& opts = {});

/// Profile of the solution with reference parameter a, sampled on the
/// domain coordinates.
std::vector<ProfileSample> sample_one_free_profile(const AlphaContext& ctx, const Interval& domain, double a,
                                                   const OneFreeOptions& opts = {});

/// R on the uniform interior grid a_k = k / (n + 1), k = 1..n.
std::vector<CurveSample> rate_R_curve(const AlphaContext& ctx, int n, Execution exec = Execution::parallel);

}  // namespace fracbern
