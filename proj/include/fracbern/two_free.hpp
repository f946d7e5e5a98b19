#pragma once

#include <string>
#include <vector>

#include "fracbern/errors.hpp"
#include "fracbern/kernels.hpp"
#include "fracbern/parallel.hpp"
#include "fracbern/quadrature.hpp"
#include "fracbern/specfn.hpp"
#include "fracbern/types.hpp"

namespace fracbern {

// Two symmetric free points. The reference domain is D = (-1, 1) with
// K = (-a, a); the unknown part of the profile is f_a on (a, 1).

struct SeriesSpec {
    int max_terms = 5000;
    double tail_tol = 1e-8;
    int grid_points = 256;  // tanh-sinh nodes on (a, 1)

    void validate() const;
};

/// Partial Neumann sum on the node grid of (a, 1).
///
/// The nodes and weights form a tanh-sinh rule for (a, 1). Off the nodes the
/// solution is extended by the Nystrom formula f = f1 + K f, which keeps
/// the (x - a)^{alpha/2} and (1 - x)^{alpha/2} behaviour at the ends.
struct NeumannSolution {
    AlphaContext ctx;
    QuadratureSpec quad;
    double a = 0.0;
    std::vector<double> node_x;
    std::vector<double> node_f;
    int terms_used = 0;
    double delta = 0.0;       // 1 - q, q the contraction ratio
    double tail_bound = 0.0;  // q^N / (1 - q) * max f1

    // Exact distances of the nodes to a and to 1, the rule weights and the
    // first iterate at the nodes.
    std::vector<double> node_from_a;
    std::vector<double> node_from_1;
    std::vector<double> node_weight;
    std::vector<double> node_f1;
    std::vector<double> op_matrix;  // row-major discretized series operator
    std::vector<double> extension;  // weight * g * f at the nodes, for evaluate

    /// f_a at x in (a, 1).
    double evaluate(double x) const;
    /// Same, with x = a + from_a = 1 - from_1 given by its offsets.
    double evaluate_offsets(double from_a, double from_1) const;
    /// The assembled profile on the real line: 1 on [-a, a], 0 off (-1, 1),
    /// f_a(|x|) elsewhere.
    double profile(double x) const;
};

/// Raised when the series does not reach tail_tol within max_terms.
class SeriesAccuracyError : public AccuracyError {
public:
    SeriesAccuracyError(const std::string& what, NeumannSolution partial);
    const NeumannSolution& partial() const { return partial_; }

private:
    NeumannSolution partial_;
};

/// First iterate f1(x) = integral of P_(a,1)(x, y) over y in (-a, a),
/// closed form at alpha = 1.
double neumann_first_term(const AlphaContext& ctx, double a, double from_a, double from_1,
                          const QuadratureSpec& spec = {});

/// q = sup over x in (a, 1) of the Poisson mass that P_(a,1)(x, .) puts on
/// (-1, -a). Geometric ratio of the series; decreases to 0 as a -> 1.
double contraction_delta(const AlphaContext& ctx, double a, const QuadratureSpec& spec = {});

/// Runs the series to the a-posteriori stopping rule.
NeumannSolution neumann_f(const AlphaContext& ctx, double a, const SeriesSpec& sspec = {},
                          const QuadratureSpec& qspec = {}, Execution exec = Execution::serial);

/// Exactly `terms` terms of the series, no stopping rule; tail_bound still
/// reports the bound for that truncation.
NeumannSolution neumann_fixed_terms(const AlphaContext& ctx, double a, int terms, const SeriesSpec& sspec = {},
                                    const QuadratureSpec& qspec = {}, Execution exec = Execution::serial);

/// One application of the discretized operator: out_i = sum_j M_ij in_j.
/// Exposed for the serial/parallel comparison and the benchmarks.
void apply_series_operator(const NeumannSolution& sol, const std::vector<double>& in, std::vector<double>& out,
                           Execution exec);

/// Integral of Phi(a, -y) over y in (a, inf).
double phi_reflected_integral(const AlphaContext& ctx, double a, const QuadratureSpec& spec = {});

/// Psi(a) = C (1-a)^{alpha/2} (T (1-a)^{-alpha} + int_a^inf Phi(a,-y) dy
///          - int_a^1 Phi(a,-y) f_a(y) dy).
double psi(const AlphaContext& ctx, double a, const SeriesSpec& sspec = {}, const QuadratureSpec& qspec = {});
/// Psi from an already computed series solution.
double psi_from_solution(const NeumannSolution& sol, const QuadratureSpec& qspec = {});

/// lambda_{alpha,D}: 64-point grid scan of Psi, golden section in the best
/// bracket, rescaled by radius^{-alpha/2}.
BernoulliResult lambda_constant(const AlphaContext& ctx, const Interval& domain, const SeriesSpec& sspec = {},
                                const QuadratureSpec& qspec = {}, Execution exec = Execution::parallel);

struct Bounds {
    double lower;
    double upper;
};

/// The closed-form bracket of lambda_{alpha,(-1,1)}.
Bounds bounds_LU(const AlphaContext& ctx);
/// L(a) <= Psi(a) <= U(a) pointwise.
double psi_lower_bound(const AlphaContext& ctx, double a);
double psi_upper_bound(const AlphaContext& ctx, double a);

struct TwoFreeOutcome {
    BernoulliResult constant;
    std::vector<FreeBoundarySolution> solutions;
    std::vector<std::string> warnings;
};

struct TwoFreeOptions {
    SeriesSpec series{};
    QuadratureSpec quad{};
    double equality_tol = 1e-6;
    int profile_points = 128;  // samples on each harmonic component
    Execution exec = Execution::parallel;
};

/// Every root of Psi(a) = lambda radius^{alpha/2} found by the grid scan,
/// one solution per root.
TwoFreeOutcome solve_two_free(const AlphaContext& ctx, const Interval& domain, double lambda,
                              const TwoFreeOptions& opts = {});

struct UnimodalityReport {
    int grid_points;
    std::vector<CurveSample> samples;
    int direction_changes;
    bool sufficient_resolution;
    bool consistent_with_unimodal;
    std::string summary;
};

/// Samples Psi on a_k = k / (n + 1) and counts sign changes of the first
/// differences. A diagnostic only.
UnimodalityReport unimodality_scan(const AlphaContext& ctx, int grid_points, const SeriesSpec& sspec = {},
                                   const QuadratureSpec& qspec = {}, Execution exec = Execution::parallel);

/// Psi on a_k = k / (n + 1), k = 1..n.
std::vector<CurveSample> psi_curve(const AlphaContext& ctx, int n, const SeriesSpec& sspec = {},
                                   const QuadratureSpec& qspec = {}, Execution exec = Execution::parallel);

}  // namespace fracbern
