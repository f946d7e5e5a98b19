#pragma once

#include <string>

#include "fracbern/parallel.hpp"
#include "fracbern/quadrature.hpp"

namespace fracbern {

// The two numerical estimates behind Lambda_{1,D} > lambda_{1,D} on
// D = (-1, 1): a lower bound for the variational constant from F1 and an
// upper bound for the Bernoulli constant from F2. Everything here is alpha = 1.

/// F1(a, b) for 0 < a < b < 1, the sum of three closed-form log terms.
double f1(double a, double b);

struct F1Minimum {
    double value;  // smallest value found, so an upper bound on the infimum
    double a;
    double b;
    double grid_value;  // before refinement
};

/// Grid scan of the triangle 0 < a < b < 1 kept 1e-4 away from its edges,
/// then coordinate descent with halving steps.
F1Minimum f1_infimum(int grid, int refine_iters = 40, Execution exec = Execution::parallel);

/// F2(a): Psi at alpha = 1 with f_a replaced by its first iterate.
double f2(double a, const QuadratureSpec& spec = {});

struct ProofReport {
    int f1_grid;
    double f1_infimum_estimate;
    double f1_min_a;
    double f1_min_b;
    double f2_at_034;
    double f2_minimum;
    double f2_argmin;
    double lambda_lower_from_f1;  // sqrt of the F1 estimate
    bool conclusion_holds;        // lambda_lower_from_f1 > f2_minimum
    std::string note;
};

ProofReport check_inequality(int grid = 400, int refine_iters = 40, Execution exec = Execution::parallel);

}  // namespace fracbern
