#pragma once

#include "loglap/fixed_point.hpp"

namespace loglap {

/// Continuity of the cumulative solution in the nonlinearity gradient:
/// ||u1 - u2|| <= (eps/(1-sigma)) (K/C) (||u0|| + 1) ||grad g1 - grad g2||.
struct ContinuityReport {
    double grad_distance = 0.0;    // sum_m |alpha_m - alpha'_m| * |w_m|, exact
    double solution_distance = 0.0;
    double theorem_bound = 0.0;
    double sigma_used = 0.0;       // max of the two certified sigmas
    bool pass = false;
    SolveReport solve1, solve2;
};

struct SweepReport {
    std::vector<double> epsilons;
    std::vector<double> up_norms;
    std::vector<double> bounds;        // eps * M * K * (||u0|| + 1) / C
    std::vector<bool> within_threshold;
    bool pass = false;
    double fit_slope = 0.0;            // least-squares slope of ||u_p|| vs eps
    double fit_residual = 0.0;
};

/// Solve the fixed point for g1 and g2 on the same linear part and compare
/// the cumulative solutions against the continuity bound.
///
/// The pair must come from the same preset family with identical weight
/// vectors, so the gradient distance is analytic rather than sampled.
ContinuityReport continuity_experiment(const ProblemSpec& spec,
                                       const NonlinearitySpec& g1,
                                       const NonlinearitySpec& g2,
                                       double tol, int max_iter);

/// Re-solve the problem with all epsilon_m rescaled so that max_m epsilon_m
/// matches each requested value; checks the a-priori bound and the
/// linear-in-epsilon trend. Values above the admissibility threshold are
/// rejected unless allow_inadmissible is set, and are then excluded from
/// the pass verdict.
SweepReport epsilon_sweep(const ProblemSpec& spec, std::span<const double> eps_values,
                          double tol, int max_iter, bool allow_inadmissible = false);

} // namespace loglap
