#pragma once

#include "loglap/linear_solver.hpp"
#include "loglap/problem.hpp"

#include <cstdint>
#include <random>

namespace loglap {

struct ResidualReport {
    std::vector<double> component_residuals; // L2 of R_m over nonzero bins
    std::vector<double> zero_mode_defect;
    double reference_scale = 0.0; // norm of f plus integral term
    double relative_residual = 0.0;
};

struct SolveReport {
    VectorField u_p;
    VectorField u_cumulative; // u0 + u_p
    int iterations = 0;
    bool converged = false;
    std::vector<double> diff_norms;      // ||u^{k+1} - u^k||
    std::vector<double> empirical_rates; // successive ratios
    ContractionConstants constants;
    bool certified = false;
    ResidualReport residual;
};

struct ContractionProbeReport {
    int pairs_requested = 0;
    int pairs_used = 0;
    double max_ratio = 0.0;
    double sigma = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
};

/// One application of the fixed-point map: solve the linear system whose
/// right side is epsilon_m * (K_m * g_m(u0 + v)), by spectral division.
VectorField apply_T(const ProblemSpec& spec, const GridPtr& grid,
                    const VectorField& u0, const VectorField& v);

/// Picard iteration u^0 = 0, u^{k+1} = T(u^k), stopping on the successive
/// difference norm. Non-convergence is reported, not thrown.
SolveReport picard_solve(const ProblemSpec& spec, const GridPtr& grid,
                         double tol = 1e-12, int max_iter = 200);

/// As above but starting from a caller-supplied iterate.
SolveReport picard_solve_from(const ProblemSpec& spec, const GridPtr& grid,
                              const LinearSolution& lin, const VectorField& start,
                              double tol, int max_iter);

/// Residual of the original system at u:
/// R_m = L_m u_m - f_m - epsilon_m (K_m * g_m(u)), measured over nonzero bins.
ResidualReport residual(const ProblemSpec& spec, const GridPtr& grid,
                        const VectorField& u);

/// Empirical Lipschitz probe: seeded random pairs in the ball of radius rho,
/// checked against sigma with 1% slack.
ContractionProbeReport verify_contraction(const ProblemSpec& spec, const GridPtr& grid,
                                          const VectorField& u0, int pairs,
                                          std::uint64_t seed);

/// Deterministic random field in the closed L2 ball of radius rho:
/// spectrally decaying coefficients with conjugate symmetry, rescaled.
VectorField random_ball_field(const GridPtr& grid, int n_components, double rho,
                              std::mt19937_64& rng);

} // namespace loglap
