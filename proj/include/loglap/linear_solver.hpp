#pragma once

#include "loglap/problem.hpp"
#include "loglap/spectral.hpp"

namespace loglap {

/// u0, the unique L2 solution of the epsilon = 0 system, obtained by dividing
/// the source spectrum by the symbol bin by bin.
struct LinearSolution {
    VectorField u0;
    std::vector<double> zero_mode_defect;     // |f_hat_m(0)| per component
    std::vector<SpectralField> spectral_cache; // u0_hat per component, 0-bin zeroed
    bool sources_trivial = false;             // warning flag: f vanished everywhere
};

/// Spectral solve u_hat_m = f_hat_m / lambda_m on every nonzero bin.
/// The 0-bin is pinned to zero (the symbol's logarithmic singularity sits
/// there); |f_hat_m(0)| is surfaced as the zero-mode defect.
LinearSolution solve_linear(const ProblemSpec& spec, const GridPtr& grid);

/// Apply (1/2) ln(-d^2/dx^2) - b_m d/dx - a_m by spectral multiplication.
/// Requires the input's 0-bin to vanish (relative tolerance 1e-10).
RealField apply_operator(const ProblemSpec& spec, Eigen::Index m, const RealField& u);

} // namespace loglap
