#pragma once

#include "loglap/grid.hpp"
#include "loglap/symbol.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace loglap {

/// Integral kernel K(x) = epsilon * amplitude * (unit-mass preset), or raw samples.
/// Analytic presets carry an exact L1 norm (|amplitude|), which the
/// certification constants depend on.
struct KernelSpec {
    enum class Kind { Gaussian, Laplace, TopHat, Samples };

    Kind kind = Kind::Gaussian;
    double width = 1.0;        // gaussian s / laplace tau / tophat half-width
    double amplitude = 1.0;
    std::optional<RealField> samples; // Kind::Samples only

    /// Exact L1 norm for analytic kinds; grid quadrature for samples.
    double l1() const;
    /// Samples on the grid (epsilon not included).
    RealField sample(const GridPtr& grid) const;
};

struct SourceSpec {
    enum class Kind { Gaussian, DifferenceOfGaussians, Samples };

    Kind kind = Kind::Gaussian;
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;
    // second lobe for difference-of-gaussians
    double center2 = 0.0;
    double width2 = 1.0;
    double amplitude2 = 0.0;
    std::optional<RealField> samples;

    RealField sample(const GridPtr& grid) const;
    bool trivially_zero() const;
};

/// Preset nonlinearities g_m(z) = alpha_m * tanh(w_m . z) or alpha_m * sin(w_m . z).
/// Both vanish at the origin and have the exact gradient sup-norm |alpha| * |w|.
struct NonlinearitySpec {
    enum class Kind { TanhLinear, Sine };

    struct Component {
        Kind kind = Kind::TanhLinear;
        double alpha = 0.0;
        Eigen::VectorXd weights; // w_m in R^N

        double value(const Eigen::VectorXd& z) const;
        Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;
        /// sup_z |grad g_m(z)| = |alpha| * |w|, attained at w.z = 0.
        double gradient_sup() const { return std::abs(alpha) * weights.norm(); }
    };

    std::vector<Component> components;

    bool trivially_zero() const;
};

/// One full instance of the system: coefficients, kernels, sources,
/// nonlinearity, ball radius, grid parameters.
struct ProblemSpec {
    int n_components = 1;
    std::vector<SymbolParams> symbols;     // a_m, b_m
    std::vector<double> epsilons;          // epsilon_m >= 0
    std::vector<KernelSpec> kernels;
    std::vector<SourceSpec> sources;
    NonlinearitySpec nonlinearity;
    double rho = 1.0;

    double grid_length = 80.0;
    Eigen::Index grid_count = 4096;

    /// Throws listing every violated structural constraint.
    void validate() const;
    GridPtr make_problem_grid() const { return make_grid(grid_length, grid_count); }
};

/// Scalar data of the contraction certificate.
struct ContractionConstants {
    double symbol_bound = 0.0;      // C
    double kernel_aggregate = 0.0;  // script-K
    double gradient_bound = 0.0;    // M
    double epsilon = 0.0;           // max_m epsilon_m
    double sigma = 0.0;             // epsilon * M * K / C
    double epsilon_threshold = 0.0; // rho * C / (M * K * (||u0|| + 1))
    double u0_norm = 0.0;
    bool admissible = false;        // 0 < epsilon <= threshold
};

double epsilon_max(const ProblemSpec& spec);

/// sqrt(sum_m ||K_m||_{L1}^2); errors out if every kernel vanishes.
double kernel_aggregate(const ProblemSpec& spec);

/// M = sum_m sup_z |grad g_m(z)|, exact for the preset families.
double gradient_bound(const NonlinearitySpec& nl);

/// Pointwise G_m(x) = g_m(u(x)).
VectorField eval_nonlinearity(const NonlinearitySpec& nl, const VectorField& u);

ContractionConstants contraction_constants(const ProblemSpec& spec, double u0_norm);

} // namespace loglap
