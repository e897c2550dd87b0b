#include "loglap/fixed_point.hpp"

#include <cmath>

namespace loglap {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * EIGEN_PI);

double uniform01(std::mt19937_64& rng) {
    // fixed bit-level construction, stable across standard libraries
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<SpectralField> kernel_spectra(const ProblemSpec& spec, const GridPtr& grid) {
    std::vector<SpectralField> out;
    out.reserve(spec.kernels.size());
    for (const auto& k : spec.kernels)
        out.push_back(forward_transform(k.sample(grid)));
    return out;
}

VectorField apply_T_impl(const ProblemSpec& spec, const GridPtr& grid,
                         const std::vector<SpectralField>& khat,
                         const VectorField& u0, const VectorField& v) {
    VectorField G = eval_nonlinearity(spec.nonlinearity, u0 + v);
    std::vector<RealField> comps;
    comps.reserve(static_cast<std::size_t>(spec.n_components));
    for (int m = 0; m < spec.n_components; ++m) {
        const auto um = static_cast<std::size_t>(m);
        SpectralField gh = forward_transform(G[m]);
        SpectralField uh = SpectralField::zero(grid);
        const double eps = spec.epsilons[um];
        for (Eigen::Index k = 1; k < grid->size(); ++k) {
            Complex rhs = eps * kSqrt2Pi * khat[um].coeffs[k] * gh.coeffs[k];
            uh.coeffs[k] = rhs / symbol_value(spec.symbols[um], grid->frequency(k));
        }
        comps.push_back(inverse_transform(uh));
    }
    return VectorField(std::move(comps));
}

} // namespace

VectorField apply_T(const ProblemSpec& spec, const GridPtr& grid,
                    const VectorField& u0, const VectorField& v) {
    if (!(*v.grid() == *grid) || !(*u0.grid() == *grid))
        throw std::invalid_argument("apply_T: grid mismatch");
    return apply_T_impl(spec, grid, kernel_spectra(spec, grid), u0, v);
}

SolveReport picard_solve_from(const ProblemSpec& spec, const GridPtr& grid,
                              const LinearSolution& lin, const VectorField& start,
                              double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

    SolveReport rep;
    rep.constants = contraction_constants(spec, l2_norm(lin.u0));

    auto khat = kernel_spectra(spec, grid);

    VectorField current = start;
    for (int it = 0; it < max_iter; ++it) {
        VectorField next = apply_T_impl(spec, grid, khat, lin.u0, current);
        double diff = l2_norm(next - current);
        rep.diff_norms.push_back(diff);
        if (rep.diff_norms.size() >= 2) {
            double prev = rep.diff_norms[rep.diff_norms.size() - 2];
            rep.empirical_rates.push_back(prev > 0.0 ? diff / prev : 0.0);
        }
        current = std::move(next);
        rep.iterations = it + 1;
        if (diff <= tol) {
            rep.converged = true;
            break;
        }
    }

    rep.u_p = std::move(current);
    rep.u_cumulative = lin.u0 + rep.u_p;

    bool rates_ok = true;
    for (double r : rep.empirical_rates)
        if (r > rep.constants.sigma * 1.01) rates_ok = false;
    rep.certified = rep.converged && rep.constants.admissible && rates_ok;

    try {
        rep.residual = residual(spec, grid, rep.u_cumulative);
    } catch (const std::invalid_argument&) {
        // trivial problem (zero reference scale): leave the default report
    }
    return rep;
}

SolveReport picard_solve(const ProblemSpec& spec, const GridPtr& grid,
                         double tol, int max_iter) {
    LinearSolution lin = solve_linear(spec, grid);
    return picard_solve_from(spec, grid, lin,
                             VectorField::zero(grid, spec.n_components), tol, max_iter);
}

ResidualReport residual(const ProblemSpec& spec, const GridPtr& grid,
                        const VectorField& u) {
    auto khat = kernel_spectra(spec, grid);
    VectorField G = eval_nonlinearity(spec.nonlinearity, u);

    ResidualReport rep;
    double res_sq = 0.0, ref_sq = 0.0;
    const double dp = grid->freq_spacing();
    for (int m = 0; m < spec.n_components; ++m) {
        const auto um = static_cast<std::size_t>(m);
        SpectralField uh = forward_transform(u[m]);
        SpectralField fh = forward_transform(spec.sources[um].sample(grid));
        SpectralField gh = forward_transform(G[m]);
        rep.zero_mode_defect.push_back(std::abs(fh.coeffs[0]) +
                                       std::abs(uh.coeffs[0]));

        double comp_sq = 0.0, comp_ref = 0.0;
        const double eps = spec.epsilons[um];
        for (Eigen::Index k = 1; k < grid->size(); ++k) {
            Complex rhs = fh.coeffs[k] +
                          eps * kSqrt2Pi * khat[um].coeffs[k] * gh.coeffs[k];
            Complex r = symbol_value(spec.symbols[um], grid->frequency(k)) * uh.coeffs[k] - rhs;
            comp_sq += std::norm(r);
            comp_ref += std::norm(rhs);
        }
        rep.component_residuals.push_back(std::sqrt(dp * comp_sq));
        res_sq += dp * comp_sq;
        ref_sq += dp * comp_ref;
    }
    rep.reference_scale = std::sqrt(ref_sq);
    if (rep.reference_scale == 0.0)
        throw std::invalid_argument("trivial problem: zero reference scale for residual");
    rep.relative_residual = std::sqrt(res_sq) / rep.reference_scale;
    return rep;
}

VectorField random_ball_field(const GridPtr& grid, int n_components, double rho,
                              std::mt19937_64& rng) {
    const Eigen::Index n = grid->size();
    std::vector<RealField> comps;
    comps.reserve(static_cast<std::size_t>(n_components));
    for (int m = 0; m < n_components; ++m) {
        SpectralField F = SpectralField::zero(grid);
        for (Eigen::Index k = 1; k < n / 2; ++k) {
            double p = grid->frequency(k);
            double decay = 1.0 / (1.0 + p * p);
            double re = (2.0 * uniform01(rng) - 1.0) * decay;
            double im = (2.0 * uniform01(rng) - 1.0) * decay;
            F.coeffs[k] = Complex(re, im);
            F.coeffs[n - k] = std::conj(F.coeffs[k]);
        }
        // Nyquist bin must be real for a real field; mean left at zero
        F.coeffs[n / 2] = (2.0 * uniform01(rng) - 1.0) /
                          (1.0 + std::pow(grid->frequency(n / 2), 2));
        comps.push_back(inverse_transform(F));
    }
    VectorField v(std::move(comps));
    double nrm = l2_norm(v);
    double target = rho * (0.1 + 0.9 * uniform01(rng));
    if (nrm > 0.0) v = (target / nrm) * v;
    return v;
}

ContractionProbeReport verify_contraction(const ProblemSpec& spec, const GridPtr& grid,
                                          const VectorField& u0, int pairs,
                                          std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("need at least one probe pair");
    ContractionProbeReport rep;
    rep.pairs_requested = pairs;
    rep.seed = seed;
    rep.sigma = contraction_constants(spec, l2_norm(u0)).sigma;

    auto khat = kernel_spectra(spec, grid);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < pairs; ++i) {
        VectorField v1 = random_ball_field(grid, spec.n_components, spec.rho, rng);
        VectorField v2 = random_ball_field(grid, spec.n_components, spec.rho, rng);
        double dist = l2_norm(v1 - v2);
        if (dist == 0.0) continue; // degenerate pair
        VectorField t1 = apply_T_impl(spec, grid, khat, u0, v1);
        VectorField t2 = apply_T_impl(spec, grid, khat, u0, v2);
        double ratio = l2_norm(t1 - t2) / dist;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        ++rep.pairs_used;
    }
    rep.pass = rep.max_ratio <= rep.sigma * 1.01;
    return rep;
}

} // namespace loglap
