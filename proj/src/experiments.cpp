#include "loglap/experiments.hpp"

#include <cmath>

namespace loglap {

namespace {

// Exact sup-norm of grad(g1_m - g2_m) for same-family, same-weights pairs.
double analytic_grad_distance(const NonlinearitySpec& g1, const NonlinearitySpec& g2) {
    if (g1.components.size() != g2.components.size())
        throw std::invalid_argument("continuity pair: component counts differ");
    double d = 0.0;
    for (std::size_t m = 0; m < g1.components.size(); ++m) {
        const auto& c1 = g1.components[m];
        const auto& c2 = g2.components[m];
        if (c1.kind != c2.kind)
            throw std::invalid_argument(
                "continuity pair must come from one preset family");
        if (c1.weights.size() != c2.weights.size() || c1.weights != c2.weights)
            throw std::invalid_argument(
                "continuity pair must share weight vectors (gradient distance "
                "is only analytic then)");
        d += std::abs(c1.alpha - c2.alpha) * c1.weights.norm();
    }
    return d;
}

} // namespace

ContinuityReport continuity_experiment(const ProblemSpec& spec,
                                       const NonlinearitySpec& g1,
                                       const NonlinearitySpec& g2,
                                       double tol, int max_iter) {
    ContinuityReport rep;
    rep.grad_distance = analytic_grad_distance(g1, g2);

    GridPtr grid = spec.make_problem_grid();
    LinearSolution lin = solve_linear(spec, grid);
    VectorField start = VectorField::zero(grid, spec.n_components);

    ProblemSpec s1 = spec; s1.nonlinearity = g1;
    ProblemSpec s2 = spec; s2.nonlinearity = g2;
    rep.solve1 = picard_solve_from(s1, grid, lin, start, tol, max_iter);
    rep.solve2 = picard_solve_from(s2, grid, lin, start, tol, max_iter);

    rep.solution_distance = l2_norm(rep.solve1.u_cumulative - rep.solve2.u_cumulative);

    const auto& c1 = rep.solve1.constants;
    const auto& c2 = rep.solve2.constants;
    rep.sigma_used = std::max(c1.sigma, c2.sigma);
    double eps = c1.epsilon; // shared between both solves
    rep.theorem_bound = eps / (1.0 - rep.sigma_used) *
                        (c1.kernel_aggregate / c1.symbol_bound) *
                        (c1.u0_norm + 1.0) * rep.grad_distance;
    // identical maps: bound is zero, distance is solver noise of order tol
    rep.pass = rep.solution_distance <= rep.theorem_bound * 1.01 + 10.0 * tol;
    return rep;
}

SweepReport epsilon_sweep(const ProblemSpec& spec, std::span<const double> eps_values,
                          double tol, int max_iter, bool allow_inadmissible) {
    if (eps_values.empty())
        throw std::invalid_argument("epsilon sweep needs at least one value");

    SweepReport rep;
    GridPtr grid = spec.make_problem_grid();
    LinearSolution lin = solve_linear(spec, grid);
    ContractionConstants base = contraction_constants(spec, l2_norm(lin.u0));

    double eps_current = base.epsilon;
    if (eps_current <= 0.0)
        throw std::invalid_argument("epsilon sweep needs a nonzero base epsilon");

    VectorField start = VectorField::zero(grid, spec.n_components);
    bool pass = true;
    for (double eps : eps_values) {
        bool admissible = eps > 0.0 && eps <= base.epsilon_threshold * (1.0 + 1e-12);
        if (!admissible && !allow_inadmissible)
            throw std::invalid_argument(
                "epsilon exceeds the admissibility threshold " +
                std::to_string(base.epsilon_threshold) +
                " (rho*C/(M*K*(||u0||+1))); pass --override-eps to force");

        ProblemSpec scaled = spec;
        double factor = eps / eps_current; // preserves the epsilon_m ratios
        for (auto& em : scaled.epsilons) em *= factor;

        SolveReport sr = picard_solve_from(scaled, grid, lin, start, tol, max_iter);
        double up = l2_norm(sr.u_p);
        double bound = eps * base.gradient_bound * base.kernel_aggregate *
                       (base.u0_norm + 1.0) / base.symbol_bound;

        rep.epsilons.push_back(eps);
        rep.up_norms.push_back(up);
        rep.bounds.push_back(bound);
        rep.within_threshold.push_back(admissible);
        if (admissible && up > bound * 1.01) pass = false;
    }

    // least-squares line through (eps, ||u_p||), admissible points only
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
        if (!rep.within_threshold[i]) continue;
        sx += rep.epsilons[i]; sy += rep.up_norms[i];
        sxx += rep.epsilons[i] * rep.epsilons[i];
        sxy += rep.epsilons[i] * rep.up_norms[i];
        ++cnt;
    }
    if (cnt >= 2) {
        double denom = cnt * sxx - sx * sx;
        rep.fit_slope = (cnt * sxy - sx * sy) / denom;
        double intercept = (sy - rep.fit_slope * sx) / cnt;
        double max_up = 0.0, rss = 0.0;
        for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
            if (!rep.within_threshold[i]) continue;
            double r = rep.up_norms[i] - (rep.fit_slope * rep.epsilons[i] + intercept);
            rss += r * r;
            max_up = std::max(max_up, rep.up_norms[i]);
        }
        rep.fit_residual = std::sqrt(rss / cnt);
        if (rep.fit_slope <= 0.0 || rep.fit_residual > 0.2 * max_up) pass = false;
    }

    rep.pass = pass;
    return rep;
}

} // namespace loglap
