#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace loglap;
using namespace loglap::testing;

namespace {

/// Naive O(n^2) DFT pair, independent of the FFT path.
CArray naive_forward(const RealField& f) {
    const GridPtr& g = f.grid;
    const Eigen::Index n = g->size();
    CArray out(n);
    double scale = g->spacing() / std::sqrt(2.0 * EIGEN_PI);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            acc += f.samples[j] * std::exp(Complex(0.0, -g->frequency(k) * g->node(j)));
        out[k] = scale * acc;
    }
    return out;
}

Array naive_inverse(const GridPtr& g, const CArray& F) {
    const Eigen::Index n = g->size();
    Array out(n);
    double scale = g->freq_spacing() / std::sqrt(2.0 * EIGEN_PI);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
            acc += F[k] * std::exp(Complex(0.0, g->frequency(k) * g->node(j)));
        out[j] = (scale * acc).real();
    }
    return out;
}

ProblemSpec scalar_fixture(double eps) {
    ProblemSpec spec;
    spec.n_components = 1;
    spec.symbols = {SymbolParams(0.0, 1.0)};
    spec.epsilons = {eps};
    KernelSpec k;
    k.kind = KernelSpec::Kind::Gaussian;
    k.width = 1.0;
    spec.kernels = {k};
    SourceSpec f;
    f.kind = SourceSpec::Kind::Gaussian;
    spec.sources = {f};
    NonlinearitySpec::Component c;
    c.kind = NonlinearitySpec::Kind::TanhLinear;
    c.alpha = 0.5;
    c.weights = Eigen::VectorXd::Constant(1, 1.0);
    spec.nonlinearity.components = {c};
    spec.grid_length = 80.0;
    spec.grid_count = 1024;
    return spec;
}

} // namespace

TEST_CASE("apply_T trivial cases") {
    ProblemSpec spec = scalar_fixture(0.05);
    auto grid = make_grid(80.0, 512);
    VectorField zero = VectorField::zero(grid, 1);
    CHECK(l2_norm(apply_T(spec, grid, zero, zero)) == 0.0); // g(0) = 0

    ProblemSpec eps0 = scalar_fixture(0.0);
    std::mt19937_64 rng(1);
    VectorField v = random_ball_field(grid, 1, 1.0, rng);
    CHECK(l2_norm(apply_T(eps0, grid, zero, v)) == 0.0);
}

TEST_CASE("apply_T against composed primitives and the direct-quadrature path") {
    ProblemSpec spec = scalar_fixture(0.05);
    auto grid = make_grid(80.0, 512);
    // both base point and probe decay at the edges, so the linear
    // (analytic-kernel) and circular (grid) convolutions coincide
    VectorField u0(std::vector<RealField>{
        from_function(grid, [](double x) { return 0.4 * gaussian(x, 0.5, 2.0); })});
    std::mt19937_64 rng(7);
    VectorField v(std::vector<RealField>{random_field(grid, rng, 5.0)});
    v = (0.3 / l2_norm(v)) * v;

    VectorField direct = apply_T(spec, grid, u0, v);

    // route A: the already-tested primitives composed by hand
    VectorField G = eval_nonlinearity(spec.nonlinearity, u0 + v);
    RealField rhs = convolve(spec.kernels[0].sample(grid), G[0]);
    rhs.samples *= spec.epsilons[0];
    SpectralField rh = forward_transform(rhs);
    SpectralField uh = SpectralField::zero(grid);
    for (Eigen::Index k = 1; k < grid->size(); ++k)
        uh.coeffs[k] = rh.coeffs[k] / symbol_value(spec.symbols[0], grid->frequency(k));
    RealField route_a = inverse_transform(uh);
    double rel_a = (direct[0].samples - route_a.samples).matrix().norm() /
                   route_a.samples.matrix().norm();
    CHECK(rel_a <= 1e-10);

    // route B: O(n^2) quadrature convolution with the analytic kernel, then a
    // naive-DFT symbol division
    auto kfun = [&](double x) {
        return gaussian(x, 0.0, 1.0) / std::sqrt(2.0 * EIGEN_PI);
    };
    RealField rhs_q = direct_convolve(kfun, G[0]);
    rhs_q.samples *= spec.epsilons[0];
    CArray rqh = naive_forward(rhs_q);
    CArray uqh = CArray::Zero(grid->size());
    for (Eigen::Index k = 1; k < grid->size(); ++k)
        uqh[k] = rqh[k] / symbol_value(spec.symbols[0], grid->frequency(k));
    Array route_b = naive_inverse(grid, uqh);
    double rel_b = (direct[0].samples - route_b).matrix().norm() /
                   route_b.matrix().norm();
    CHECK(rel_b <= 1e-5);
}

TEST_CASE("per-component image bound and self-map property") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    LinearSolution lin = solve_linear(spec, grid);
    double C = system_lower_bound(spec.symbols);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        VectorField v = random_ball_field(grid, 2, spec.rho, rng);
        VectorField G = eval_nonlinearity(spec.nonlinearity, lin.u0 + v);
        VectorField img = apply_T(spec, grid, lin.u0, v);
        for (int m = 0; m < 2; ++m) {
            const auto um = static_cast<std::size_t>(m);
            double bound = spec.epsilons[um] * spec.kernels[um].l1() *
                           l2_norm(G[m]) / C;
            CHECK(l2_norm(img[m]) <= bound + 1e-10);
        }
        CHECK(l2_norm(img) <= spec.rho + 1e-10);
    }
}

TEST_CASE("picard with epsilon 0 converges instantly to the linear solution") {
    ProblemSpec spec = scalar_fixture(0.0);
    auto grid = spec.make_problem_grid();
    SolveReport rep = picard_solve(spec, grid);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(l2_norm(rep.u_p) == 0.0);
    LinearSolution lin = solve_linear(spec, grid);
    CHECK(l2_norm(rep.u_cumulative - lin.u0) == 0.0);
    CHECK(!rep.certified); // epsilon = 0 is outside the admissible range
}

TEST_CASE("picard with zero sources stays at the origin") {
    ProblemSpec spec = scalar_fixture(0.05);
    spec.sources[0].amplitude = 0.0;
    auto grid = spec.make_problem_grid();
    SolveReport rep = picard_solve(spec, grid);
    CHECK(rep.converged);
    CHECK(l2_norm(rep.u_p) == 0.0);
    CHECK(l2_norm(rep.u_cumulative) == 0.0);
}

TEST_CASE("reference problem: geometric decay at rate sigma") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    SolveReport rep = picard_solve(spec, grid, 1e-12, 200);
    REQUIRE(rep.converged);
    CHECK(rep.constants.admissible);
    CHECK(rep.certified);

    double sigma = rep.constants.sigma;
    for (double r : rep.empirical_rates) CHECK(r <= sigma * 1.05);

    // least-squares fitted decay rate on log diff_norms
    std::size_t n = rep.diff_norms.size();
    REQUIRE(n >= 3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = static_cast<double>(i), y = std::log(rep.diff_norms[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double dn = static_cast<double>(n);
    double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    CHECK(std::exp(slope) <= sigma * 1.01);

    double bound = rep.constants.epsilon * rep.constants.gradient_bound *
                   rep.constants.kernel_aggregate *
                   (rep.constants.u0_norm + 1.0) / rep.constants.symbol_bound;
    CHECK(l2_norm(rep.u_p) <= bound * 1.01);
    CHECK(l2_norm(rep.u_p) <= spec.rho);
}

TEST_CASE("residual diagnostics") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();

    // exact linear solution at epsilon = 0
    ProblemSpec lin_spec = spec;
    lin_spec.epsilons = {0.0, 0.0};
    LinearSolution lin = solve_linear(lin_spec, grid);
    ResidualReport lr = residual(lin_spec, grid, lin.u0);
    CHECK(lr.relative_residual <= 1e-11);

    SolveReport rep = picard_solve(spec, grid, 1e-12, 200);
    REQUIRE(rep.converged);
    CHECK(rep.residual.relative_residual <= 1e-8);

    // perturbation blows the residual up by at least 10x
    std::mt19937_64 rng(23);
    VectorField noise = random_ball_field(grid, 2, 1.0, rng);
    VectorField perturbed = rep.u_cumulative + 0.1 * noise;
    ResidualReport pr = residual(spec, grid, perturbed);
    CHECK(pr.relative_residual >= 10.0 * rep.residual.relative_residual);
}

TEST_CASE("residual rejects the all-zero problem") {
    ProblemSpec spec = scalar_fixture(0.0);
    spec.sources[0].amplitude = 0.0;
    auto grid = make_grid(80.0, 256);
    CHECK_THROWS_AS(residual(spec, grid, VectorField::zero(grid, 1)),
                    std::invalid_argument);
}

TEST_CASE("contraction probe") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    LinearSolution lin = solve_linear(spec, grid);

    ContractionProbeReport rep = verify_contraction(spec, grid, lin.u0, 100, 7);
    CHECK(rep.pairs_used == 100);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= rep.sigma * 1.01);
    CHECK(rep.max_ratio > 0.0);

    // epsilon = 0 collapses every ratio to zero
    ProblemSpec eps0 = spec;
    eps0.epsilons = {0.0, 0.0};
    ContractionProbeReport zero = verify_contraction(eps0, grid, lin.u0, 5, 7);
    CHECK(zero.max_ratio == 0.0);

    // determinism in the seed
    ContractionProbeReport again = verify_contraction(spec, grid, lin.u0, 100, 7);
    CHECK(again.max_ratio == rep.max_ratio);
}

TEST_CASE("fixed point is unique across starting points") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    LinearSolution lin = solve_linear(spec, grid);
    double tol = 1e-12;

    SolveReport from_zero = picard_solve_from(
        spec, grid, lin, VectorField::zero(grid, 2), tol, 200);
    std::mt19937_64 rng(31);
    VectorField start = random_ball_field(grid, 2, spec.rho, rng);
    SolveReport from_rand = picard_solve_from(spec, grid, lin, start, tol, 200);

    REQUIRE(from_zero.converged);
    REQUIRE(from_rand.converged);
    double sigma = from_zero.constants.sigma;
    CHECK(l2_norm(from_zero.u_p - from_rand.u_p) <= 10.0 * tol / (1.0 - sigma));
}

TEST_CASE("perturbation norm shrinks linearly in epsilon") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    SolveReport full = picard_solve(spec, grid, 1e-12, 200);

    ProblemSpec half = spec;
    for (auto& e : half.epsilons) e *= 0.5;
    SolveReport halved = picard_solve(half, grid, 1e-12, 200);

    REQUIRE(full.converged);
    REQUIRE(halved.converged);
    CHECK(l2_norm(halved.u_p) <= 0.75 * l2_norm(full.u_p));
}

TEST_CASE("non-convergence is reported, not thrown") {
    ProblemSpec spec = reference_problem_n2(0.5);
    auto grid = spec.make_problem_grid();
    SolveReport rep = picard_solve(spec, grid, 1e-12, 2);
    CHECK(!rep.converged);
    CHECK(!rep.certified);
    CHECK(rep.iterations == 2);
}

TEST_CASE("apply_T grid mismatch is an error") {
    ProblemSpec spec = scalar_fixture(0.05);
    auto g1 = make_grid(80.0, 256);
    auto g2 = make_grid(80.0, 512);
    CHECK_THROWS_AS(apply_T(spec, g1, VectorField::zero(g2, 1), VectorField::zero(g2, 1)),
                    std::invalid_argument);
}
