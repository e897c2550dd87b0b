#include "loglap/linear_solver.hpp"

#include <cmath>

namespace loglap {

LinearSolution solve_linear(const ProblemSpec& spec, const GridPtr& grid) {
    const Eigen::Index n = grid->size();
    const auto n_comp = static_cast<Eigen::Index>(spec.n_components);

    LinearSolution sol;
    sol.zero_mode_defect.resize(static_cast<std::size_t>(n_comp));
    sol.spectral_cache.reserve(static_cast<std::size_t>(n_comp));

    std::vector<RealField> comps;
    comps.reserve(static_cast<std::size_t>(n_comp));

    bool any_nonzero = false;
    for (Eigen::Index m = 0; m < n_comp; ++m) {
        const auto um = static_cast<std::size_t>(m);
        RealField f = spec.sources[um].sample(grid);
        if ((f.samples != 0.0).any()) any_nonzero = true;

        SpectralField fh = forward_transform(f);
        sol.zero_mode_defect[um] = std::abs(fh.coeffs[0]);

        SpectralField uh = SpectralField::zero(grid);
        for (Eigen::Index k = 1; k < n; ++k)
            uh.coeffs[k] = fh.coeffs[k] / symbol_value(spec.symbols[um], grid->frequency(k));
        // bin 0 stays zero: lambda(0) = -inf, so f_hat(0)/lambda(0) -> 0

        comps.push_back(inverse_transform(uh));
        sol.spectral_cache.push_back(std::move(uh));
    }
    sol.u0 = VectorField(std::move(comps));
    sol.sources_trivial = !any_nonzero;
    return sol;
}

RealField apply_operator(const ProblemSpec& spec, Eigen::Index m, const RealField& u) {
    SpectralField uh = forward_transform(u);
    double scale = uh.coeffs.matrix().norm();
    if (std::abs(uh.coeffs[0]) > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("zero-mode not representable: input has a nonzero mean");

    const GridPtr& grid = u.grid;
    for (Eigen::Index k = 1; k < grid->size(); ++k)
        uh.coeffs[k] *= symbol_value(spec.symbols[static_cast<std::size_t>(m)],
                                     grid->frequency(k));
    uh.coeffs[0] = 0.0;
    return inverse_transform(uh);
}

} // namespace loglap
