#include "loglap/problem.hpp"
#include "loglap/spectral.hpp"

#include <cmath>
#include <sstream>

namespace loglap {

namespace {
const double kSqrt2Pi = std::sqrt(2.0 * EIGEN_PI);

Array gaussian_profile(const Array& x, double center, double width, double amp) {
    return amp * ((x - center).square() / (-2.0 * width * width)).exp();
}
} // namespace

double KernelSpec::l1() const {
    switch (kind) {
    case Kind::Gaussian:
    case Kind::Laplace:
    case Kind::TopHat:
        return std::abs(amplitude); // unit-mass presets
    case Kind::Samples:
        return l1_norm(*samples);
    }
    return 0.0;
}

RealField KernelSpec::sample(const GridPtr& grid) const {
    const Array& x = grid->nodes();
    switch (kind) {
    case Kind::Gaussian:
        return RealField(grid, gaussian_profile(x, 0.0, width, amplitude / (width * kSqrt2Pi)));
    case Kind::Laplace:
        return RealField(grid, amplitude / (2.0 * width) * (-x.abs() / width).exp());
    case Kind::TopHat: {
        Array s = Array::Zero(x.size());
        double h = amplitude / (2.0 * width);
        for (Eigen::Index j = 0; j < x.size(); ++j)
            if (std::abs(x[j]) <= width) s[j] = h;
        return RealField(grid, std::move(s));
    }
    case Kind::Samples:
        if (!(*samples->grid == *grid))
            throw std::invalid_argument("sampled kernel lives on a different grid");
        return *samples;
    }
    throw std::logic_error("unreachable kernel kind");
}

RealField SourceSpec::sample(const GridPtr& grid) const {
    const Array& x = grid->nodes();
    switch (kind) {
    case Kind::Gaussian:
        return RealField(grid, gaussian_profile(x, center, width, amplitude));
    case Kind::DifferenceOfGaussians:
        return RealField(grid, gaussian_profile(x, center, width, amplitude) -
                                   gaussian_profile(x, center2, width2, amplitude2));
    case Kind::Samples:
        if (!(*samples->grid == *grid))
            throw std::invalid_argument("sampled source lives on a different grid");
        return *samples;
    }
    throw std::logic_error("unreachable source kind");
}

bool SourceSpec::trivially_zero() const {
    switch (kind) {
    case Kind::Gaussian:
        return amplitude == 0.0;
    case Kind::DifferenceOfGaussians:
        return amplitude == 0.0 && amplitude2 == 0.0;
    case Kind::Samples:
        return (samples->samples == 0.0).all();
    }
    return true;
}

double NonlinearitySpec::Component::value(const Eigen::VectorXd& z) const {
    double t = weights.dot(z);
    switch (kind) {
    case Kind::TanhLinear: return alpha * std::tanh(t);
    case Kind::Sine: return alpha * std::sin(t);
    }
    return 0.0;
}

Eigen::VectorXd NonlinearitySpec::Component::gradient(const Eigen::VectorXd& z) const {
    double t = weights.dot(z);
    switch (kind) {
    case Kind::TanhLinear: {
        double c = std::cosh(t);
        return (alpha / (c * c)) * weights;
    }
    case Kind::Sine:
        return (alpha * std::cos(t)) * weights;
    }
    return Eigen::VectorXd::Zero(weights.size());
}

bool NonlinearitySpec::trivially_zero() const {
    for (const auto& c : components)
        if (c.alpha != 0.0 && c.weights.norm() != 0.0) return false;
    return true;
}

void ProblemSpec::validate() const {
    std::ostringstream errs;
    auto n = static_cast<std::size_t>(n_components);
    if (n_components < 1) errs << "N must be >= 1\n";
    if (symbols.size() != n || epsilons.size() != n || kernels.size() != n ||
        sources.size() != n || nonlinearity.components.size() != n)
        errs << "component counts do not all equal N\n";
    if (!(rho > 0.0 && rho <= 1.0)) errs << "rho must lie in (0, 1]\n";
    for (std::size_t m = 0; m < symbols.size(); ++m)
        if (symbols[m].b == 0.0)
            errs << "component " << m + 1 << ": drift b must be nonzero\n";
    for (std::size_t m = 0; m < epsilons.size(); ++m)
        if (epsilons[m] < 0.0)
            errs << "component " << m + 1 << ": epsilon must be nonnegative\n";
    for (const auto& c : nonlinearity.components)
        if (c.weights.size() != n_components)
            errs << "nonlinearity weight vector length must equal N\n";

    bool any_kernel = false;
    for (const auto& k : kernels)
        if (k.l1() > 0.0) any_kernel = true;
    if (!kernels.empty() && !any_kernel)
        errs << "all kernels vanish (aggregate kernel norm must be positive)\n";

    bool any_source = false;
    for (const auto& s : sources)
        if (!s.trivially_zero()) any_source = true;
    if (!sources.empty() && !any_source)
        errs << "all sources vanish identically (some f_m must be nontrivial)\n";

    if (!nonlinearity.components.empty() && nonlinearity.trivially_zero())
        errs << "nonlinearity is trivial (some g_m must be nontrivial)\n";

    std::string msg = errs.str();
    if (!msg.empty())
        throw std::invalid_argument("invalid problem:\n" + msg);
}

double epsilon_max(const ProblemSpec& spec) {
    double e = 0.0;
    for (double em : spec.epsilons) e = std::max(e, em);
    return e;
}

double kernel_aggregate(const ProblemSpec& spec) {
    double sq = 0.0;
    for (const auto& k : spec.kernels) {
        double n1 = k.l1();
        sq += n1 * n1;
    }
    if (sq <= 0.0)
        throw std::invalid_argument("all kernels vanish; aggregate kernel norm must be positive");
    return std::sqrt(sq);
}

double gradient_bound(const NonlinearitySpec& nl) {
    double m = 0.0;
    for (const auto& c : nl.components) m += c.gradient_sup();
    return m;
}

VectorField eval_nonlinearity(const NonlinearitySpec& nl, const VectorField& u) {
    const Eigen::Index n = u.n_components();
    if (static_cast<Eigen::Index>(nl.components.size()) != n)
        throw std::invalid_argument("nonlinearity component count mismatch");
    const Eigen::Index npts = u.grid()->size();

    VectorField out = VectorField::zero(u.grid(), static_cast<int>(n));
    Eigen::VectorXd z(n);
    for (Eigen::Index j = 0; j < npts; ++j) {
        for (Eigen::Index m = 0; m < n; ++m) z[m] = u[m].samples[j];
        for (Eigen::Index m = 0; m < n; ++m)
            out[m].samples[j] = nl.components[static_cast<std::size_t>(m)].value(z);
    }
    return out;
}

ContractionConstants contraction_constants(const ProblemSpec& spec, double u0_norm) {
    if (u0_norm < 0.0)
        throw std::invalid_argument("u0 norm must be nonnegative");
    ContractionConstants c;
    c.symbol_bound = system_lower_bound(spec.symbols);
    c.kernel_aggregate = kernel_aggregate(spec);
    c.gradient_bound = gradient_bound(spec.nonlinearity);
    if (c.gradient_bound == 0.0)
        throw std::invalid_argument("gradient bound M is zero; nonlinearity trivial");
    c.epsilon = epsilon_max(spec);
    c.u0_norm = u0_norm;
    c.sigma = c.epsilon * c.gradient_bound * c.kernel_aggregate / c.symbol_bound;
    c.epsilon_threshold =
        spec.rho * c.symbol_bound /
        (c.gradient_bound * c.kernel_aggregate * (u0_norm + 1.0));
    c.admissible = c.epsilon > 0.0 && c.epsilon <= c.epsilon_threshold;
    return c;
}

} // namespace loglap
