#include "loglap/grid.hpp"

namespace loglap {

Grid::Grid(double length, Eigen::Index count)
    : length_(length), count_(count) {
    if (!(length > 0.0))
        throw std::invalid_argument("grid length must be positive");
    if (count < 8)
        throw std::invalid_argument("n too small (need n >= 8)");
    if (count % 2 != 0)
        throw std::invalid_argument("n must be even");
    spacing_ = length_ / static_cast<double>(count_);
    freq_spacing_ = 2.0 * EIGEN_PI / length_;

    nodes_.resize(count_);
    for (Eigen::Index j = 0; j < count_; ++j)
        nodes_[j] = -length_ / 2.0 + static_cast<double>(j) * spacing_;

    freqs_.resize(count_);
    for (Eigen::Index k = 0; k < count_; ++k) {
        Eigen::Index kk = (k < count_ / 2) ? k : k - count_;
        freqs_[k] = freq_spacing_ * static_cast<double>(kk);
    }
}

GridPtr make_grid(double length, Eigen::Index count) {
    return std::make_shared<const Grid>(length, count);
}

RealField::RealField(GridPtr g, Array s) : grid(std::move(g)), samples(std::move(s)) {
    if (samples.size() != grid->size())
        throw std::invalid_argument("sample count does not match grid");
}

RealField RealField::zero(GridPtr g) {
    Array s = Array::Zero(g->size());
    return RealField(std::move(g), std::move(s));
}

SpectralField::SpectralField(GridPtr g, CArray c) : grid(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.size() != grid->size())
        throw std::invalid_argument("coefficient count does not match grid");
}

SpectralField SpectralField::zero(GridPtr g) {
    CArray c = CArray::Zero(g->size());
    return SpectralField(std::move(g), std::move(c));
}

VectorField::VectorField(std::vector<RealField> comps) : components(std::move(comps)) {
    if (components.empty())
        throw std::invalid_argument("vector field needs at least one component");
    const Grid& g = *components.front().grid;
    for (const auto& c : components)
        if (!(*c.grid == g))
            throw std::invalid_argument("vector field components must share one grid");
}

VectorField VectorField::zero(GridPtr g, int n_components) {
    std::vector<RealField> comps;
    comps.reserve(static_cast<std::size_t>(n_components));
    for (int m = 0; m < n_components; ++m)
        comps.push_back(RealField::zero(g));
    return VectorField(std::move(comps));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (Eigen::Index m = 0; m < out.n_components(); ++m)
        out[m].samples += b[m].samples;
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (Eigen::Index m = 0; m < out.n_components(); ++m)
        out[m].samples -= b[m].samples;
    return out;
}

VectorField operator*(double s, const VectorField& a) {
    VectorField out = a;
    for (auto& c : out.components)
        c.samples *= s;
    return out;
}

} // namespace loglap
