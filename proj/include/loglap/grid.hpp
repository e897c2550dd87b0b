#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

namespace loglap {

using Array = Eigen::ArrayXd;
using CArray = Eigen::ArrayXcd;
using Complex = std::complex<double>;

/// Uniform truncation of the real line to [-L/2, L/2) with the matched
/// frequency lattice p_k = 2*pi*k/L, k in [-n/2, n/2).
///
/// Spectral data is stored in DFT bin order: bin k holds frequency
/// 2*pi*k/L for k < n/2 and 2*pi*(k-n)/L otherwise (Nyquist at bin n/2).
class Grid {
public:
    Grid(double length, Eigen::Index count);

    double length() const { return length_; }
    Eigen::Index size() const { return count_; }
    double spacing() const { return spacing_; }
    double freq_spacing() const { return freq_spacing_; }

    /// Physical nodes x_j = -L/2 + j*h.
    const Array& nodes() const { return nodes_; }
    /// Frequencies in DFT bin order.
    const Array& frequencies() const { return freqs_; }

    double node(Eigen::Index j) const { return nodes_[j]; }
    double frequency(Eigen::Index bin) const { return freqs_[bin]; }

    bool operator==(const Grid& other) const {
        return length_ == other.length_ && count_ == other.count_;
    }

private:
    double length_;
    Eigen::Index count_;
    double spacing_;
    double freq_spacing_;
    Array nodes_;
    Array freqs_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double length, Eigen::Index count);

/// Real-valued samples on a grid.
struct RealField {
    GridPtr grid;
    Array samples;

    RealField() = default;
    RealField(GridPtr g, Array s);

    static RealField zero(GridPtr g);
};

/// Complex Fourier coefficients on the matched frequency lattice,
/// DFT bin order.
struct SpectralField {
    GridPtr grid;
    CArray coeffs;

    SpectralField() = default;
    SpectralField(GridPtr g, CArray c);

    static SpectralField zero(GridPtr g);
};

/// N-component vector of real fields sharing one grid.
struct VectorField {
    std::vector<RealField> components;

    VectorField() = default;
    explicit VectorField(std::vector<RealField> comps);

    static VectorField zero(GridPtr g, int n_components);

    Eigen::Index n_components() const {
        return static_cast<Eigen::Index>(components.size());
    }
    const GridPtr& grid() const { return components.front().grid; }

    const RealField& operator[](Eigen::Index m) const { return components[m]; }
    RealField& operator[](Eigen::Index m) { return components[m]; }
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

} // namespace loglap
