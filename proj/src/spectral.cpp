#include "loglap/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace loglap {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * EIGEN_PI);

// DFT bins relate to the [-L/2, L/2) node layout through the phase
// e^{-i p_k x_j} = (-1)^k e^{-2 pi i k j / n}.
void alternate_signs(CArray& v) {
    for (Eigen::Index k = 1; k < v.size(); k += 2)
        v[k] = -v[k];
}

} // namespace

SpectralField forward_transform(const RealField& f) {
    const Eigen::Index n = f.grid->size();
    Eigen::VectorXcd in(n), out(n);
    in.real() = f.samples.matrix();
    in.imag().setZero();

    Eigen::FFT<double> fft;
    fft.fwd(out, in);

    CArray coeffs = out.array();
    alternate_signs(coeffs);
    coeffs *= f.grid->spacing() / kSqrt2Pi;
    return SpectralField(f.grid, std::move(coeffs));
}

RealField inverse_transform(const SpectralField& F, double* imag_residue) {
    const Eigen::Index n = F.grid->size();
    CArray staged = F.coeffs;
    alternate_signs(staged);

    Eigen::VectorXcd in = staged.matrix(), out(n);
    Eigen::FFT<double> fft;
    fft.inv(out, in); // scaled by 1/n

    const double scale =
        F.grid->freq_spacing() * static_cast<double>(n) / kSqrt2Pi;
    CArray full = out.array() * scale;

    if (imag_residue) {
        double re = full.real().matrix().norm();
        double im = full.imag().matrix().norm();
        *imag_residue = (re > 0.0) ? im / re : im;
    }
    return RealField(F.grid, full.real());
}

double l2_norm(const RealField& u) {
    return std::sqrt(u.grid->spacing()) * u.samples.matrix().norm();
}

double l2_norm(const SpectralField& u) {
    return std::sqrt(u.grid->freq_spacing()) * u.coeffs.matrix().norm();
}

double l2_norm(const VectorField& u) {
    double sq = 0.0;
    for (const auto& c : u.components) {
        double nrm = l2_norm(c);
        sq += nrm * nrm;
    }
    return std::sqrt(sq);
}

double l1_norm(const RealField& k) {
    return k.grid->spacing() * k.samples.abs().sum();
}

bool edge_decay_violated(const RealField& f, double threshold) {
    const Eigen::Index n = f.grid->size();
    Eigen::Index margin = std::max<Eigen::Index>(1, n / 40); // 2.5% per side
    double peak = 0.0;
    for (Eigen::Index j = 0; j < margin; ++j) {
        peak = std::max(peak, std::abs(f.samples[j]));
        peak = std::max(peak, std::abs(f.samples[n - 1 - j]));
    }
    return peak > threshold;
}

RealField convolve(const RealField& k, const RealField& g, bool* edge_warning) {
    if (!(*k.grid == *g.grid))
        throw std::invalid_argument("convolve: factors live on different grids");
    if (edge_warning)
        *edge_warning = edge_decay_violated(k) || edge_decay_violated(g);

    SpectralField kh = forward_transform(k);
    SpectralField gh = forward_transform(g);
    kh.coeffs *= gh.coeffs * kSqrt2Pi;
    return inverse_transform(kh);
}

} // namespace loglap
