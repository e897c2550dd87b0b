#pragma once

#include "loglap/grid.hpp"

namespace loglap {

/// Discrete realization of phi_hat(p) = (1/sqrt(2*pi)) * integral phi(x) e^{-ipx} dx
/// as the quadrature (h/sqrt(2*pi)) * sum_j phi(x_j) e^{-i p_k x_j}.
SpectralField forward_transform(const RealField& f);

/// phi(x_j) = (dp/sqrt(2*pi)) * sum_k F(p_k) e^{i p_k x_j}. Exact inverse of
/// forward_transform on the grid.
///
/// If `imag_residue` is given, the relative L2 size of the discarded imaginary
/// part is written there; above 1e-8 it signals a non-conjugate-symmetric input.
RealField inverse_transform(const SpectralField& F, double* imag_residue = nullptr);

/// L2(R, R^N) norm: sqrt(sum_m h sum_j u_m(x_j)^2).
double l2_norm(const VectorField& u);
double l2_norm(const RealField& u);
double l2_norm(const SpectralField& u); // sqrt(dp * sum_k |coeff|^2)

/// L1 quadrature h * sum_j |k(x_j)|.
double l1_norm(const RealField& k);

/// Convolution (k * g)(x) = integral k(x-y) g(y) dy via the spectral product
/// sqrt(2*pi) * k_hat * g_hat.
///
/// Periodic wrap-around is the price of the truncated domain; `edge_warning`,
/// when given, is set if either input exceeds 1e-8 in magnitude on the
/// outermost 5% of nodes.
RealField convolve(const RealField& k, const RealField& g, bool* edge_warning = nullptr);

/// True if |f| exceeds `threshold` anywhere on the outermost 5% of nodes.
bool edge_decay_violated(const RealField& f, double threshold = 1e-8);

} // namespace loglap
