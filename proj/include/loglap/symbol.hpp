#pragma once

#include <complex>
#include <span>
#include <stdexcept>

namespace loglap {

/// Coefficients of the operator (1/2) ln(-d^2/dx^2) - b d/dx - a.
struct SymbolParams {
    double a = 0.0; // potential shift
    double b = 1.0; // drift, must be nonzero

    SymbolParams() = default;
    SymbolParams(double a_, double b_) : a(a_), b(b_) {
        if (b == 0.0)
            throw std::invalid_argument("drift required for Fredholm bound (b != 0)");
    }
};

/// Outcome of minimizing |lambda| over p > 0.
struct BoundResult {
    double infimum = 0.0;     // C, the certified lower bound on |lambda|
    double minimizer = 0.0;   // p at which the infimum is attained
    int iterations = 0;       // golden-section steps spent
};

struct ScanOptions {
    double p_min = 1e-12;
    double p_max = 1e12;
    int scan_points = 2048;
};

/// lambda(p) = ln|p| - a - i b p. Singular at p = 0.
std::complex<double> symbol_value(const SymbolParams& params, double p);

/// |lambda(p)| = sqrt((ln|p| - a)^2 + b^2 p^2); even in p.
double symbol_modulus(const SymbolParams& params, double p);

/// Infimum of |lambda| over p > 0 by a log-spaced coarse scan followed by
/// golden-section refinement of every local-minimum bracket.
BoundResult lower_bound(const SymbolParams& params, const ScanOptions& opts = {});

/// min_m C_m, the single constant shared across all components.
double system_lower_bound(std::span<const SymbolParams> all_params,
                          const ScanOptions& opts = {});

} // namespace loglap
