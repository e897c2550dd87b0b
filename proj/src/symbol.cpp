#include "loglap/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace loglap {

namespace {

// phi(p) = |lambda(p)|^2 on p > 0.
double phi(const SymbolParams& s, double p) {
    double lg = std::log(p) - s.a;
    return lg * lg + s.b * s.b * p * p;
}

// Golden-section search on a bracket [lo, hi] containing a local minimum.
// Shrinks to relative width `rel_tol`; returns the midpoint.
double golden_section(const SymbolParams& s, double lo, double hi,
                      double rel_tol, int& iters) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = phi(s, x1), f2 = phi(s, x2);
    while (hi - lo > rel_tol * std::max(1.0, std::abs(lo))) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = phi(s, x1);
        } else {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = phi(s, x2);
        }
        ++iters;
        if (iters > 400) break;
    }
    return 0.5 * (lo + hi);
}

// Polish an interior minimizer by Newton on the stationarity equation
// psi(p) = ln p - a + b^2 p^2 = 0. psi is strictly increasing on p > 0,
// so the root near the golden-section estimate is the exact critical point;
// this pushes the defect below the sqrt(eps) floor of derivative-free search.
double polish_stationary(const SymbolParams& s, double p0) {
    double p = p0;
    for (int it = 0; it < 50; ++it) {
        double psi = std::log(p) - s.a + s.b * s.b * p * p;
        double dpsi = 1.0 / p + 2.0 * s.b * s.b * p;
        double step = psi / dpsi;
        p -= step;
        if (!(p > 0.0)) return p0;
        if (std::abs(step) <= 1e-16 * p) break;
    }
    return p;
}

} // namespace

std::complex<double> symbol_value(const SymbolParams& params, double p) {
    if (p == 0.0)
        throw std::domain_error("symbol singular at zero frequency");
    return {std::log(std::abs(p)) - params.a, -params.b * p};
}

double symbol_modulus(const SymbolParams& params, double p) {
    if (p == 0.0)
        throw std::domain_error("symbol singular at zero frequency");
    double lg = std::log(std::abs(p)) - params.a;
    return std::hypot(lg, params.b * p);
}

BoundResult lower_bound(const SymbolParams& params, const ScanOptions& opts) {
    if (params.b == 0.0)
        throw std::invalid_argument("drift required for Fredholm bound (b != 0)");

    // Coarse log-spaced scan. phi -> +inf at both window ends for any
    // parameters of practical interest, so interior brackets capture
    // every local minimum.
    const int n = opts.scan_points;
    const double llo = std::log(opts.p_min), lhi = std::log(opts.p_max);
    std::vector<double> pts(static_cast<std::size_t>(n)), val(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
        val[static_cast<std::size_t>(i)] = phi(params, pts[static_cast<std::size_t>(i)]);
    }

    int iters = 0;
    double best_p = pts[0];
    double best_phi = val[0];
    for (int i = 1; i + 1 < n; ++i) {
        auto ui = static_cast<std::size_t>(i);
        if (val[ui] <= val[ui - 1] && val[ui] <= val[ui + 1]) {
            double p_ref = golden_section(params, pts[ui - 1], pts[ui + 1], 1e-12, iters);
            p_ref = polish_stationary(params, p_ref);
            double f_ref = phi(params, p_ref);
            if (f_ref < best_phi) {
                best_phi = f_ref;
                best_p = p_ref;
            }
        }
        if (val[ui] < best_phi) { // guard against brackets the refinement missed
            best_phi = val[ui];
            best_p = pts[ui];
        }
    }

    BoundResult out;
    out.infimum = std::sqrt(best_phi);
    out.minimizer = best_p;
    out.iterations = iters;
    return out;
}

double system_lower_bound(std::span<const SymbolParams> all_params,
                          const ScanOptions& opts) {
    if (all_params.empty())
        throw std::invalid_argument("system_lower_bound: empty parameter list");
    double c = std::numeric_limits<double>::infinity();
    for (const auto& s : all_params)
        c = std::min(c, lower_bound(s, opts).infimum);
    return c;
}

} // namespace loglap
