#include "loglap/reports.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace loglap {

namespace {
std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary); // binary: LF endings everywhere
    if (!out)
        throw std::runtime_error("cannot write " + p.string());
    return out;
}
} // namespace

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg,
                    std::uint64_t input_hash, const ContractionConstants& c) {
    nlohmann::json j;
    j["version"] = "1.0.0";
    j["input_hash"] = input_hash;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["constants"] = {
        {"C", c.symbol_bound},
        {"K", c.kernel_aggregate},
        {"M", c.gradient_bound},
        {"epsilon", c.epsilon},
        {"sigma", c.sigma},
        {"epsilon_threshold", c.epsilon_threshold},
        {"u0_norm", c.u0_norm},
        {"admissible", c.admissible},
    };
    open_out(dir / "manifest.json") << j.dump(2) << "\n";
}

void write_iteration_csv(const std::filesystem::path& dir, const SolveReport& rep) {
    auto out = open_out(dir / "iterations.csv");
    out << "iter,diff_norm,rate\n";
    for (std::size_t i = 0; i < rep.diff_norms.size(); ++i) {
        out << i + 1 << ',' << csv_number(rep.diff_norms[i]) << ',';
        if (i >= 1) out << csv_number(rep.empirical_rates[i - 1]);
        out << '\n';
    }
}

void write_solution_csv(const std::filesystem::path& dir, const GridPtr& grid,
                        const VectorField& u0, const VectorField& up) {
    auto out = open_out(dir / "solution.csv");
    out << "x";
    for (Eigen::Index m = 0; m < u0.n_components(); ++m)
        out << ",u0_" << m + 1 << ",up_" << m + 1 << ",u_" << m + 1;
    out << '\n';
    for (Eigen::Index j = 0; j < grid->size(); ++j) {
        out << csv_number(grid->node(j));
        for (Eigen::Index m = 0; m < u0.n_components(); ++m) {
            double a = u0[m].samples[j], b = up[m].samples[j];
            out << ',' << csv_number(a) << ',' << csv_number(b) << ','
                << csv_number(a + b);
        }
        out << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path& dir, const SweepReport& rep) {
    auto out = open_out(dir / "sweep.csv");
    out << "eps,up_norm,bound,within_threshold\n";
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i)
        out << csv_number(rep.epsilons[i]) << ',' << csv_number(rep.up_norms[i])
            << ',' << csv_number(rep.bounds[i]) << ','
            << (rep.within_threshold[i] ? 1 : 0) << '\n';
}

void write_continuity_csv(const std::filesystem::path& dir,
                          std::span<const ContinuityReport> rows) {
    auto out = open_out(dir / "continuity.csv");
    out << "grad_distance,solution_distance,bound\n";
    for (const auto& r : rows)
        out << csv_number(r.grad_distance) << ',' << csv_number(r.solution_distance)
            << ',' << csv_number(r.theorem_bound) << '\n';
}

} // namespace loglap
