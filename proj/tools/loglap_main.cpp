#include "loglap/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace loglap;

struct CommonArgs {
    std::string problem_path;
    std::string out_dir = "out";
    double tol = -1.0;
    int max_iter = -1;
    std::int64_t seed = -1;
    bool override_eps = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("problem", args.problem_path, "problem file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--tol", args.tol, "stopping tolerance override");
    cmd->add_option("--max-iter", args.max_iter, "iteration cap override");
    cmd->add_option("--seed", args.seed, "RNG seed override");
    cmd->add_flag("--override-eps", args.override_eps,
                  "permit inadmissible epsilon (certification off)");
}

struct Loaded {
    RunConfig cfg;
    std::uint64_t hash = 0;
};

Loaded load(const CommonArgs& args) {
    std::ifstream in(args.problem_path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read problem file: " + args.problem_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    Loaded l;
    l.cfg = parse_problem_text(ss.str(), args.problem_path);
    l.hash = file_hash(ss.str());
    if (args.tol > 0.0) l.cfg.tol = args.tol;
    if (args.max_iter > 0) l.cfg.max_iter = args.max_iter;
    if (args.seed >= 0) l.cfg.seed = static_cast<std::uint64_t>(args.seed);
    std::filesystem::create_directories(args.out_dir);
    return l;
}

ContractionConstants constants_of(const RunConfig& cfg, const GridPtr& grid) {
    LinearSolution lin = solve_linear(cfg.spec, grid);
    return contraction_constants(cfg.spec, l2_norm(lin.u0));
}

int cmd_constants(const CommonArgs& args) {
    Loaded l = load(args);
    GridPtr grid = l.cfg.spec.make_problem_grid();
    ContractionConstants c = constants_of(l.cfg, grid);
    write_manifest(args.out_dir, l.cfg, l.hash, c);
    std::cout << "C = " << csv_number(c.symbol_bound) << "\n"
              << "K = " << csv_number(c.kernel_aggregate) << "\n"
              << "M = " << csv_number(c.gradient_bound) << "\n"
              << "epsilon = " << csv_number(c.epsilon) << "\n"
              << "sigma = " << csv_number(c.sigma) << "\n"
              << "epsilon_threshold = " << csv_number(c.epsilon_threshold) << "\n"
              << "u0_norm = " << csv_number(c.u0_norm) << "\n"
              << "admissible = " << (c.admissible ? "true" : "false") << "\n";
    return 0;
}

int cmd_solve_linear(const CommonArgs& args) {
    Loaded l = load(args);
    GridPtr grid = l.cfg.spec.make_problem_grid();
    LinearSolution lin = solve_linear(l.cfg.spec, grid);
    ContractionConstants c = contraction_constants(l.cfg.spec, l2_norm(lin.u0));
    write_manifest(args.out_dir, l.cfg, l.hash, c);
    write_solution_csv(args.out_dir, grid, lin.u0,
                       VectorField::zero(grid, l.cfg.spec.n_components));
    std::cout << "u0_norm = " << csv_number(l2_norm(lin.u0)) << "\n";
    for (std::size_t m = 0; m < lin.zero_mode_defect.size(); ++m)
        std::cout << "zero_mode_defect_" << m + 1 << " = "
                  << csv_number(lin.zero_mode_defect[m]) << "\n";
    if (lin.sources_trivial)
        std::cerr << "warning: all sources vanish; u0 is trivial\n";
    return 0;
}

int cmd_solve(const CommonArgs& args) {
    Loaded l = load(args);
    GridPtr grid = l.cfg.spec.make_problem_grid();
    SolveReport rep = picard_solve(l.cfg.spec, grid, l.cfg.tol, l.cfg.max_iter);
    write_manifest(args.out_dir, l.cfg, l.hash, rep.constants);
    write_iteration_csv(args.out_dir, rep);
    write_solution_csv(args.out_dir, grid, rep.u_cumulative - rep.u_p, rep.u_p);
    std::cout << "iterations = " << rep.iterations << "\n"
              << "converged = " << (rep.converged ? "true" : "false") << "\n"
              << "certified = " << (rep.certified ? "true" : "false") << "\n"
              << "up_norm = " << csv_number(l2_norm(rep.u_p)) << "\n"
              << "relative_residual = "
              << csv_number(rep.residual.relative_residual) << "\n";
    if (!rep.converged) {
        std::cerr << "error: no convergence within " << l.cfg.max_iter
                  << " iterations\n";
        return 1;
    }
    if (!rep.certified && !args.override_eps) {
        std::cerr << "error: run not certified (epsilon inadmissible or rate "
                     "above sigma)\n";
        return 1;
    }
    return 0;
}

int cmd_probe(const CommonArgs& args) {
    Loaded l = load(args);
    GridPtr grid = l.cfg.spec.make_problem_grid();
    LinearSolution lin = solve_linear(l.cfg.spec, grid);
    ContractionProbeReport rep = verify_contraction(l.cfg.spec, grid, lin.u0,
                                                    l.cfg.probe_pairs, l.cfg.seed);
    write_manifest(args.out_dir, l.cfg, l.hash,
                   contraction_constants(l.cfg.spec, l2_norm(lin.u0)));
    std::cout << "pairs = " << rep.pairs_used << "\n"
              << "max_ratio = " << csv_number(rep.max_ratio) << "\n"
              << "sigma = " << csv_number(rep.sigma) << "\n"
              << "pass = " << (rep.pass ? "true" : "false") << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_sweep(const CommonArgs& args) {
    Loaded l = load(args);
    if (l.cfg.sweep_eps.empty())
        throw ParseError(args.problem_path + ": sweep-eps needs a [sweep] block");
    GridPtr grid = l.cfg.spec.make_problem_grid();
    SweepReport rep;
    try {
        rep = epsilon_sweep(l.cfg.spec, l.cfg.sweep_eps, l.cfg.tol, l.cfg.max_iter,
                            args.override_eps);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    write_manifest(args.out_dir, l.cfg, l.hash, constants_of(l.cfg, grid));
    write_sweep_csv(args.out_dir, rep);
    std::cout << "points = " << rep.epsilons.size() << "\n"
              << "pass = " << (rep.pass ? "true" : "false") << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_continuity(const CommonArgs& args) {
    Loaded l = load(args);
    if (l.cfg.continuity_alpha_offsets.empty())
        throw ParseError(args.problem_path +
                         ": continuity needs a [continuity] block");
    int comp = l.cfg.continuity_component - 1;
    if (comp < 0 || comp >= l.cfg.spec.n_components)
        throw ParseError(args.problem_path + ": continuity component out of range");

    GridPtr grid = l.cfg.spec.make_problem_grid();
    std::vector<ContinuityReport> rows;
    bool pass = true;
    for (double off : l.cfg.continuity_alpha_offsets) {
        NonlinearitySpec g2 = l.cfg.spec.nonlinearity;
        g2.components[static_cast<std::size_t>(comp)].alpha -= off;
        ContinuityReport r = continuity_experiment(l.cfg.spec, l.cfg.spec.nonlinearity,
                                                   g2, l.cfg.tol, l.cfg.max_iter);
        pass = pass && r.pass;
        rows.push_back(std::move(r));
    }
    write_manifest(args.out_dir, l.cfg, l.hash, constants_of(l.cfg, grid));
    write_continuity_csv(args.out_dir, rows);
    std::cout << "pairs = " << rows.size() << "\n"
              << "pass = " << (pass ? "true" : "false") << "\n";
    return pass ? 0 : 1;
}

int cmd_residual(const CommonArgs& args) {
    Loaded l = load(args);
    GridPtr grid = l.cfg.spec.make_problem_grid();
    SolveReport rep = picard_solve(l.cfg.spec, grid, l.cfg.tol, l.cfg.max_iter);
    write_manifest(args.out_dir, l.cfg, l.hash, rep.constants);
    std::cout << "relative_residual = "
              << csv_number(rep.residual.relative_residual) << "\n";
    for (std::size_t m = 0; m < rep.residual.component_residuals.size(); ++m)
        std::cout << "component_residual_" << m + 1 << " = "
                  << csv_number(rep.residual.component_residuals[m]) << "\n";
    for (std::size_t m = 0; m < rep.residual.zero_mode_defect.size(); ++m)
        std::cout << "zero_mode_defect_" << m + 1 << " = "
                  << csv_number(rep.residual.zero_mode_defect[m]) << "\n";
    return (rep.converged && rep.residual.relative_residual <= 1e-8) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral solver for systems with the logarithmic "
                 "Laplacian and drift"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::pair<CLI::App*, int (*)(const CommonArgs&)>> cmds = {
        {app.add_subcommand("constants", "certification constants C, K, M, sigma"),
         cmd_constants},
        {app.add_subcommand("solve-linear", "linear solve (epsilon = 0)"),
         cmd_solve_linear},
        {app.add_subcommand("solve", "fixed-point solve with certification"),
         cmd_solve},
        {app.add_subcommand("contraction-probe", "empirical Lipschitz probe"),
         cmd_probe},
        {app.add_subcommand("sweep-eps", "epsilon sweep against the a-priori bound"),
         cmd_sweep},
        {app.add_subcommand("continuity", "continuity-in-nonlinearity experiment"),
         cmd_continuity},
        {app.add_subcommand("residual", "solve and report the system residual"),
         cmd_residual},
    };
    for (auto& [cmd, fn] : cmds) add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& [cmd, fn] : cmds)
            if (cmd->parsed()) return fn(args);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
