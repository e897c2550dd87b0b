#pragma once

#include "loglap/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace loglap {

/// Solver and experiment settings carried by a problem file alongside the
/// ProblemSpec itself.
struct RunConfig {
    ProblemSpec spec;
    double tol = 1e-12;
    int max_iter = 200;
    std::uint64_t seed = 1;
    int probe_pairs = 100;

    std::vector<double> sweep_eps;        // optional [sweep] block
    std::vector<double> continuity_alpha_offsets; // optional [continuity] block
    int continuity_component = 1;         // 1-based
};

/// Thrown by parse_problem with every validation error joined into one
/// message, not just the first.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse the sectioned text format ([grid], [system], [component.m],
/// [solver], optional [sweep]/[continuity]). Unknown sections or keys are
/// errors.
RunConfig parse_problem(const std::filesystem::path& path);
RunConfig parse_problem_text(const std::string& text, const std::string& origin = "<string>");

/// Serialize back to the problem-file format; re-parses to an equal config.
std::string serialize_problem(const RunConfig& cfg);

/// FNV-1a hash of the raw file bytes, for the run manifest.
std::uint64_t file_hash(const std::string& bytes);

} // namespace loglap
