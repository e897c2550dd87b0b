#pragma once

#include "loglap/experiments.hpp"
#include "loglap/problem_file.hpp"

#include <filesystem>
#include <string>

namespace loglap {

/// 17-significant-digit formatting; round-trips double through text.
std::string csv_number(double v);

/// Run manifest (input hash, seed, version, certification constants) as JSON.
void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg,
                    std::uint64_t input_hash, const ContractionConstants& c);

void write_iteration_csv(const std::filesystem::path& dir, const SolveReport& rep);
void write_solution_csv(const std::filesystem::path& dir, const GridPtr& grid,
                        const VectorField& u0, const VectorField& up);
void write_sweep_csv(const std::filesystem::path& dir, const SweepReport& rep);
void write_continuity_csv(const std::filesystem::path& dir,
                          std::span<const ContinuityReport> rows);

} // namespace loglap
