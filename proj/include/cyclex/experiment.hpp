#pragma once

#include "cyclex/config.hpp"
#include "cyclex/impossibility.hpp"
#include "cyclex/product.hpp"
#include "cyclex/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cyclex {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotConverged = 2;

struct ExperimentOutcome {
  int status = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string message;
};

/// Dispatches the experiment, writes its CSV/JSON artifacts under `out_dir`
/// and returns the exit status (0 success, 2 not converged, 1 invalid input).
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir);

// Artifact writers. Doubles are written in shortest round-trip form.

std::string format_double(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, std::size_t dim);
void write_iteration_csv(std::ostream& os, const std::vector<IterationRecord>& log,
                         std::size_t blocks, std::size_t dim);
void write_spiral_csv(std::ostream& os, const SpiralResult& spiral);

nlohmann::ordered_json cycle_json(const PeriodicResult& run);
nlohmann::ordered_json solution_json(const ProductResult& result, const Vector& fair_point);
nlohmann::ordered_json report_json(const FalsificationReport& report);
nlohmann::ordered_json gap_json(const CandidateGap& gap);

/// Reads the "points" array of a cycle/solution JSON document.
std::vector<Vector> points_from_json(const nlohmann::json& doc);

}  // namespace cyclex
