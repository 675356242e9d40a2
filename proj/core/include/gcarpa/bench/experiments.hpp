#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gcarpa/bench/config.hpp"
#include "gcarpa/bench/csv.hpp"
#include "gcarpa/bench/rate_fit.hpp"
#include "gcarpa/operators.hpp"
#include "gcarpa/problems.hpp"

namespace gcarpa::bench {

struct PredictRow {
  double phi_deg = 0.0;
  std::string method;
  MethodKind kind = MethodKind::Gcarpa;
  double gamma = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  std::string source;
};

std::vector<PredictRow> run_predict_rates(const BenchConfig& cfg);

struct SubspaceCell {
  double phi_deg = 0.0;
  std::string method;
  operators::SolverParams params;
  double xi = 0.0;
  std::vector<operators::RunRecord> runs;
  /// Per start; nullopt when the run hit kmax.
  std::vector<std::optional<std::size_t>> iterations;
  /// Per start; nullopt when the history is too short to fit.
  std::vector<std::optional<RateFit>> fits;

  bool all_converged() const;
  /// Mean over starts, or nullopt when any start failed.
  std::optional<double> mean_iterations() const;
};

struct SubspaceResult {
  std::vector<SubspaceCell> cells;
};

SubspaceResult run_subspace(const BenchConfig& cfg);

struct BallLineRow {
  double tol = 0.0;
  std::string method;
  /// Average with failed starts counted as kmax.
  double mean_iterations = 0.0;
  std::size_t failed = 0;
  std::size_t starts = 0;

  /// Every start hit kmax.
  bool all_failed() const { return failed == starts; }
};

struct BallLineResult {
  std::vector<BallLineRow> rows;
  /// Start 0 of each method, in method order.
  std::vector<std::pair<std::string, operators::RunRecord>> samples;

  const BallLineRow& row(const std::string& method, double tol) const;
};

BallLineResult run_ball_line(const BenchConfig& cfg);

struct CsCell {
  std::string setting;
  std::uint64_t seed = 0;
  std::string method;
  std::size_t kappa = 0;
  operators::RunRecord record;
  /// ||A s - b|| and max(0, ||s||_1 - c) of the solution estimate s.
  double affine_residual = 0.0;
  double l1_excess = 0.0;

  std::optional<std::size_t> iterations() const;
};

struct CsResult {
  std::vector<CsCell> cells;
};

CsResult run_cs(const BenchConfig& cfg);

struct TrajectoryRun {
  std::string method;
  operators::SolverParams params;
  /// Block discriminant at the instance angle (NaN for non-gCARPA methods).
  double discriminant = 0.0;
  std::vector<linalg::Vector> points;
};

std::vector<TrajectoryRun> run_trajectory(const BenchConfig& cfg);

struct GridRow {
  double phi_deg = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  double xi = 0.0;
};

std::vector<GridRow> run_grid_search(const BenchConfig& cfg);

/// Runs the configured experiment, writes its CSV files and manifest.json
/// under cfg.output_dir, and returns the paths written (relative to it).
std::vector<std::string> run_experiment(const BenchConfig& cfg);

CsvTable summary_table(const std::vector<PredictRow>& rows);
CsvTable summary_table(const SubspaceResult& r);
CsvTable summary_table(const BallLineResult& r);
CsvTable summary_table(const CsResult& r);
CsvTable summary_table(const std::vector<GridRow>& rows);
CsvTable trajectory_table(const TrajectoryRun& run);

/// manifest.json: experiment, config hash and the file inventory with sizes
/// and FNV-1a digests.
void write_manifest(const BenchConfig& cfg, const std::vector<std::string>& files);

}  // namespace gcarpa::bench
