#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gcarpa/operators.hpp"
#include "gcarpa/schedules.hpp"

namespace gcarpa::bench {

enum class Experiment { PredictRates, SubspaceRun, BallLine, CsToy, CsReal, GridSearch, Trajectory };

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

enum class MethodKind { Map, Dr, Grap, Gcarpa, NsDr, NsCarpa, NsGcarpa };

std::string_view to_string(MethodKind k);
MethodKind parse_method_kind(std::string_view name);

/// How a stationary gCARPA method picks its parameters on subspace instances.
enum class Tuning {
  Fixed,
  /// gamma from the endpoint minimax at the configured (theta, eta).
  Minimax,
  /// (gamma, theta, eta) from the exhaustive grid.
  GridBest,
};

std::string_view to_string(Tuning t);
Tuning parse_tuning(std::string_view name);

struct MethodSpec {
  std::string label;
  MethodKind kind = MethodKind::Gcarpa;
  Tuning tuning = Tuning::Fixed;
  double mu = 1.0;
  double gamma = 0.5;
  double theta = 1.0;
  double eta = 1.0;
  operators::GrapParams grap;
  schedules::RelaxationLaw relaxation;

  operators::SolverParams params() const { return {mu, gamma, theta, eta}; }
};

struct ScheduleConfig {
  schedules::ParamIntervals intervals;
  double delta = 0.5;
  double shrink = 0.95;
  double c1 = 0.9;
  /// Negative means the midpoint of the gamma interval.
  double gamma0 = -1.0;
  double theta0 = 1.0;
  double eta0 = 1.0;

  schedules::ScheduleState initial_state(bool gamma_only) const;
};

struct BenchConfig {
  Experiment experiment = Experiment::PredictRates;
  double tolerance = 1e-12;
  std::size_t kmax = 5000;
  std::vector<std::uint64_t> seeds{1};
  /// Random starting points per instance (subspace, ball-line).
  std::size_t starts = 10;
  /// Ball-line tolerance sweep; the run stops at the smallest.
  std::vector<double> tolerances;
  /// Friedrichs angles in degrees (predict-rates, run-subspace, grid-search).
  std::vector<double> angles_deg;
  std::size_t n = 100;
  std::size_t p = 50;
  std::vector<std::string> cs_settings;
  std::vector<MethodSpec> methods;
  ScheduleConfig schedule;
  std::vector<double> theta_grid;
  std::vector<double> eta_grid;
  std::vector<double> gamma_grid;
  double trajectory_angle_deg = 45.0;
  std::size_t trajectory_steps = 40;
  bool gate_feasibility = false;
  bool track_support = false;
  /// Per-run CSV files; disabled for sweeps where only the summary matters.
  bool write_runs = true;
  std::string output_dir = "out";
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t workers = 0;

  /// Throws InputError or ParameterError.
  void validate() const;
};

/// Defaults that reproduce the corresponding experiment without a config file.
BenchConfig default_config(Experiment e);

/// JSON overlay on top of default_config; the "experiment" key, when
/// present, selects the defaults (it must agree with `fallback` unless
/// `fallback` is a CS experiment and the key names the other one).
BenchConfig load_config(const std::string& path, Experiment fallback);
BenchConfig parse_config(std::string_view json_text, Experiment fallback);

/// Canonical JSON rendering (sorted keys) for replay. Without the runtime
/// keys (output directory, worker count) it is the input of the config hash.
std::string to_json(const BenchConfig& cfg, bool runtime_keys = true);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace gcarpa::bench
