#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcarpa/bench/config.hpp"
#include "gcarpa/bench/experiments.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> kmax;
  std::optional<std::size_t> starts;
  std::optional<std::size_t> workers;
  std::string out;
  bool gate = false;
  bool no_runs = false;
  std::vector<std::string> settings;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config overlay")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Random seed (replaces the configured seed list)");
  cmd->add_option("--tol", o.tol, "Fixed-point residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--kmax", o.kmax, "Iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--starts", o.starts, "Random starting points per instance");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_flag("--gate-feasibility", o.gate, "Also require the feasibility residual to meet --tol");
  cmd->add_flag("--no-runs", o.no_runs, "Write only summary.csv and the manifest");
}

gcarpa::bench::BenchConfig build_config(gcarpa::bench::Experiment e, const Overrides& o) {
  using namespace gcarpa::bench;
  BenchConfig cfg = o.config.empty() ? default_config(e) : load_config(o.config, e);
  if (o.seed) cfg.seeds = {*o.seed};
  if (o.tol) {
    cfg.tolerance = *o.tol;
    if (cfg.experiment == Experiment::BallLine) cfg.tolerances = {*o.tol};
  }
  if (o.kmax) cfg.kmax = *o.kmax;
  if (o.starts) cfg.starts = *o.starts;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.gate) cfg.gate_feasibility = true;
  if (o.no_runs) cfg.write_runs = false;
  if (!o.settings.empty()) cfg.cs_settings = o.settings;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using gcarpa::bench::Experiment;
  CLI::App app{"Relaxed-projection feasibility benchmarks"};
  app.require_subcommand(1);

  Overrides o;
  const std::vector<std::pair<Experiment, const char*>> commands = {
      {Experiment::PredictRates, "Predicted linear factors for the subspace model"},
      {Experiment::SubspaceRun, "Iteration counts and rate fits on two-subspace instances"},
      {Experiment::BallLine, "Ball tangent to a line, averaged over random starts"},
      {Experiment::CsReal, "Compressed-sensing feasibility instances"},
      {Experiment::GridSearch, "Exhaustive (gamma, theta, eta) grid search of the predicted factor"},
      {Experiment::Trajectory, "Iterates on a single principal-angle plane"},
  };
  std::vector<std::pair<CLI::App*, Experiment>> subs;
  for (const auto& [e, help] : commands) {
    CLI::App* cmd = app.add_subcommand(std::string(gcarpa::bench::to_string(e)), help);
    add_common(cmd, o);
    if (e == Experiment::CsReal) {
      cmd->add_option("--setting", o.settings, "Instance settings: toy, p1, p2, p3, p4");
    }
    subs.emplace_back(cmd, e);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [cmd, e] : subs) {
      if (!cmd->parsed()) continue;
      Experiment experiment = e;
      if (e == Experiment::CsReal && o.settings.size() == 1 && o.settings.front() == "toy") {
        experiment = Experiment::CsToy;
      }
      const auto cfg = build_config(experiment, o);
      const auto files = gcarpa::bench::run_experiment(cfg);
      std::cout << "wrote " << files.size() << " files to " << cfg.output_dir << '\n';
      std::cout << gcarpa::bench::to_csv_text(gcarpa::bench::read_csv(cfg.output_dir + "/summary.csv"));
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
