#include "gcarpa/bench/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gcarpa/bench/methods.hpp"
#include "gcarpa/bench/parallel.hpp"
#include "gcarpa/errors.hpp"
#include "gcarpa/spectral.hpp"

namespace gcarpa::bench {

namespace fs = std::filesystem;
using linalg::Vector;

namespace {

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::string slug(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "method" : out;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string("fail");
}

operators::RunOptions run_options(const BenchConfig& cfg, double tol, bool record_feasibility) {
  operators::RunOptions o;
  o.tol = tol;
  o.kmax = cfg.kmax;
  o.track_support = cfg.track_support;
  o.record_feasibility = record_feasibility;
  o.gate_feasibility = cfg.gate_feasibility;
  return o;
}

/// First step meeting tol under the configured gate.
std::optional<std::size_t> converged_at(const operators::RunRecord& rec, double tol, bool gate) {
  for (std::size_t i = 0; i < rec.fpr_history.size(); ++i) {
    if (rec.fpr_history[i] <= tol && (!gate || rec.feas_history[i] <= tol)) return i + 1;
  }
  return std::nullopt;
}

std::vector<std::string> write_with_manifest(const BenchConfig& cfg,
                                             const std::vector<std::pair<std::string, CsvTable>>& files) {
  std::vector<std::string> names;
  for (const auto& [name, table] : files) {
    write_csv(fs::path(cfg.output_dir) / name, table);
    names.push_back(name);
  }
  write_manifest(cfg, names);
  names.push_back("manifest.json");
  return names;
}

}  // namespace

std::vector<PredictRow> run_predict_rates(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<PredictRow> rows;
  for (double deg : cfg.angles_deg) {
    const auto spec = spectral::PrincipalAngleSpec::schedule(cfg.p, radians(deg));
    for (const MethodSpec& m : cfg.methods) {
      const ResolvedMethod r = resolve_for_subspace(m, spec, cfg);
      if (std::isnan(r.xi)) continue;
      PredictRow row;
      row.phi_deg = deg;
      row.method = m.label;
      row.kind = m.kind;
      row.gamma = r.spec.gamma;
      row.theta = r.spec.theta;
      row.eta = r.spec.eta;
      row.xi = r.xi;
      if (r.minimax_source) {
        row.source = std::string(spectral::to_string(*r.minimax_source));
      } else if (m.tuning == Tuning::GridBest) {
        row.source = "grid";
      } else {
        row.source = "closed-form";
      }
      if (m.kind == MethodKind::Map) {
        row.gamma = row.theta = row.eta = std::numeric_limits<double>::quiet_NaN();
      } else if (m.kind == MethodKind::Dr) {
        row.gamma = 0.0;
        row.theta = 1.0;
        row.eta = 1.0;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool SubspaceCell::all_converged() const {
  return std::all_of(iterations.begin(), iterations.end(), [](const auto& v) { return v.has_value(); });
}

std::optional<double> SubspaceCell::mean_iterations() const {
  if (iterations.empty() || !all_converged()) return std::nullopt;
  double sum = 0.0;
  for (const auto& v : iterations) sum += static_cast<double>(*v);
  return sum / static_cast<double>(iterations.size());
}

SubspaceResult run_subspace(const BenchConfig& cfg) {
  cfg.validate();
  struct Slot {
    std::size_t cell;
    std::size_t start;
  };
  SubspaceResult result;
  std::vector<problems::SubspaceInstance> instances;
  std::vector<ResolvedMethod> resolved;
  std::vector<std::size_t> cell_instance;
  std::vector<Slot> slots;
  const auto starts = problems::unit_gaussian_starts(cfg.n, cfg.starts, cfg.seeds.front());

  for (double deg : cfg.angles_deg) {
    instances.push_back(problems::make_subspace_instance(cfg.n, cfg.p, radians(deg)));
    for (const MethodSpec& m : cfg.methods) {
      ResolvedMethod r = resolve_for_subspace(m, instances.back().angles, cfg);
      SubspaceCell cell;
      cell.phi_deg = deg;
      cell.method = m.label;
      cell.params = r.spec.params();
      cell.xi = r.xi;
      cell.runs.resize(cfg.starts);
      cell.iterations.resize(cfg.starts);
      cell.fits.resize(cfg.starts);
      for (std::size_t s = 0; s < cfg.starts; ++s) slots.push_back({result.cells.size(), s});
      result.cells.push_back(std::move(cell));
      resolved.push_back(std::move(r));
      cell_instance.push_back(instances.size() - 1);
    }
  }

  parallel_for(slots.size(), cfg.workers, [&](std::size_t i) {
    const Slot slot = slots[i];
    const auto& inst = instances[cell_instance[slot.cell]];
    auto stepper = make_stepper(resolved[slot.cell].spec, inst.set_x, inst.set_y, cfg.schedule);
    SubspaceCell& cell = result.cells[slot.cell];
    cell.runs[slot.start] = operators::run_fixed_point(*stepper, starts[slot.start],
                                                       run_options(cfg, cfg.tolerance, true));
    const auto& rec = cell.runs[slot.start];
    cell.iterations[slot.start] = converged_at(rec, cfg.tolerance, cfg.gate_feasibility);
    try {
      cell.fits[slot.start] = fit_empirical_rate(rec.fpr_history);
    } catch (const InsufficientDataError&) {
      cell.fits[slot.start] = std::nullopt;
    }
  });
  return result;
}

const BallLineRow& BallLineResult::row(const std::string& method, double tol) const {
  for (const BallLineRow& r : rows) {
    if (r.method == method && r.tol == tol) return r;
  }
  throw InputError("ball-line: no row for " + method);
}

BallLineResult run_ball_line(const BenchConfig& cfg) {
  cfg.validate();
  const auto inst = problems::make_ball_line_instance();
  std::vector<double> tols = cfg.tolerances.empty() ? std::vector<double>{cfg.tolerance} : cfg.tolerances;
  const double tightest = *std::min_element(tols.begin(), tols.end());
  const std::size_t nm = cfg.methods.size();
  const std::size_t ns = cfg.starts;
  const std::uint64_t seed = cfg.seeds.front();

  std::vector<Vector> starts(ns);
  for (std::size_t s = 0; s < ns; ++s) starts[s] = inst.start(seed, s);

  // counts[(m * ns + s) * nt + t], 0 meaning kmax was hit.
  const std::size_t nt = tols.size();
  std::vector<std::size_t> counts(nm * ns * nt, 0);
  BallLineResult result;
  result.samples.resize(nm);
  parallel_for(nm * ns, cfg.workers, [&](std::size_t task) {
    const std::size_t m = task / ns;
    const std::size_t s = task % ns;
    auto stepper = make_stepper(cfg.methods[m], inst.line, inst.ball, cfg.schedule);
    auto rec = operators::run_fixed_point(*stepper, starts[s], run_options(cfg, tightest, cfg.gate_feasibility));
    for (std::size_t t = 0; t < nt; ++t) {
      counts[task * nt + t] = converged_at(rec, tols[t], cfg.gate_feasibility).value_or(0);
    }
    if (s == 0) result.samples[m] = {cfg.methods[m].label, std::move(rec)};
  });

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t m = 0; m < nm; ++m) {
      BallLineRow row;
      row.tol = tols[t];
      row.method = cfg.methods[m].label;
      row.starts = ns;
      double sum = 0.0;
      for (std::size_t s = 0; s < ns; ++s) {
        const std::size_t c = counts[(m * ns + s) * nt + t];
        if (c == 0) ++row.failed;
        sum += static_cast<double>(c == 0 ? cfg.kmax : c);
      }
      row.mean_iterations = ns ? sum / static_cast<double>(ns) : 0.0;
      result.rows.push_back(row);
    }
  }
  return result;
}

std::optional<std::size_t> CsCell::iterations() const {
  if (record.terminated != operators::Termination::Converged) return std::nullopt;
  return record.iterations;
}

CsResult run_cs(const BenchConfig& cfg) {
  cfg.validate();
  struct Job {
    std::size_t instance;
    std::size_t method;
  };
  std::vector<problems::CsInstance> instances;
  std::vector<Vector> starts;
  for (const std::string& name : cfg.cs_settings) {
    const auto setting = problems::parse_cs_setting(name);
    for (std::uint64_t seed : cfg.seeds) {
      instances.push_back(problems::make_cs_instance(setting, seed));
      starts.push_back(problems::unit_gaussian_starts(instances.back().info.n, 1, seed).front());
    }
  }
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) jobs.push_back({i, m});
  }

  CsResult result;
  result.cells.resize(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t j) {
    const auto& inst = instances[jobs[j].instance];
    const MethodSpec& m = cfg.methods[jobs[j].method];
    auto stepper = make_stepper(m, inst.set_x, inst.set_y, cfg.schedule);
    CsCell cell;
    cell.setting = std::string(problems::to_string(inst.info.setting));
    cell.seed = inst.seed;
    cell.method = m.label;
    cell.kappa = inst.info.kappa;
    cell.record = operators::run_fixed_point(*stepper, starts[jobs[j].instance], run_options(cfg, cfg.tolerance, true));
    const Vector& s = cell.record.solution;
    cell.affine_residual = (inst.sensing.apply(s) - inst.b).norm();
    cell.l1_excess = std::max(0.0, s.lpNorm<1>() - inst.radius);
    result.cells[j] = std::move(cell);
  });
  return result;
}

std::vector<TrajectoryRun> run_trajectory(const BenchConfig& cfg) {
  cfg.validate();
  const double phi = radians(cfg.trajectory_angle_deg);
  const auto inst = problems::make_two_lines(phi);
  Vector z0(2);
  z0 << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const double t = std::sin(phi) * std::sin(phi);

  std::vector<TrajectoryRun> runs;
  for (const MethodSpec& m : cfg.methods) {
    MethodSpec spec = m;
    if (spec.kind == MethodKind::Gcarpa && spec.tuning != Tuning::Fixed) {
      spec = resolve_for_subspace(m, inst.angles, cfg).spec;
    }
    auto stepper = make_stepper(spec, inst.set_x, inst.set_y, cfg.schedule);
    TrajectoryRun run;
    run.method = m.label;
    run.params = spec.kind == MethodKind::Dr ? operators::SolverParams{1.0, 0.0, 1.0, 1.0} : spec.params();
    run.discriminant = (spec.kind == MethodKind::Gcarpa || spec.kind == MethodKind::Dr)
                           ? spectral::block_eigs(t, run.params).discriminant
                           : std::numeric_limits<double>::quiet_NaN();
    stepper->reset(z0);
    run.points.push_back(z0);
    for (std::size_t k = 0; k < cfg.trajectory_steps; ++k) {
      stepper->advance();
      run.points.push_back(stepper->z());
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<GridRow> run_grid_search(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<GridRow> rows(cfg.angles_deg.size());
  parallel_for(rows.size(), cfg.workers, [&](std::size_t i) {
    const double deg = cfg.angles_deg[i];
    const auto spec = spectral::PrincipalAngleSpec::schedule(cfg.p, radians(deg));
    const auto gb = spectral::grid_best(spec, cfg.theta_grid, cfg.eta_grid, cfg.gamma_grid);
    rows[i] = {deg, gb.gamma, gb.theta, gb.eta, gb.xi};
  });
  return rows;
}

CsvTable summary_table(const std::vector<PredictRow>& rows) {
  CsvTable t;
  t.header = {"phi_deg", "method", "gamma", "theta", "eta", "xi", "source"};
  for (const PredictRow& r : rows) {
    t.add_row({format_real(r.phi_deg), r.method, format_real(r.gamma), format_real(r.theta), format_real(r.eta),
               format_real(r.xi), r.source});
  }
  return t;
}

CsvTable summary_table(const SubspaceResult& res) {
  CsvTable t;
  t.header = {"phi_deg", "method", "gamma", "theta", "eta", "xi", "mean_iterations", "converged", "starts",
              "mean_rate_fit"};
  for (const SubspaceCell& c : res.cells) {
    std::size_t converged = 0;
    double fit_sum = 0.0;
    std::size_t fitted = 0;
    for (std::size_t s = 0; s < c.iterations.size(); ++s) {
      if (c.iterations[s]) ++converged;
      if (c.fits[s]) {
        fit_sum += c.fits[s]->r_hat;
        ++fitted;
      }
    }
    t.add_row({format_real(c.phi_deg), c.method, format_real(c.params.gamma), format_real(c.params.theta),
               format_real(c.params.eta), format_real(c.xi), format_optional(c.mean_iterations()),
               std::to_string(converged), std::to_string(c.iterations.size()),
               fitted ? format_real(fit_sum / static_cast<double>(fitted)) : std::string("n/a")});
  }
  return t;
}

CsvTable summary_table(const BallLineResult& res) {
  CsvTable t;
  t.header = {"tol", "method", "mean_iterations", "failed_starts", "starts"};
  for (const BallLineRow& r : res.rows) {
    t.add_row({format_real(r.tol), r.method, r.all_failed() ? std::string("fail") : format_real(r.mean_iterations),
               std::to_string(r.failed), std::to_string(r.starts)});
  }
  return t;
}

CsvTable summary_table(const CsResult& res) {
  CsvTable t;
  t.header = {"setting", "seed", "method", "iterations", "final_fpr", "final_feas", "affine_residual",
              "l1_excess", "final_support", "kappa"};
  for (const CsCell& c : res.cells) {
    const auto& rec = c.record;
    std::optional<double> its;
    if (c.iterations()) its = static_cast<double>(*c.iterations());
    t.add_row({c.setting, std::to_string(c.seed), c.method, format_optional(its),
               rec.fpr_history.empty() ? std::string() : format_real(rec.fpr_history.back()),
               rec.feas_history.empty() ? std::string() : format_real(rec.feas_history.back()),
               format_real(c.affine_residual), format_real(c.l1_excess),
               rec.support_history && !rec.support_history->empty() ? std::to_string(rec.support_history->back())
                                                                     : std::string(),
               std::to_string(c.kappa)});
  }
  return t;
}

CsvTable summary_table(const std::vector<GridRow>& rows) {
  CsvTable t;
  t.header = {"phi_deg", "gamma", "theta", "eta", "xi"};
  for (const GridRow& r : rows) {
    t.add_row({format_real(r.phi_deg), format_real(r.gamma), format_real(r.theta), format_real(r.eta),
               format_real(r.xi)});
  }
  return t;
}

CsvTable trajectory_table(const TrajectoryRun& run) {
  CsvTable t;
  t.header = {"k", "z1", "z2", "fpr"};
  for (std::size_t k = 0; k < run.points.size(); ++k) {
    const Vector& z = run.points[k];
    std::string fpr;
    if (k > 0) fpr = format_real(operators::fixed_point_residual(z, run.points[k - 1]));
    t.add_row({std::to_string(k), format_real(z[0]), format_real(z[1]), std::move(fpr)});
  }
  return t;
}

void write_manifest(const BenchConfig& cfg, const std::vector<std::string>& files) {
  nlohmann::ordered_json inventory = nlohmann::ordered_json::array();
  for (const std::string& name : files) {
    std::ifstream in(fs::path(cfg.output_dir) / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    inventory.push_back({{"path", name}, {"bytes", bytes.size()}, {"fnv1a", digest}});
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(cfg, false))));
  nlohmann::ordered_json manifest{{"experiment", std::string(to_string(cfg.experiment))},
                                  {"config_hash", hash},
                                  {"files", inventory}};
  std::ofstream out(fs::path(cfg.output_dir) / "manifest.json", std::ios::binary);
  if (!out) throw InputError("cannot write manifest.json under '" + cfg.output_dir + "'");
  out << manifest.dump(2) << '\n';
}

std::vector<std::string> run_experiment(const BenchConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.output_dir);
  std::vector<std::pair<std::string, CsvTable>> files;
  switch (cfg.experiment) {
    case Experiment::PredictRates:
      files.emplace_back("summary.csv", summary_table(run_predict_rates(cfg)));
      break;
    case Experiment::GridSearch:
      files.emplace_back("summary.csv", summary_table(run_grid_search(cfg)));
      break;
    case Experiment::SubspaceRun: {
      const SubspaceResult res = run_subspace(cfg);
      if (cfg.write_runs) {
        for (const SubspaceCell& c : res.cells) {
          for (std::size_t s = 0; s < c.runs.size(); ++s) {
            files.emplace_back("runs/" + slug(c.method) + "_phi" + format_real(c.phi_deg) + "_start" +
                                   std::to_string(s) + ".csv",
                               run_table(c.runs[s]));
          }
        }
      }
      files.emplace_back("summary.csv", summary_table(res));
      break;
    }
    case Experiment::BallLine: {
      const BallLineResult res = run_ball_line(cfg);
      if (cfg.write_runs) {
        for (const auto& [label, rec] : res.samples) {
          files.emplace_back("runs/" + slug(label) + "_ball-line_start0.csv", run_table(rec));
        }
      }
      files.emplace_back("summary.csv", summary_table(res));
      break;
    }
    case Experiment::CsToy:
    case Experiment::CsReal: {
      const CsResult res = run_cs(cfg);
      if (cfg.write_runs) {
        for (const CsCell& c : res.cells) {
          files.emplace_back("runs/" + slug(c.method) + "_" + c.setting + "_seed" + std::to_string(c.seed) + ".csv",
                             run_table(c.record));
        }
      }
      files.emplace_back("summary.csv", summary_table(res));
      break;
    }
    case Experiment::Trajectory: {
      CsvTable summary;
      summary.header = {"method", "gamma", "theta", "eta", "discriminant"};
      for (const TrajectoryRun& run : run_trajectory(cfg)) {
        files.emplace_back("runs/" + slug(run.method) + "_trajectory.csv", trajectory_table(run));
        summary.add_row({run.method, format_real(run.params.gamma), format_real(run.params.theta),
                         format_real(run.params.eta), format_real(run.discriminant)});
      }
      files.emplace_back("summary.csv", std::move(summary));
      break;
    }
  }
  return write_with_manifest(cfg, files);
}

}  // namespace gcarpa::bench
