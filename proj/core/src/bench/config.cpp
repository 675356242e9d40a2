#include "gcarpa/bench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gcarpa/errors.hpp"
#include "gcarpa/spectral.hpp"

namespace gcarpa::bench {

using nlohmann::json;

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view name, const std::pair<E, const char*> (&table)[N], const char* what) {
  for (const auto& [value, text] : table) {
    if (name == text) return value;
  }
  throw InputError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

template <class E, std::size_t N>
std::string_view enum_name(E value, const std::pair<E, const char*> (&table)[N]) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "unknown";
}

constexpr std::pair<Experiment, const char*> kExperiments[] = {
    {Experiment::PredictRates, "predict-rates"}, {Experiment::SubspaceRun, "run-subspace"},
    {Experiment::BallLine, "run-ball-line"},     {Experiment::CsToy, "cs-toy"},
    {Experiment::CsReal, "run-cs"},              {Experiment::GridSearch, "grid-search"},
    {Experiment::Trajectory, "trajectory"},
};

constexpr std::pair<MethodKind, const char*> kKinds[] = {
    {MethodKind::Map, "map"},         {MethodKind::Dr, "dr"},
    {MethodKind::Grap, "grap"},       {MethodKind::Gcarpa, "gcarpa"},
    {MethodKind::NsDr, "ns-dr"},      {MethodKind::NsCarpa, "ns-carpa"},
    {MethodKind::NsGcarpa, "ns-gcarpa"},
};

constexpr std::pair<Tuning, const char*> kTunings[] = {
    {Tuning::Fixed, "fixed"}, {Tuning::Minimax, "minimax"}, {Tuning::GridBest, "grid-best"}};

MethodSpec method(std::string label, MethodKind kind, double gamma = 0.5, double theta = 1.0,
                  double eta = 1.0, Tuning tuning = Tuning::Fixed) {
  MethodSpec m;
  m.label = std::move(label);
  m.kind = kind;
  m.gamma = gamma;
  m.theta = theta;
  m.eta = eta;
  m.tuning = tuning;
  return m;
}

std::vector<MethodSpec> comparison_methods(double carpa_gamma, operators::SolverParams g) {
  return {
      method("DR", MethodKind::Dr),
      method("ns-DR", MethodKind::NsDr),
      method("MAP", MethodKind::Map),
      method("GRAP", MethodKind::Grap),
      method("CARPA", MethodKind::Gcarpa, carpa_gamma, 1.0, 1.0),
      method("ns-CARPA", MethodKind::NsCarpa),
      method("gCARPA", MethodKind::Gcarpa, g.gamma, g.theta, g.eta),
      method("ns-gCARPA", MethodKind::NsGcarpa),
  };
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw InputError(std::string(where) + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw InputError(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config key '") + key + "': " + e.what());
  }
}

MethodSpec method_from_json(const json& j) {
  check_keys(j, {"label", "kind", "tuning", "mu", "gamma", "theta", "eta", "grap", "relaxation"}, "method");
  MethodSpec m;
  std::string kind = "gcarpa";
  std::string tuning = "fixed";
  read(j, "kind", kind);
  read(j, "tuning", tuning);
  m.kind = parse_method_kind(kind);
  m.tuning = parse_tuning(tuning);
  m.label = kind;
  read(j, "label", m.label);
  read(j, "mu", m.mu);
  read(j, "gamma", m.gamma);
  read(j, "theta", m.theta);
  read(j, "eta", m.eta);
  if (j.contains("grap")) {
    const json& g = j.at("grap");
    check_keys(g, {"alpha", "beta"}, "grap");
    read(g, "alpha", m.grap.alpha);
    read(g, "beta", m.grap.beta);
  }
  if (j.contains("relaxation")) {
    const json& r = j.at("relaxation");
    check_keys(r, {"base", "amp", "exponent", "lo", "hi"}, "relaxation");
    read(r, "base", m.relaxation.base);
    read(r, "amp", m.relaxation.amp);
    read(r, "exponent", m.relaxation.exponent);
    read(r, "lo", m.relaxation.lo);
    read(r, "hi", m.relaxation.hi);
  }
  return m;
}

json method_to_json(const MethodSpec& m) {
  return json{{"label", m.label},
              {"kind", std::string(to_string(m.kind))},
              {"tuning", std::string(to_string(m.tuning))},
              {"mu", m.mu},
              {"gamma", m.gamma},
              {"theta", m.theta},
              {"eta", m.eta},
              {"grap", {{"alpha", m.grap.alpha}, {"beta", m.grap.beta}}},
              {"relaxation",
               {{"base", m.relaxation.base},
                {"amp", m.relaxation.amp},
                {"exponent", m.relaxation.exponent},
                {"lo", m.relaxation.lo},
                {"hi", m.relaxation.hi}}}};
}

void schedule_from_json(const json& j, ScheduleConfig& s) {
  check_keys(j, {"gamma_min", "gamma_max", "theta_min", "theta_max", "eta_min", "eta_max", "mu", "delta",
                 "shrink", "c1", "gamma0", "theta0", "eta0"},
             "schedule");
  read(j, "gamma_min", s.intervals.gamma_min);
  read(j, "gamma_max", s.intervals.gamma_max);
  read(j, "theta_min", s.intervals.theta_min);
  read(j, "theta_max", s.intervals.theta_max);
  read(j, "eta_min", s.intervals.eta_min);
  read(j, "eta_max", s.intervals.eta_max);
  read(j, "mu", s.intervals.mu);
  read(j, "delta", s.delta);
  read(j, "shrink", s.shrink);
  read(j, "c1", s.c1);
  read(j, "gamma0", s.gamma0);
  read(j, "theta0", s.theta0);
  read(j, "eta0", s.eta0);
}

json schedule_to_json(const ScheduleConfig& s) {
  return json{{"gamma_min", s.intervals.gamma_min}, {"gamma_max", s.intervals.gamma_max},
              {"theta_min", s.intervals.theta_min}, {"theta_max", s.intervals.theta_max},
              {"eta_min", s.intervals.eta_min},     {"eta_max", s.intervals.eta_max},
              {"mu", s.intervals.mu},               {"delta", s.delta},
              {"shrink", s.shrink},                 {"c1", s.c1},
              {"gamma0", s.gamma0},                 {"theta0", s.theta0},
              {"eta0", s.eta0}};
}

}  // namespace

std::string_view to_string(Experiment e) { return enum_name(e, kExperiments); }
Experiment parse_experiment(std::string_view name) { return parse_enum(name, kExperiments, "experiment"); }
std::string_view to_string(MethodKind k) { return enum_name(k, kKinds); }
MethodKind parse_method_kind(std::string_view name) { return parse_enum(name, kKinds, "method kind"); }
std::string_view to_string(Tuning t) { return enum_name(t, kTunings); }
Tuning parse_tuning(std::string_view name) { return parse_enum(name, kTunings, "tuning rule"); }

schedules::ScheduleState ScheduleConfig::initial_state(bool gamma_only) const {
  schedules::ScheduleState s = gamma_only ? schedules::ScheduleState::initial_gamma_only(intervals)
                                          : schedules::ScheduleState::initial(intervals);
  if (gamma0 >= 0.0) s.gamma = gamma0;
  if (!gamma_only) {
    s.theta = theta0;
    s.eta = eta0;
  }
  s.delta = delta;
  s.shrink_gamma = s.shrink_theta = s.shrink_eta = shrink;
  s.c1 = c1;
  return s;
}

void BenchConfig::validate() const {
  if (!(tolerance > 0.0)) throw InputError("config: tolerance must be positive");
  if (kmax < 1) throw InputError("config: kmax must be at least 1");
  if (methods.empty()) throw InputError("config: at least one method is required");
  if (seeds.empty()) throw InputError("config: at least one seed is required");
  for (double t : tolerances) {
    if (!(t > 0.0)) throw InputError("config: tolerances must be positive");
  }
  for (const MethodSpec& m : methods) {
    switch (m.kind) {
      case MethodKind::Gcarpa:
        if (m.tuning != Tuning::GridBest) {
          operators::SolverParams p = m.params();
          if (m.tuning == Tuning::Minimax) p.gamma = 0.0;
          p.validate();
        }
        break;
      case MethodKind::Grap: m.grap.validate(); break;
      case MethodKind::NsDr: m.relaxation.validate(); break;
      default: break;
    }
  }
  schedule.intervals.validate();
  if (!(schedule.delta > 0.0)) throw ParameterError("config: schedule delta must be positive");
  if (!(schedule.shrink > 0.0 && schedule.shrink < 1.0)) throw ParameterError("config: shrink must lie in (0, 1)");
  if (!(schedule.c1 > 0.0)) throw ParameterError("config: c1 must be positive");
}

BenchConfig default_config(Experiment e) {
  BenchConfig c;
  c.experiment = e;
  c.theta_grid = spectral::default_theta_grid();
  c.eta_grid = spectral::default_theta_grid();
  c.gamma_grid = spectral::default_gamma_grid();
  switch (e) {
    case Experiment::PredictRates:
    case Experiment::SubspaceRun:
    case Experiment::GridSearch:
      c.angles_deg = e == Experiment::SubspaceRun ? std::vector<double>{10, 20, 45, 60}
                                                  : std::vector<double>{5, 10, 15, 20};
      if (e == Experiment::PredictRates) c.methods.push_back(method("MAP", MethodKind::Map));
      c.methods.push_back(method("DR", MethodKind::Dr));
      c.methods.push_back(method("CARPA-opt", MethodKind::Gcarpa, 0.0, 1.0, 1.0, Tuning::Minimax));
      c.methods.push_back(method("gCARPA-opt", MethodKind::Gcarpa, 0.0, 0.7, 0.7, Tuning::Minimax));
      c.methods.push_back(method("grid-best", MethodKind::Gcarpa, 0.0, 1.0, 1.0, Tuning::GridBest));
      if (e == Experiment::GridSearch) c.methods = {method("grid-best", MethodKind::Gcarpa, 0.0, 1.0, 1.0, Tuning::GridBest)};
      break;
    case Experiment::BallLine:
      c.kmax = 10000;
      c.starts = 10000;
      c.tolerances = {1e-4, 1e-6, 1e-8, 1e-10};
      c.tolerance = 1e-10;
      c.methods = comparison_methods(0.5, {1.0, 0.0, 1.0, 1.0});
      break;
    case Experiment::CsToy:
      c.cs_settings = {"toy"};
      c.track_support = true;
      c.methods = comparison_methods(0.5, {1.0, 0.3, 1.0, 0.8});
      break;
    case Experiment::CsReal:
      c.cs_settings = {"p1", "p2", "p3", "p4"};
      c.track_support = true;
      c.methods = comparison_methods(0.5, {1.0, 0.3, 1.0, 0.8});
      break;
    case Experiment::Trajectory:
      c.methods = {method("DR", MethodKind::Dr), method("CARPA", MethodKind::Gcarpa, 0.3, 1.0, 1.0),
                   method("gCARPA", MethodKind::Gcarpa, 0.3, 0.5, 0.5)};
      break;
  }
  return c;
}

BenchConfig parse_config(std::string_view json_text, Experiment fallback) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  check_keys(j, {"experiment", "tolerance", "kmax", "seeds", "starts", "tolerances", "angles_deg", "n", "p",
                 "cs_settings", "methods", "schedule", "theta_grid", "eta_grid", "gamma_grid",
                 "trajectory_angle_deg", "trajectory_steps", "gate_feasibility", "track_support",
                 "write_runs", "output_dir", "workers"},
             "config");
  Experiment e = fallback;
  if (j.contains("experiment")) {
    e = parse_experiment(j.at("experiment").get<std::string>());
    const bool cs_pair = (e == Experiment::CsToy || e == Experiment::CsReal) &&
                         (fallback == Experiment::CsToy || fallback == Experiment::CsReal);
    if (e != fallback && !cs_pair) {
      throw InputError("config: file is for '" + std::string(to_string(e)) + "', command runs '" +
                       std::string(to_string(fallback)) + "'");
    }
  }
  BenchConfig c = default_config(e);
  read(j, "tolerance", c.tolerance);
  read(j, "kmax", c.kmax);
  read(j, "seeds", c.seeds);
  read(j, "starts", c.starts);
  read(j, "tolerances", c.tolerances);
  read(j, "angles_deg", c.angles_deg);
  read(j, "n", c.n);
  read(j, "p", c.p);
  read(j, "cs_settings", c.cs_settings);
  read(j, "theta_grid", c.theta_grid);
  read(j, "eta_grid", c.eta_grid);
  read(j, "gamma_grid", c.gamma_grid);
  read(j, "trajectory_angle_deg", c.trajectory_angle_deg);
  read(j, "trajectory_steps", c.trajectory_steps);
  read(j, "gate_feasibility", c.gate_feasibility);
  read(j, "track_support", c.track_support);
  read(j, "write_runs", c.write_runs);
  read(j, "output_dir", c.output_dir);
  read(j, "workers", c.workers);
  if (j.contains("schedule")) schedule_from_json(j.at("schedule"), c.schedule);
  if (j.contains("methods")) {
    c.methods.clear();
    for (const json& m : j.at("methods")) c.methods.push_back(method_from_json(m));
  }
  c.validate();
  return c;
}

BenchConfig load_config(const std::string& path, Experiment fallback) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), fallback);
}

std::string to_json(const BenchConfig& c, bool runtime_keys) {
  json methods = json::array();
  for (const MethodSpec& m : c.methods) methods.push_back(method_to_json(m));
  json j{{"experiment", std::string(to_string(c.experiment))},
               {"tolerance", c.tolerance},
               {"kmax", c.kmax},
               {"seeds", c.seeds},
               {"starts", c.starts},
               {"tolerances", c.tolerances},
               {"angles_deg", c.angles_deg},
               {"n", c.n},
               {"p", c.p},
               {"cs_settings", c.cs_settings},
               {"methods", methods},
               {"schedule", schedule_to_json(c.schedule)},
               {"theta_grid", c.theta_grid},
               {"eta_grid", c.eta_grid},
               {"gamma_grid", c.gamma_grid},
               {"trajectory_angle_deg", c.trajectory_angle_deg},
               {"trajectory_steps", c.trajectory_steps},
               {"gate_feasibility", c.gate_feasibility},
               {"track_support", c.track_support},
               {"write_runs", c.write_runs},
               {"output_dir", c.output_dir},
               {"workers", c.workers}};
  if (!runtime_keys) {
    j.erase("output_dir");
    j.erase("workers");
  }
  return j.dump(2);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gcarpa::bench
