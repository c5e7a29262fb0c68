#pragma once

// Scenario files, validation, and the simulation loop.
//
// Scenario file: one `key = value` per line, `#` starts a comment.
//
//   name                  = fig2-static
//   universe              = {1,2,3,4,5}
//   trace                 = builtin:fig2        # or a trace file path
//   turbulence.seed       = 42                  # any turbulence.* key selects
//   turbulence.class_walk = 0.2                 # a generated trace instead
//   turbulence.figure_flip, turbulence.mean_segment_len, turbulence.horizon,
//   turbulence.initial
//   system.behavior       = pur{1,2,3,4}
//   system.class          = (pur, pro^1, pur, pur, none)
//   controller.predictor  = persistence | majority:<w> | oracle | none
//   controller.weight     = 0
//   fit_variant           = linear | quadratic
//   costs.figure, costs.borrow, costs.class, costs.switch
//   capability.universe   = {1,2,3,4}
//   capability.max_class  = soc
//   peers.<id>.figures    = {5}
//   peers.<id>.cost       = 0.5
//   sensors.<id>          = {1,2} 1.5           # coverage, energy per tick
//   critical              = {1,2}

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sefit/behavior.hpp"
#include "sefit/controller.hpp"
#include "sefit/cybernetic_class.hpp"
#include "sefit/environment.hpp"
#include "sefit/fit.hpp"
#include "sefit/sensors.hpp"

namespace sefit {

struct Scenario {
  std::string name = "scenario";
  FigureSet universe;
  std::optional<EnvironmentTrace> trace;
  std::optional<TurbulenceSpec> turbulence;
  Behavior system_behavior = Behavior::with_figures(BehaviorClass::Purposeful, {});
  std::optional<CyberneticClass> cybernetic_class;
  std::optional<Predictor> predictor;
  double weight = 0.0;
  FitVariant variant = FitVariant::Linear;
  CostModel costs;
  Capability capability;
  std::vector<SensorNode> sensors;
  FigureSet critical;

  bool sensor_mode() const noexcept { return !sensors.empty(); }
};

namespace detail {

inline double parse_real(std::string_view key, std::string_view v) {
  std::string s(trim(v));
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ParseError(std::string(key) + ": expected a number, got '" + s + "'");
  return d;
}

inline std::int64_t parse_int(std::string_view key, std::string_view v) {
  std::string s(trim(v));
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ParseError(std::string(key) + ": expected an integer, got '" + s + "'");
  return n;
}

inline BehaviorClass parse_class_token(std::string_view key, std::string_view v) {
  auto c = class_from_token(trim(v));
  if (!c) throw ParseError(std::string(key) + ": unknown behavior class '" + std::string(v) + "'");
  return *c;
}

}  // namespace detail

// Syntax errors throw ParseError; semantic problems are left for
// validate_scenario. Relative trace paths resolve against base_dir.
inline Scenario parse_scenario(std::istream& is, const std::filesystem::path& base_dir = {}) {
  Scenario s;
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto body = detail::trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key(detail::trim(body.substr(0, eq)));
    std::string value(detail::trim(body.substr(eq + 1)));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  std::optional<FigureSet> cap_universe;
  std::optional<BehaviorClass> cap_max;
  std::optional<Behavior> turb_initial;
  std::map<std::string, std::optional<double>> peer_costs;

  auto with_key = [](const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).rfind(key, 0) == 0) throw;
      throw ParseError(key + ": " + e.what());
    }
  };

  for (const auto& [key, value] : kv) {
    auto turb = [&]() -> TurbulenceSpec& {
      if (!s.turbulence) s.turbulence.emplace();
      return *s.turbulence;
    };
    with_key(key, [&] {
      if (key == "name") {
        s.name = value;
      } else if (key == "universe") {
        s.universe = parse_figure_set(value);
      } else if (key == "trace") {
        if (value == "builtin:fig2") {
          s.trace = fig2_trace();
        } else {
          auto path = std::filesystem::path(value);
          if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
          std::ifstream in(path);
          if (!in) throw ParseError("cannot open trace file '" + path.string() + "'");
          s.trace = read_trace(in);
        }
      } else if (key == "turbulence.seed") {
        turb().seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
      } else if (key == "turbulence.class_walk") {
        turb().class_walk = detail::parse_real(key, value);
      } else if (key == "turbulence.figure_flip") {
        turb().figure_flip = detail::parse_real(key, value);
      } else if (key == "turbulence.mean_segment_len") {
        turb().mean_segment_len = detail::parse_int(key, value);
      } else if (key == "turbulence.horizon") {
        turb().horizon = detail::parse_int(key, value);
      } else if (key == "turbulence.initial") {
        turb();
        turb_initial = parse_behavior(value);
      } else if (key == "system.behavior") {
        s.system_behavior = parse_behavior(value);
      } else if (key == "system.class") {
        s.cybernetic_class = parse_class(value);
      } else if (key == "controller.predictor") {
        if (value == "none") {
          s.predictor.reset();
        } else {
          s.predictor = parse_predictor(value);
        }
      } else if (key == "controller.weight") {
        s.weight = detail::parse_real(key, value);
      } else if (key == "fit_variant") {
        s.variant = parse_fit_variant(value);
      } else if (key == "costs.figure") {
        s.costs.figure_cost = detail::parse_real(key, value);
      } else if (key == "costs.borrow") {
        s.costs.borrow_cost = detail::parse_real(key, value);
      } else if (key == "costs.class") {
        s.costs.class_cost = detail::parse_real(key, value);
      } else if (key == "costs.switch") {
        s.costs.switch_cost = detail::parse_real(key, value);
      } else if (key == "capability.universe") {
        cap_universe = parse_figure_set(value);
      } else if (key == "capability.max_class") {
        cap_max = detail::parse_class_token(key, value);
      } else if (key.rfind("peers.", 0) == 0) {
        auto rest = std::string_view(key).substr(6);
        auto dot = rest.rfind('.');
        if (dot == std::string_view::npos || dot == 0) throw ParseError("unknown key");
        std::string id(rest.substr(0, dot));
        auto field = rest.substr(dot + 1);
        if (field == "figures") {
          s.capability.peers[id].figures = parse_figure_set(value);
        } else if (field == "cost") {
          peer_costs[id] = detail::parse_real(key, value);
        } else {
          throw ParseError("unknown key");
        }
      } else if (key.rfind("sensors.", 0) == 0) {
        SensorNode node;
        node.id = key.substr(8);
        if (node.id.empty()) throw ParseError("missing sensor id");
        auto close = value.rfind('}');
        if (close == std::string::npos) throw ParseError("expected '{figures} energy'");
        node.coverage = parse_figure_set(std::string_view(value).substr(0, close + 1));
        node.energy_cost = detail::parse_real(key, std::string_view(value).substr(close + 1));
        s.sensors.push_back(std::move(node));
      } else if (key == "critical") {
        s.critical = parse_figure_set(value);
      } else {
        throw ParseError("unknown key");
      }
    });
  }

  for (const auto& [id, cost] : peer_costs) s.capability.peers[id].borrow_cost = cost;

  const auto* sys_figs = s.system_behavior.figures();
  s.capability.universe = cap_universe ? *cap_universe : (sys_figs ? *sys_figs : FigureSet{});
  s.capability.max_class = cap_max ? *cap_max : s.system_behavior.cls;
  if (s.turbulence) {
    s.turbulence->universe = s.universe;
    s.turbulence->initial =
        turb_initial ? *turb_initial : Behavior::with_figures(BehaviorClass::Purposeful, s.universe);
  }
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  return parse_scenario(in, path.parent_path());
}

// Each violation reads "<field>: <rule>".
inline std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  auto subset = [&](const FigureSet& figs, const std::string& field) {
    for (const auto& f : figs)
      if (!s.universe.contains(f)) v.push_back(field + ": figure '" + f + "' not in universe");
  };

  if (s.universe.empty()) v.push_back("universe: must be non-empty");
  if (s.trace && s.turbulence) v.push_back("trace: exactly one of trace and turbulence.* may be given");
  if (!s.trace && !s.turbulence) v.push_back("trace: one of trace or turbulence.* is required");
  if (s.trace) {
    subset(s.trace->universe(), "trace.universe");
    if (s.trace->horizon() < 1) v.push_back("trace: must contain at least one segment");
  }
  if (s.turbulence)
    for (auto& msg : s.turbulence->violations()) v.push_back(std::move(msg));

  if (const auto* f = s.system_behavior.figures()) {
    subset(*f, "system.behavior");
    if (!s.sensor_mode())
      for (const auto& fig : *f)
        if (!s.capability.universe.contains(fig))
          v.push_back("system.behavior: figure '" + fig + "' not in capability.universe");
  } else {
    v.push_back("system.behavior: must name its figures");
  }
  subset(s.capability.universe, "capability.universe");
  for (const auto& [id, peer] : s.capability.peers) {
    subset(peer.figures, "peers." + id + ".figures");
    if (peer.borrow_cost && !(*peer.borrow_cost >= 0.0))
      v.push_back("peers." + id + ".cost: must be non-negative");
  }

  const std::pair<const char*, double> nonneg[] = {
      {"costs.figure", s.costs.figure_cost}, {"costs.borrow", s.costs.borrow_cost},
      {"costs.class", s.costs.class_cost},   {"costs.switch", s.costs.switch_cost},
      {"controller.weight", s.weight}};
  for (const auto& [field, value] : nonneg)
    if (!(value >= 0.0) || std::isinf(value)) v.push_back(std::string(field) + ": must be a non-negative number");

  std::set<std::string> seen;
  for (const auto& node : s.sensors) {
    const auto field = "sensors." + node.id;
    if (!seen.insert(node.id).second) v.push_back(field + ": duplicate sensor id");
    if (node.coverage.empty()) v.push_back(field + ": coverage must be non-empty");
    subset(node.coverage, field);
    if (!(node.energy_cost > 0.0) || std::isinf(node.energy_cost))
      v.push_back(field + ": energy cost must be positive");
  }
  subset(s.critical, "critical");
  return v;
}

// Warnings do not block a run.
inline std::vector<std::string> scenario_warnings(const Scenario& s) {
  std::vector<std::string> w;
  if (s.cybernetic_class)
    for (auto& msg : class_warnings(*s.cybernetic_class)) w.push_back("system.class: " + msg);
  return w;
}

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "scenario is invalid:";
    for (const auto& m : v) s += "\n  " + m;
    return s;
  }
  std::vector<std::string> violations_;
};

// ---------------------------------------------------------------------------
// Simulation

struct TickRow {
  Tick t = 0;
  Behavior env;
  Behavior sys;
  SupplyReport supply;
  FitValue fit = FitValue::neg_infinity();
  std::string actions;
  double cost = 0.0;
  double cum_cost = 0.0;
  std::optional<double> mode;
};

struct RunSummary {
  std::optional<double> mean_finite_fit;  // unset if every tick is -inf
  std::size_t neg_inf_ticks = 0;
  double total_cost = 0.0;
  std::size_t ticks = 0;
  int controller_order = 0;
};

struct RunReport {
  std::string scenario;
  std::vector<TickRow> rows;
  RunSummary summary;
};

inline EnvironmentTrace scenario_trace(const Scenario& s) {
  if (s.trace) return *s.trace;
  if (s.turbulence) return generate_trace(*s.turbulence);
  throw std::invalid_argument("scenario has no trace");
}

namespace detail {

inline void summarize(RunReport& r, int order) {
  double sum = 0.0;
  std::size_t finite = 0;
  for (const auto& row : r.rows) {
    if (row.fit.is_finite()) {
      sum += row.fit.value();
      ++finite;
    } else {
      ++r.summary.neg_inf_ticks;
    }
  }
  if (finite) r.summary.mean_finite_fit = sum / static_cast<double>(finite);
  r.summary.ticks = r.rows.size();
  r.summary.total_cost = r.rows.empty() ? 0.0 : r.rows.back().cum_cost;
  r.summary.controller_order = order;
}

inline RunReport run_controller(const Scenario& s, const EnvironmentTrace& trace) {
  RunReport r{s.name, {}, {}};
  Controller ctl(s.predictor, PlanningContext{s.capability, s.costs, s.weight, s.variant});
  SystemState state;
  state.cls = s.system_behavior.cls;
  state.local = *s.system_behavior.figures();

  for (Tick t = 0; t < trace.horizon(); ++t) {
    const auto& env = behavior_at(trace, t);
    auto step = ctl.step(state, env);
    state = step.state;
    r.rows.push_back(TickRow{t, env, state.behavior(), step.supply, step.fit,
                             format_actions(step.actions), step.cost, state.cum_cost, std::nullopt});
  }
  summarize(r, ctl.order(trace.universe().size()));
  return r;
}

// Sensor selection per tick. The active figures come from the predictor's
// forecast, or from the current observation when no predictor is set.
inline RunReport run_sensors(const Scenario& s, const EnvironmentTrace& trace) {
  RunReport r{s.name, {}, {}};
  std::vector<Behavior> history;
  double cum = 0.0;
  for (Tick t = 0; t < trace.horizon(); ++t) {
    const auto& env = behavior_at(trace, t);
    FigureSet active;
    if (!s.predictor) {
      active = *env.figures();
    } else if (!history.empty() || std::holds_alternative<Oracle>(*s.predictor)) {
      active = *predict(*s.predictor, history, env).figures();
    }
    const auto mode = awareness_mode(active, s.critical);
    const auto sel = select_sensors(active, s.sensors, mode, s.critical);

    const auto sys = Behavior::with_figures(s.system_behavior.cls, sel.covered);
    const auto sup = supply(sys, env);
    std::string acts;
    if (!sel.ids.empty()) {
      acts = "wake(";
      bool first = true;
      for (const auto& id : sel.ids) {
        if (!first) acts += ',';
        acts += id;
        first = false;
      }
      acts += ')';
    }
    if (!sel.uncovered.empty()) {
      if (!acts.empty()) acts += ';';
      acts += "uncovered" + format_figure_set(sel.uncovered);
    }
    cum += sel.energy;
    r.rows.push_back(TickRow{t, env, sys, sup, fit(sup, s.variant), std::move(acts), sel.energy, cum,
                             mode.lambda});

    history.push_back(env);
    const auto depth = s.predictor ? history_depth(*s.predictor) : 1;
    if (history.size() > depth)
      history.erase(history.begin(), history.end() - static_cast<std::ptrdiff_t>(depth));
  }
  summarize(r, 0);
  return r;
}

}  // namespace detail

// Throws ValidationError if the scenario does not validate.
inline RunReport run_scenario(const Scenario& s) {
  if (auto v = validate_scenario(s); !v.empty()) throw ValidationError(std::move(v));
  const auto trace = scenario_trace(s);
  return s.sensor_mode() ? detail::run_sensors(s, trace) : detail::run_controller(s, trace);
}

// The five-segment worked example. Without a predictor the system stays at
// pur{1,2,3,4}; with one it may adapt over figures 1..5.
inline Scenario fig2_scenario(std::optional<Predictor> predictor = std::nullopt) {
  Scenario s;
  s.name = predictor ? "fig2-" + format_predictor(*predictor) : "fig2-static";
  s.universe = {"1", "2", "3", "4", "5"};
  s.trace = fig2_trace();
  s.system_behavior = Behavior::with_figures(BehaviorClass::Purposeful, {"1", "2", "3", "4"});
  s.predictor = std::move(predictor);
  s.capability.universe = s.predictor ? s.universe : *s.system_behavior.figures();
  s.capability.max_class = BehaviorClass::Purposeful;
  return s;
}

// ---------------------------------------------------------------------------
// CSV report

inline constexpr std::string_view kCsvHeader =
    "t,env_behavior,sys_behavior,supply_kind,supply,fit,actions,cost,cum_cost,mode";

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_csv(std::ostream& os, const RunReport& r) {
  os << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    os << row.t << ',' << csv_field(format_behavior(row.env)) << ','
       << csv_field(format_behavior(row.sys)) << ',' << to_string(row.supply.kind) << ','
       << format_real(row.supply.value) << ',' << format_fit(row.fit) << ','
       << csv_field(row.actions) << ',' << format_real(row.cost) << ','
       << format_real(row.cum_cost) << ',' << (row.mode ? format_real(*row.mode) : "") << '\n';
  }
}

inline std::string csv_to_string(const RunReport& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

inline std::string format_summary(const RunSummary& s) {
  return "ticks=" + std::to_string(s.ticks) + " mean_finite_fit=" +
         (s.mean_finite_fit ? format_real(*s.mean_finite_fit) : "nan") +
         " neg_inf_ticks=" + std::to_string(s.neg_inf_ticks) +
         " total_cost=" + format_real(s.total_cost);
}

}  // namespace sefit
