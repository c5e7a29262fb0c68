// sefit: scenario runner for system-environment fit simulations.
//
//   sefit run --scenario FILE [--seed N] [--fit-variant linear|quadratic]
//             [--cost-weight W] [--out FILE] [--format csv|json]
//   sefit validate --scenario FILE
//   sefit demo fig2 [--ticks] [--predictor P]
//   sefit sweep --scenario FILE --seeds A..B [--out FILE]
//   sefit trace (--scenario FILE [--seed N] | --builtin fig2) [--out FILE]
//
// Exit codes: 0 ok, 1 validation error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sefit/json_report.hpp"
#include "sefit/sefit.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

struct Output {
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_warnings(const sefit::Scenario& s) {
  for (const auto& w : sefit::scenario_warnings(s)) std::cerr << "warning: " << w << '\n';
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw sefit::ParseError("--seeds expects A..B, got '" + text + "'");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const auto a_text = text.substr(0, dots);
    const auto b_text = text.substr(dots + 2);
    const auto a = std::stoull(a_text, &used_a);
    const auto b = std::stoull(b_text, &used_b);
    if (used_a != a_text.size() || used_b != b_text.size() || b < a) throw std::invalid_argument("");
    return {a, b};
  } catch (const std::exception&) {
    throw sefit::ParseError("--seeds expects A..B with A <= B, got '" + text + "'");
  }
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed,
            std::optional<std::string> variant, std::optional<double> weight,
            const std::string& out_path, const std::string& format) {
  auto s = sefit::load_scenario(path);
  if (variant) s.variant = sefit::parse_fit_variant(*variant);
  if (weight) s.weight = *weight;
  if (seed) {
    if (s.turbulence) {
      s.turbulence->seed = *seed;
    } else {
      std::cerr << "warning: --seed ignored, scenario has a fixed trace\n";
    }
  }
  print_warnings(s);
  const auto report = sefit::run_scenario(s);
  if (s.predictor && !s.sensor_mode())
    std::cerr << "controller: " << sefit::format_predictor(*s.predictor) << ", proactive order "
              << report.summary.controller_order << " (supply, fit + env figures)\n";

  Output out(out_path);
  if (format == "json") {
    out.stream() << sefit::to_json(report).dump(2) << '\n';
  } else {
    sefit::write_csv(out.stream(), report);
  }
  std::cerr << sefit::format_summary(report.summary) << '\n';
  return kOk;
}

int cmd_validate(const std::string& path) {
  const auto s = sefit::load_scenario(path);
  print_warnings(s);
  const auto v = sefit::validate_scenario(s);
  for (const auto& m : v) std::cout << m << '\n';
  if (!v.empty()) return kInvalid;
  std::cout << "ok\n";
  return kOk;
}

int cmd_demo(const std::string& which, bool ticks, const std::string& predictor) {
  if (which != "fig2") throw sefit::ParseError("unknown demo '" + which + "' (available: fig2)");
  std::optional<sefit::Predictor> p;
  if (predictor != "none") p = sefit::parse_predictor(predictor);
  const auto report = sefit::run_scenario(sefit::fig2_scenario(p));
  if (ticks) {
    sefit::write_csv(std::cout, report);
  } else {
    const auto trace = sefit::fig2_trace();
    std::cout << "segment,ticks,env_behavior,sys_behavior,supply_kind,supply,fit\n";
    for (std::size_t i = 0; i < trace.segments().size(); ++i) {
      const auto& seg = trace.segments()[i];
      // Last tick of the segment: any adaptation lag has settled.
      const auto& row = report.rows[static_cast<std::size_t>(seg.end() - 1)];
      std::cout << 's' << i + 1 << ',' << seg.start << '-' << seg.end() - 1 << ','
                << sefit::csv_field(sefit::format_behavior(row.env)) << ','
                << sefit::csv_field(sefit::format_behavior(row.sys)) << ','
                << sefit::to_string(row.supply.kind) << ',' << sefit::format_real(row.supply.value)
                << ',' << sefit::format_fit(row.fit) << '\n';
    }
  }
  std::cerr << sefit::format_summary(report.summary) << '\n';
  return kOk;
}

int cmd_sweep(const std::string& path, const std::string& seeds, const std::string& out_path) {
  const auto s = sefit::load_scenario(path);
  print_warnings(s);
  if (auto v = sefit::validate_scenario(s); !v.empty()) throw sefit::ValidationError(v);
  if (!s.turbulence) throw sefit::ParseError("sweep needs a scenario with turbulence.* keys");
  const auto [a, b] = parse_seed_range(seeds);
  Output out(out_path);
  sefit::write_sweep_csv(out.stream(), sefit::sweep_seeds(s, a, b));
  return kOk;
}

int cmd_trace(const std::string& path, const std::string& builtin, std::optional<std::uint64_t> seed,
              const std::string& out_path) {
  sefit::EnvironmentTrace trace;
  if (!builtin.empty()) {
    if (builtin != "fig2") throw sefit::ParseError("unknown builtin trace '" + builtin + "'");
    trace = sefit::fig2_trace();
  } else {
    auto s = sefit::load_scenario(path);
    if (seed && s.turbulence) s.turbulence->seed = *seed;
    if (auto v = sefit::validate_scenario(s); !v.empty()) throw sefit::ValidationError(v);
    trace = sefit::scenario_trace(s);
  }
  Output out(out_path);
  sefit::write_trace(out.stream(), trace);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"System-environment fit and auto-resilience simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_path;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run a scenario and emit per-tick rows");
  std::optional<std::string> variant;
  std::optional<double> weight;
  std::string format = "csv";
  run->add_option("--scenario", scenario, "Scenario file")->required();
  run->add_option("--seed", seed, "Override turbulence.seed");
  run->add_option("--fit-variant", variant, "linear|quadratic");
  run->add_option("--cost-weight", weight, "Weight of the cost penalty");
  run->add_option("--out", out_path, "Output file (default stdout)");
  run->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--scenario", scenario, "Scenario file")->required();

  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  std::string demo_name;
  bool ticks = false;
  std::string predictor = "none";
  demo->add_option("name", demo_name, "Demo name (fig2)")->required();
  demo->add_flag("--ticks", ticks, "Emit every tick instead of one row per segment");
  demo->add_option("--predictor", predictor, "none|persistence|majority:<w>|oracle");

  auto* sweep = app.add_subcommand("sweep", "Run a generated-trace scenario over a seed range");
  std::string seeds;
  sweep->add_option("--scenario", scenario, "Scenario file")->required();
  sweep->add_option("--seeds", seeds, "Seed range A..B")->required();
  sweep->add_option("--out", out_path, "Output file (default stdout)");

  auto* trace = app.add_subcommand("trace", "Emit an environment trace in trace-file format");
  std::string builtin;
  trace->add_option("--scenario", scenario, "Scenario file");
  trace->add_option("--builtin", builtin, "Built-in trace (fig2)");
  trace->add_option("--seed", seed, "Override turbulence.seed");
  trace->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(scenario, seed, variant, weight, out_path, format);
    if (*validate) return cmd_validate(scenario);
    if (*demo) return cmd_demo(demo_name, ticks, predictor);
    if (*sweep) return cmd_sweep(scenario, seeds, out_path);
    if (*trace) {
      if (scenario.empty() == builtin.empty()) throw sefit::ParseError("trace needs exactly one of --scenario or --builtin");
      return cmd_trace(scenario, builtin, seed, out_path);
    }
  } catch (const sefit::ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << "invalid: " << v << '\n';
    return kInvalid;
  } catch (const sefit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
  return kRuntime;
}
