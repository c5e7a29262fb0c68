#pragma once

// Energy-aware sensor selection: an awareness organ maps the share of
// active critical figures to an operative mode between energy-saving-first
// (0) and safety-first (1); a greedy weighted set cover then picks the
// sensors to keep awake.

#include <algorithm>
#include <iterator>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sefit/behavior.hpp"

namespace sefit {

struct SensorNode {
  std::string id;
  FigureSet coverage;
  double energy_cost = 1.0;  // per tick active
};

struct OperativeMode {
  double lambda = 0.0;

  // At or above this level every active figure must be covered; below it
  // only the critical ones.
  static constexpr double kSafetyThreshold = 0.5;
  bool safety_first() const noexcept { return lambda >= kSafetyThreshold; }
};

inline OperativeMode awareness_mode(const FigureSet& active, const FigureSet& critical) {
  std::size_t hits = 0;
  for (const auto& f : critical) hits += active.contains(f);
  return {static_cast<double>(hits) / static_cast<double>(std::max<std::size_t>(1, critical.size()))};
}

struct SensorSelection {
  std::set<std::string> ids;
  FigureSet required;
  FigureSet covered;    // union of coverage of the selected sensors
  FigureSet uncovered;  // required figures no sensor can reach
  double energy = 0.0;

  bool feasible() const noexcept { return uncovered.empty(); }
};

// Greedy weighted set cover: repeatedly wake the sensor with the best
// newly-covered-figures / energy ratio (ties: lower id) until the required
// figures are covered or nothing left helps.
inline SensorSelection select_sensors(const FigureSet& active, std::span<const SensorNode> sensors,
                                      OperativeMode mode, const FigureSet& critical) {
  SensorSelection sel;
  if (mode.safety_first()) {
    sel.required = active;
  } else {
    std::set_intersection(active.begin(), active.end(), critical.begin(), critical.end(),
                          std::inserter(sel.required, sel.required.end()));
  }

  FigureSet missing = sel.required;
  std::vector<bool> used(sensors.size(), false);
  while (!missing.empty()) {
    std::ptrdiff_t best = -1;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < sensors.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (const auto& f : sensors[i].coverage) gain += missing.contains(f);
      if (gain == 0) continue;
      if (best < 0) {
        best = static_cast<std::ptrdiff_t>(i);
        best_gain = gain;
        continue;
      }
      const auto& b = sensors[static_cast<std::size_t>(best)];
      // gain/cost > best_gain/best_cost, cross-multiplied.
      const double lhs = static_cast<double>(gain) * b.energy_cost;
      const double rhs = static_cast<double>(best_gain) * sensors[i].energy_cost;
      if (lhs > rhs || (lhs == rhs && sensors[i].id < b.id)) {
        best = static_cast<std::ptrdiff_t>(i);
        best_gain = gain;
      }
    }
    if (best < 0) break;
    const auto& s = sensors[static_cast<std::size_t>(best)];
    used[static_cast<std::size_t>(best)] = true;
    sel.ids.insert(s.id);
    sel.energy += s.energy_cost;
    sel.covered.insert(s.coverage.begin(), s.coverage.end());
    for (const auto& f : s.coverage) missing.erase(f);
  }
  sel.uncovered = std::move(missing);
  return sel;
}

}  // namespace sefit
