#pragma once

// Exhaustive minimum-energy set cover over every subset of sensors.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "sefit/sensors.hpp"

namespace sefit::oracle {

// Cheapest energy that covers `required`, or nullopt if no subset does.
inline std::optional<double> brute_force_cover(const FigureSet& required, const std::vector<SensorNode>& sensors) {
  std::optional<double> best;
  const std::uint32_t n = static_cast<std::uint32_t>(sensors.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    FigureSet covered;
    double energy = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      covered.insert(sensors[i].coverage.begin(), sensors[i].coverage.end());
      energy += sensors[i].energy_cost;
    }
    bool ok = true;
    for (const auto& f : required) ok = ok && covered.contains(f);
    if (ok && (!best || energy < *best)) best = energy;
  }
  return best;
}

}  // namespace sefit::oracle
