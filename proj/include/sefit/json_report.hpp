#pragma once

// JSON rendering of a run report. The undersupply fit is written as the
// string "-inf".

#include <nlohmann/json.hpp>

#include "sefit/scenario.hpp"

namespace sefit {

inline nlohmann::json real_json(double v) {
  if (std::isinf(v)) return format_real(v);
  return v;
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({
        {"t", row.t},
        {"env_behavior", format_behavior(row.env)},
        {"sys_behavior", format_behavior(row.sys)},
        {"supply_kind", std::string(to_string(row.supply.kind))},
        {"supply", real_json(row.supply.value)},
        {"fit", real_json(row.fit.value())},
        {"actions", row.actions},
        {"cost", row.cost},
        {"cum_cost", row.cum_cost},
        {"mode", row.mode ? nlohmann::json(*row.mode) : nlohmann::json(nullptr)},
    });
  }
  const auto& s = r.summary;
  return {
      {"scenario", r.scenario},
      {"rows", std::move(rows)},
      {"summary",
       {{"ticks", s.ticks},
        {"mean_finite_fit", s.mean_finite_fit ? nlohmann::json(*s.mean_finite_fit) : nlohmann::json(nullptr)},
        {"neg_inf_ticks", s.neg_inf_ticks},
        {"total_cost", s.total_cost},
        {"controller_order", s.controller_order}}},
  };
}

}  // namespace sefit
