#pragma once

// Runs one scenario across a range of turbulence seeds. Runs are
// independent and execute concurrently; results come back sorted by seed.

#include <algorithm>
#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "sefit/scenario.hpp"

namespace sefit {

struct SweepRow {
  std::uint64_t seed = 0;
  RunSummary summary;
};

inline std::vector<SweepRow> sweep_seeds(const Scenario& base, std::uint64_t first, std::uint64_t last,
                                         unsigned max_parallel = std::thread::hardware_concurrency()) {
  if (!base.turbulence) throw std::invalid_argument("sweep needs a scenario with turbulence.* keys");
  if (last < first) throw std::invalid_argument("empty seed range");
  max_parallel = std::max(1u, max_parallel);

  std::vector<SweepRow> out;
  std::vector<std::future<SweepRow>> pending;
  auto drain = [&] {
    for (auto& f : pending) out.push_back(f.get());
    pending.clear();
  };
  for (std::uint64_t seed = first;; ++seed) {
    pending.push_back(std::async(std::launch::async, [&base, seed] {
      Scenario s = base;
      s.turbulence->seed = seed;
      return SweepRow{seed, run_scenario(s).summary};
    }));
    if (pending.size() >= max_parallel) drain();
    if (seed == last) break;
  }
  drain();
  std::sort(out.begin(), out.end(), [](const SweepRow& a, const SweepRow& b) { return a.seed < b.seed; });
  return out;
}

inline constexpr std::string_view kSweepHeader = "seed,mean_finite_fit,neg_inf_ticks,total_cost";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << r.seed << ','
       << (r.summary.mean_finite_fit ? format_real(*r.summary.mean_finite_fit) : "nan") << ','
       << r.summary.neg_inf_ticks << ',' << format_real(r.summary.total_cost) << '\n';
  }
}

}  // namespace sefit
