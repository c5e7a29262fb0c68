#pragma once

// Environment turbulence: piecewise-constant behavior traces, the five
// segment worked example, a seeded generator, and the text trace format.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sefit/behavior.hpp"
#include "sefit/rng.hpp"

namespace sefit {

using Tick = std::int64_t;

struct Segment {
  Tick start = 0;
  Tick duration = 1;
  Behavior behavior;

  Tick end() const noexcept { return start + duration; }
  bool operator==(const Segment&) const = default;
};

class EnvironmentTrace {
 public:
  EnvironmentTrace() = default;

  // Throws std::invalid_argument unless segments are contiguous from tick 0,
  // every duration is >= 1, and every behavior names figures in universe.
  EnvironmentTrace(std::vector<Segment> segments, FigureSet universe)
      : segments_(std::move(segments)), universe_(std::move(universe)) {
    if (auto err = check(); !err.empty()) throw std::invalid_argument(err);
  }

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const FigureSet& universe() const noexcept { return universe_; }
  Tick horizon() const noexcept { return segments_.empty() ? 0 : segments_.back().end(); }

  std::size_t segment_index_at(Tick t) const {
    if (t < 0 || t >= horizon())
      throw std::out_of_range("tick " + std::to_string(t) + " outside trace [0, " +
                              std::to_string(horizon()) + ")");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](Tick v, const Segment& s) { return v < s.start; });
    return static_cast<std::size_t>(std::distance(segments_.begin(), it) - 1);
  }

  bool operator==(const EnvironmentTrace&) const = default;

 private:
  std::string check() const {
    Tick expected = 0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& s = segments_[i];
      const auto where = "segment " + std::to_string(i) + ": ";
      if (s.start != expected)
        return where + "starts at " + std::to_string(s.start) + ", expected " +
               std::to_string(expected);
      if (s.duration < 1) return where + "duration must be >= 1";
      const auto* f = s.behavior.figures();
      if (!f) return where + "environment behavior must name its figures";
      for (const auto& fig : *f)
        if (!universe_.contains(fig)) return where + "figure '" + fig + "' not in universe";
      expected = s.end();
    }
    return {};
  }

  std::vector<Segment> segments_;
  FigureSet universe_;
};

inline const Behavior& behavior_at(const EnvironmentTrace& trace, Tick t) {
  return trace.segments()[trace.segment_index_at(t)].behavior;
}

// Five purposeful segments of 10 ticks over figures 1..5.
inline EnvironmentTrace fig2_trace() {
  const std::vector<FigureSet> sets = {
      {"1", "2", "3", "4"}, {"1", "4"}, {"4"}, {"1", "2", "3", "4"}, {"1", "2", "3", "4", "5"}};
  std::vector<Segment> segs;
  Tick t = 0;
  for (const auto& s : sets) {
    segs.push_back({t, 10, Behavior::with_figures(BehaviorClass::Purposeful, s)});
    t += 10;
  }
  return {std::move(segs), FigureSet{"1", "2", "3", "4", "5"}};
}

struct TurbulenceSpec {
  std::uint64_t seed = 42;
  double class_walk = 0.2;
  double figure_flip = 0.1;
  Tick mean_segment_len = 10;
  Tick horizon = 100;
  FigureSet universe = {"1", "2", "3", "4", "5"};
  Behavior initial = Behavior::with_figures(BehaviorClass::Purposeful, {"1", "2", "3", "4"});

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    if (!(class_walk >= 0.0 && class_walk <= 1.0)) v.push_back("turbulence.class_walk: must be in [0,1]");
    if (!(figure_flip >= 0.0 && figure_flip <= 1.0)) v.push_back("turbulence.figure_flip: must be in [0,1]");
    if (mean_segment_len < 1) v.push_back("turbulence.mean_segment_len: must be >= 1");
    if (horizon < mean_segment_len) v.push_back("turbulence.horizon: must be >= mean_segment_len");
    if (const auto* f = initial.figures()) {
      for (const auto& fig : *f)
        if (!universe.contains(fig))
          v.push_back("turbulence.initial: figure '" + fig + "' not in universe");
    } else {
      v.push_back("turbulence.initial: must name its figures");
    }
    return v;
  }
};

// Per segment, in this draw order:
//   1. length ~ Geometric(1/mean) on {1,2,...} by repeated Bernoulli draws,
//      truncated at the horizon;
//   2. (all but the first segment) with probability class_walk the class
//      steps to a rank-adjacent class, picked by one more draw when both
//      neighbours exist;
//   3. (all but the first segment) each universe figure, in sorted order,
//      toggles membership with probability figure_flip.
inline EnvironmentTrace generate_trace(const TurbulenceSpec& spec) {
  if (auto v = spec.violations(); !v.empty()) throw std::invalid_argument(v.front());
  Xorshift64Star rng(spec.seed);
  const double p_end = 1.0 / static_cast<double>(spec.mean_segment_len);

  std::vector<Segment> segs;
  BehaviorClass cls = spec.initial.cls;
  FigureSet figs = *spec.initial.figures();
  Tick t = 0;
  while (t < spec.horizon) {
    Tick len = 1;
    while (!rng.bernoulli(p_end)) ++len;
    len = std::min(len, spec.horizon - t);

    if (!segs.empty()) {
      if (rng.bernoulli(spec.class_walk)) {
        int r = rank(cls);
        if (r == 1) {
          r = 2;
        } else if (r == 5) {
          r = 4;
        } else {
          r += rng.bernoulli(0.5) ? 1 : -1;
        }
        cls = static_cast<BehaviorClass>(r);
      }
      for (const auto& fig : spec.universe) {
        if (rng.bernoulli(spec.figure_flip)) {
          if (!figs.erase(fig)) figs.insert(fig);
        }
      }
    }
    segs.push_back({t, len, Behavior::with_figures(cls, figs)});
    t += len;
  }
  return {std::move(segs), spec.universe};
}

// Trace file format:
//   # comment
//   universe: f1,f2,...
//   <start> <duration> <behavior-term>
inline void write_trace(std::ostream& os, const EnvironmentTrace& trace) {
  os << "universe: ";
  bool first = true;
  for (const auto& f : trace.universe()) {
    if (!first) os << ',';
    os << f;
    first = false;
  }
  os << '\n';
  for (const auto& s : trace.segments())
    os << s.start << ' ' << s.duration << ' ' << format_behavior(s.behavior) << '\n';
}

inline std::string trace_to_string(const EnvironmentTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

inline EnvironmentTrace read_trace(std::istream& is) {
  std::optional<FigureSet> universe;
  std::vector<Segment> segs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto where = "line " + std::to_string(lineno) + ": ";
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto body = detail::trim(line);
    if (body.empty()) continue;
    if (body.rfind("universe:", 0) == 0) {
      if (universe) throw ParseError(where + "duplicate universe header");
      auto list = detail::trim(body.substr(9));
      try {
        universe = parse_figure_set("{" + std::string(list) + "}");
      } catch (const ParseError& e) {
        throw ParseError(where + e.what());
      }
      continue;
    }
    std::istringstream ls{std::string(body)};
    Segment s;
    std::string rest;
    if (!(ls >> s.start >> s.duration)) throw ParseError(where + "expected '<start> <duration> <behavior>'");
    std::getline(ls, rest);
    try {
      s.behavior = parse_behavior(rest);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    segs.push_back(std::move(s));
  }
  if (!universe) throw ParseError("trace is missing the 'universe:' header");
  try {
    return {std::move(segs), std::move(*universe)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace sefit
