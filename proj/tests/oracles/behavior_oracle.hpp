#pragma once

// Test-only oracles for the behavior order and metric. These deliberately
// avoid the library's helpers: the order is a word-for-word reading of the
// three-condition definition with its existential quantifiers enumerated,
// and the metric is an all-pairs shortest path over an explicitly built
// scope graph.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sefit/behavior.hpp"

namespace sefit::oracle {

// "b = beta^F": the behavior is written with figure set F.
inline bool written_with_figures(const Behavior& b, FigureSet& out) {
  if (b.scope.index() != 2) return false;
  out = std::get<2>(b.scope).set;
  return true;
}

// "b = beta^n": the behavior considers n context figures. A figure set F
// makes b = beta^|F|.
inline bool written_with_count(const Behavior& b, int n) {
  if (b.scope.index() == 1) return std::get<1>(b.scope).n == n;
  if (b.scope.index() == 2) return static_cast<int>(std::get<2>(b.scope).set.size()) == n;
  return false;
}

inline bool strictly_contained(const FigureSet& f, const FigureSet& g) {
  for (const auto& x : f) {
    bool found = false;
    for (const auto& y : g) found = found || x == y;
    if (!found) return false;
  }
  for (const auto& y : g) {
    bool found = false;
    for (const auto& x : f) found = found || x == y;
    if (!found) return true;
  }
  return false;
}

inline int pi(const Behavior& b) {
  switch (b.cls) {
    case BehaviorClass::Random: return 1;
    case BehaviorClass::Purposeful: return 2;
    case BehaviorClass::Reactive: return 3;
    case BehaviorClass::Proactive: return 4;
    case BehaviorClass::Social: return 5;
  }
  return 0;
}

inline bool literal_precedes(const Behavior& b1, const Behavior& b2, int max_count) {
  // 1.
  if (pi(b1) < pi(b2)) return true;
  // 2.
  if (pi(b1) == pi(b2)) {
    FigureSet f, g;
    if (written_with_figures(b1, f) && written_with_figures(b2, g) && strictly_contained(f, g))
      return true;
  }
  // 3.
  if (pi(b1) == 4 && pi(b2) == 4) {
    for (int n = 0; n <= max_count; ++n)
      for (int m = 0; m <= max_count; ++m)
        if (written_with_count(b1, n) && written_with_count(b2, m) && n < m) return true;
  }
  return false;
}

// All behaviors over `figures` (every subset), arities 1..max_arity, and
// the unspecified scope, for each of the five classes.
inline std::vector<Behavior> enumerate_universe(const std::vector<std::string>& figures, int max_arity) {
  std::vector<BehaviorScope> scopes;
  scopes.emplace_back(Unspecified{});
  for (int n = 1; n <= max_arity; ++n) scopes.emplace_back(Arity{n});
  const auto count = std::uint32_t{1} << figures.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    FigureSet s;
    for (std::size_t i = 0; i < figures.size(); ++i)
      if (mask & (1u << i)) s.insert(figures[i]);
    scopes.emplace_back(Figures{s});
  }
  std::vector<Behavior> out;
  for (auto c : kAllClasses)
    for (const auto& sc : scopes) out.emplace_back(c, sc);
  return out;
}

// Floyd-Warshall over the scope graph: hub <-> Arity(1) <-> Arity(2) ...
// with ln5 edges; hub <-> Figures({}) and single-element flips inside the
// hypercube with ln3 edges. Class ranks add ln2 per step on top.
class ScopeGraphMetric {
 public:
  ScopeGraphMetric(const std::vector<std::string>& figures, int max_arity) {
    std::vector<BehaviorScope> nodes;
    nodes.emplace_back(Unspecified{});
    for (int n = 1; n <= max_arity; ++n) nodes.emplace_back(Arity{n});
    const auto count = std::uint32_t{1} << figures.size();
    std::vector<FigureSet> sets;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      FigureSet s;
      for (std::size_t i = 0; i < figures.size(); ++i)
        if (mask & (1u << i)) s.insert(figures[i]);
      nodes.emplace_back(Figures{s});
      sets.push_back(s);
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) index_[nodes[i]] = i;

    const auto n = nodes.size();
    const double inf = std::numeric_limits<double>::infinity();
    d_.assign(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d_[i][i] = 0.0;
    auto edge = [&](std::size_t a, std::size_t b, double w) {
      d_[a][b] = std::min(d_[a][b], w);
      d_[b][a] = std::min(d_[b][a], w);
    };
    const double l3 = std::log(3.0), l5 = std::log(5.0);
    edge(0, 1, l5);
    for (int k = 1; k < max_arity; ++k) edge(static_cast<std::size_t>(k), static_cast<std::size_t>(k + 1), l5);
    const std::size_t base = 1 + static_cast<std::size_t>(max_arity);
    edge(0, base, l3);
    for (std::uint32_t a = 0; a < count; ++a)
      for (std::size_t i = 0; i < figures.size(); ++i) edge(base + a, base + (a ^ (1u << i)), l3);

    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (d_[i][k] + d_[k][j] < d_[i][j]) d_[i][j] = d_[i][k] + d_[k][j];
  }

  double operator()(const Behavior& x, const Behavior& y) const {
    return std::abs(pi(x) - pi(y)) * std::log(2.0) + d_[index_.at(x.scope)][index_.at(y.scope)];
  }

 private:
  std::map<BehaviorScope, std::size_t> index_;
  std::vector<std::vector<double>> d_;
};

}  // namespace sefit::oracle
