#pragma once

// Auto-resilient controller: forecasts the environment, plans adaptations
// of the system's figures and class (locally or by borrowing from peers),
// and only acts when the cost-adjusted fit improves.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sefit/behavior.hpp"
#include "sefit/fit.hpp"

namespace sefit {

using PeerId = std::string;

struct Peer {
  FigureSet figures;
  // Falls back to CostModel::borrow_cost when unset.
  std::optional<double> borrow_cost;
};

struct Capability {
  FigureSet universe;
  BehaviorClass max_class = BehaviorClass::Social;
  std::map<PeerId, Peer> peers;
};

struct CostModel {
  double figure_cost = 0.0;  // per locally enabled figure per tick
  double borrow_cost = 0.0;  // per borrowed figure per tick
  double class_cost = 0.0;   // per class rank per tick
  double switch_cost = 0.0;  // per adaptation action

  double peer_cost(const Peer& p) const { return p.borrow_cost.value_or(borrow_cost); }
};

struct SystemState {
  BehaviorClass cls = BehaviorClass::Purposeful;
  FigureSet local;
  std::map<PeerId, FigureSet> borrowed;
  double cum_cost = 0.0;

  FigureSet figures() const {
    FigureSet all = local;
    for (const auto& [peer, figs] : borrowed) all.insert(figs.begin(), figs.end());
    return all;
  }
  Behavior behavior() const { return Behavior::with_figures(cls, figures()); }

  bool has_figure(const FigureId& f) const {
    if (local.contains(f)) return true;
    return std::any_of(borrowed.begin(), borrowed.end(),
                       [&](const auto& kv) { return kv.second.contains(f); });
  }

  bool operator==(const SystemState&) const = default;
};

// Running cost of holding a state for one tick.
inline double tick_cost(const SystemState& s, const Capability& cap, const CostModel& costs) {
  double c = costs.figure_cost * static_cast<double>(s.local.size()) +
             costs.class_cost * rank(s.cls);
  for (const auto& [peer, figs] : s.borrowed) {
    auto it = cap.peers.find(peer);
    const double unit = it == cap.peers.end() ? costs.borrow_cost : costs.peer_cost(it->second);
    c += unit * static_cast<double>(figs.size());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Predictors

struct Persistence {
  bool operator==(const Persistence&) const = default;
};
struct WindowMajority {
  int window = 1;
  bool operator==(const WindowMajority&) const = default;
};
// Reads the true upcoming environment; simulation only.
struct Oracle {
  bool operator==(const Oracle&) const = default;
};

using Predictor = std::variant<Persistence, WindowMajority, Oracle>;

inline Predictor parse_predictor(std::string_view s) {
  if (s == "persistence") return Persistence{};
  if (s == "oracle") return Oracle{};
  if (s.rfind("majority:", 0) == 0) {
    auto digits = s.substr(9);
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("bad majority window in '" + std::string(s) + "'");
    int w = std::stoi(std::string(digits));
    if (w < 1) throw ParseError("majority window must be >= 1");
    return WindowMajority{w};
  }
  throw ParseError("unknown predictor '" + std::string(s) +
                   "' (persistence|majority:<w>|oracle|none)");
}

inline std::string format_predictor(const Predictor& p) {
  if (std::holds_alternative<Persistence>(p)) return "persistence";
  if (std::holds_alternative<Oracle>(p)) return "oracle";
  return "majority:" + std::to_string(std::get<WindowMajority>(p).window);
}

// Observations the predictor needs to keep.
inline std::size_t history_depth(const Predictor& p) {
  if (auto* m = std::get_if<WindowMajority>(&p)) return static_cast<std::size_t>(m->window);
  return 1;
}

namespace detail {

inline Behavior window_majority(std::span<const Behavior> history, int window) {
  const auto n = std::min<std::size_t>(history.size(), static_cast<std::size_t>(window));
  auto recent = history.last(n);

  std::map<FigureId, std::size_t> votes;
  std::map<BehaviorClass, std::size_t> class_votes;
  for (const auto& b : recent) {
    ++class_votes[b.cls];
    if (const auto* f = b.figures())
      for (const auto& fig : *f) ++votes[fig];
  }
  FigureSet figs;
  for (const auto& [fig, count] : votes)
    if (2 * count >= n) figs.insert(fig);  // ties include

  // Modal class; on a tie the most recently observed candidate wins.
  std::size_t best = 0;
  for (const auto& [cls, count] : class_votes) best = std::max(best, count);
  BehaviorClass cls = recent.back().cls;
  for (auto it = recent.rbegin(); it != recent.rend(); ++it) {
    if (class_votes[it->cls] == best) {
      cls = it->cls;
      break;
    }
  }
  return Behavior::with_figures(cls, std::move(figs));
}

}  // namespace detail

// Forecast of the environment behavior. The oracle reads oracle_view (the
// true upcoming behavior); the others need at least one observation.
inline Behavior predict(const Predictor& p, std::span<const Behavior> history,
                        const std::optional<Behavior>& oracle_view = std::nullopt) {
  if (std::holds_alternative<Oracle>(p)) {
    if (oracle_view) return *oracle_view;
    if (!history.empty()) return history.back();
    throw std::invalid_argument("oracle predictor has nothing to read");
  }
  if (history.empty()) throw std::invalid_argument("predictor needs a non-empty history");
  if (auto* m = std::get_if<WindowMajority>(&p)) return detail::window_majority(history, m->window);
  return history.back();
}

// ---------------------------------------------------------------------------
// Adaptation

struct AdaptationAction {
  enum class Kind { Enable, Disable, Borrow, Release, SetClass };

  Kind kind = Kind::Enable;
  FigureId figure;
  PeerId peer;
  BehaviorClass cls = BehaviorClass::Purposeful;

  static AdaptationAction enable(FigureId f) { return {Kind::Enable, std::move(f)}; }
  static AdaptationAction disable(FigureId f) { return {Kind::Disable, std::move(f)}; }
  static AdaptationAction borrow(PeerId p, FigureId f) {
    return {Kind::Borrow, std::move(f), std::move(p)};
  }
  static AdaptationAction release(PeerId p, FigureId f) {
    return {Kind::Release, std::move(f), std::move(p)};
  }
  static AdaptationAction set_class(BehaviorClass c) { return {Kind::SetClass, {}, {}, c}; }

  bool operator==(const AdaptationAction&) const = default;
};

inline std::string format_action(const AdaptationAction& a) {
  using K = AdaptationAction::Kind;
  switch (a.kind) {
    case K::Enable: return "enable(" + a.figure + ")";
    case K::Disable: return "disable(" + a.figure + ")";
    case K::Borrow: return "borrow(" + a.peer + "," + a.figure + ")";
    case K::Release: return "release(" + a.peer + "," + a.figure + ")";
    case K::SetClass: return "class(" + std::string(class_token(a.cls)) + ")";
  }
  return "?";
}

inline std::string format_actions(std::span<const AdaptationAction> actions) {
  std::string s;
  for (const auto& a : actions) {
    if (!s.empty()) s += ';';
    s += format_action(a);
  }
  return s;
}

// Applies actions in order. Does not touch cum_cost.
inline SystemState apply_actions(SystemState s, std::span<const AdaptationAction> actions) {
  using K = AdaptationAction::Kind;
  for (const auto& a : actions) {
    switch (a.kind) {
      case K::Enable: s.local.insert(a.figure); break;
      case K::Disable: s.local.erase(a.figure); break;
      case K::Borrow: s.borrowed[a.peer].insert(a.figure); break;
      case K::Release: {
        auto it = s.borrowed.find(a.peer);
        if (it != s.borrowed.end()) {
          it->second.erase(a.figure);
          if (it->second.empty()) s.borrowed.erase(it);
        }
        break;
      }
      case K::SetClass: s.cls = a.cls; break;
    }
  }
  return s;
}

struct PlanningContext {
  Capability capability;
  CostModel costs;
  double weight = 0.0;
  FitVariant variant = FitVariant::Linear;
};

// Cost-adjusted fit of holding `s` for a tick against `target`, with
// `extra_cost` (switching) on top of the running cost.
inline double score_state(const SystemState& s, const Behavior& target, const PlanningContext& ctx,
                          double extra_cost = 0.0) {
  const auto f = fit(supply(s.behavior(), target), ctx.variant);
  return cost_adjusted_fit(f, tick_cost(s, ctx.capability, ctx.costs) + extra_cost, ctx.weight);
}

// Greedy plan toward the predicted behavior. Coverage actions come first
// (raise class, enable local figures, borrow from the cheapest peer), then
// trimming of surplus class and figures. The full plan and the coverage-only
// plan are both scored; the better one is returned if it strictly beats
// doing nothing.
inline std::vector<AdaptationAction> plan_adaptation(const SystemState& state,
                                                     const Behavior& predicted,
                                                     const PlanningContext& ctx) {
  const auto* target = predicted.figures();
  if (!target) throw std::invalid_argument("predicted behavior must name its figures");
  const auto& cap = ctx.capability;

  const BehaviorClass target_cls =
      rank(predicted.cls) <= rank(cap.max_class) ? predicted.cls : cap.max_class;

  std::vector<AdaptationAction> cover;
  if (rank(target_cls) > rank(state.cls)) cover.push_back(AdaptationAction::set_class(target_cls));
  for (const auto& f : *target) {
    if (state.has_figure(f)) continue;
    if (cap.universe.contains(f)) {
      cover.push_back(AdaptationAction::enable(f));
      continue;
    }
    const PeerId* best = nullptr;
    double best_cost = 0.0;
    for (const auto& [id, peer] : cap.peers) {  // map order: ties go to the lower id
      if (!peer.figures.contains(f)) continue;
      const double c = ctx.costs.peer_cost(peer);
      if (!best || c < best_cost) {
        best = &id;
        best_cost = c;
      }
    }
    if (best) cover.push_back(AdaptationAction::borrow(*best, f));
  }

  std::vector<AdaptationAction> trim;
  if (rank(target_cls) < rank(state.cls)) trim.push_back(AdaptationAction::set_class(target_cls));
  for (const auto& f : state.local)
    if (!target->contains(f)) trim.push_back(AdaptationAction::disable(f));
  for (const auto& [peer, figs] : state.borrowed)
    for (const auto& f : figs)
      if (!target->contains(f)) trim.push_back(AdaptationAction::release(peer, f));

  auto full = cover;
  full.insert(full.end(), trim.begin(), trim.end());

  auto score = [&](const std::vector<AdaptationAction>& plan) {
    return score_state(apply_actions(state, plan), predicted, ctx,
                       ctx.costs.switch_cost * static_cast<double>(plan.size()));
  };

  const double idle = score_state(state, predicted, ctx);
  std::vector<AdaptationAction> best_plan;
  double best_score = idle;
  for (const auto* candidate : {&cover, &full}) {
    if (candidate->empty()) continue;
    const double s = score(*candidate);
    if (s > best_score) {
      best_score = s;
      best_plan = *candidate;
    }
  }
  return best_plan;
}

struct StepResult {
  SystemState state;
  std::optional<Behavior> forecast;
  std::vector<AdaptationAction> actions;
  SupplyReport supply;
  FitValue fit = FitValue::neg_infinity();
  double cost = 0.0;  // this tick: running cost + switching
};

// One MAPE-K loop. Each tick the controller forecasts the behavior it is
// about to face (Analyze), plans and applies adaptations (Plan, Execute),
// then observes the environment (Monitor), is scored against it, and keeps
// the observation (Knowledge). Without a predictor the system is static.
class Controller {
 public:
  Controller(std::optional<Predictor> predictor, PlanningContext ctx)
      : predictor_(std::move(predictor)), ctx_(std::move(ctx)) {}

  const std::optional<Predictor>& predictor() const noexcept { return predictor_; }
  const PlanningContext& context() const noexcept { return ctx_; }
  std::span<const Behavior> history() const noexcept { return history_; }

  // Proactive order: supply and fit plus the environment figures fed to
  // the predictor.
  int order(std::size_t env_figures) const noexcept {
    return predictor_ ? 2 + static_cast<int>(env_figures) : 0;
  }

  // The oracle forecast reads `observed` before it is monitored.
  StepResult step(const SystemState& state, const Behavior& observed) {
    StepResult r;
    r.state = state;
    if (predictor_ && (!history_.empty() || std::holds_alternative<Oracle>(*predictor_))) {
      r.forecast = predict(*predictor_, history_, observed);
      r.actions = plan_adaptation(state, *r.forecast, ctx_);
      r.state = apply_actions(state, r.actions);
    }
    r.cost = tick_cost(r.state, ctx_.capability, ctx_.costs) +
             ctx_.costs.switch_cost * static_cast<double>(r.actions.size());
    r.state.cum_cost += r.cost;

    r.supply = supply(r.state.behavior(), observed);
    r.fit = fit(r.supply, ctx_.variant);

    history_.push_back(observed);
    const auto depth = predictor_ ? history_depth(*predictor_) : 1;
    if (history_.size() > depth)
      history_.erase(history_.begin(), history_.end() - static_cast<std::ptrdiff_t>(depth));
    return r;
  }

 private:
  std::optional<Predictor> predictor_;
  PlanningContext ctx_;
  std::vector<Behavior> history_;
};

}  // namespace sefit
