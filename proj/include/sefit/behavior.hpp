#pragma once

// Behavior classes, the strict partial order over behaviors and the
// behavior metric. Everything here is a value type; all functions are pure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace sefit {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BehaviorClass : std::uint8_t {
  Random = 1,
  Purposeful = 2,
  Reactive = 3,
  Proactive = 4,
  Social = 5,
};

inline constexpr BehaviorClass kAllClasses[] = {
    BehaviorClass::Random, BehaviorClass::Purposeful, BehaviorClass::Reactive,
    BehaviorClass::Proactive, BehaviorClass::Social};

// Projection onto 1..5.
constexpr int rank(BehaviorClass c) noexcept { return static_cast<int>(c); }

constexpr std::string_view class_token(BehaviorClass c) noexcept {
  switch (c) {
    case BehaviorClass::Random: return "ran";
    case BehaviorClass::Purposeful: return "pur";
    case BehaviorClass::Reactive: return "rea";
    case BehaviorClass::Proactive: return "pro";
    case BehaviorClass::Social: return "soc";
  }
  return "?";
}

inline std::optional<BehaviorClass> class_from_token(std::string_view tok) {
  for (auto c : kAllClasses)
    if (class_token(c) == tok) return c;
  return std::nullopt;
}

using FigureId = std::string;
using FigureSet = std::set<FigureId>;

struct Unspecified {
  auto operator<=>(const Unspecified&) const = default;
};

struct Arity {
  int n = 1;
  auto operator<=>(const Arity&) const = default;
};

struct Figures {
  FigureSet set;
  auto operator<=>(const Figures&) const = default;
};

using BehaviorScope = std::variant<Unspecified, Arity, Figures>;

struct Behavior {
  BehaviorClass cls = BehaviorClass::Random;
  BehaviorScope scope = Unspecified{};

  Behavior() = default;
  Behavior(BehaviorClass c) : cls(c) {}  // NOLINT: implicit is convenient
  Behavior(BehaviorClass c, BehaviorScope s) : cls(c), scope(std::move(s)) {
    if (auto* a = std::get_if<Arity>(&scope); a && a->n < 1)
      throw std::invalid_argument("arity must be >= 1");
  }

  static Behavior with_figures(BehaviorClass c, FigureSet f) {
    return {c, Figures{std::move(f)}};
  }
  static Behavior with_arity(BehaviorClass c, int n) { return {c, Arity{n}}; }

  const FigureSet* figures() const noexcept {
    auto* f = std::get_if<Figures>(&scope);
    return f ? &f->set : nullptr;
  }
  const Arity* arity() const noexcept { return std::get_if<Arity>(&scope); }

  // Number of context figures the behavior considers, if known. For a
  // proactive behavior this is its order.
  std::optional<int> order() const noexcept {
    if (auto* a = arity()) return a->n;
    if (auto* f = figures()) return static_cast<int>(f->size());
    return std::nullopt;
  }

  bool operator==(const Behavior&) const = default;
  auto operator<=>(const Behavior&) const = default;
};

constexpr int project_class(const Behavior& b) noexcept { return rank(b.cls); }

namespace detail {

inline bool proper_subset(const FigureSet& f, const FigureSet& g) {
  return f.size() < g.size() && std::includes(g.begin(), g.end(), f.begin(), f.end());
}

inline std::size_t symmetric_difference_size(const FigureSet& f, const FigureSet& g) {
  std::size_t common = 0;
  auto i = f.begin();
  auto j = g.begin();
  while (i != f.end() && j != g.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return f.size() + g.size() - 2 * common;
}

}  // namespace detail

// b1 strictly precedes b2: lower class; or same class with a strictly
// smaller explicit figure set; or both proactive with a lower order.
inline bool precedes(const Behavior& b1, const Behavior& b2) {
  if (rank(b1.cls) < rank(b2.cls)) return true;
  if (b1.cls != b2.cls) return false;
  auto* f = b1.figures();
  auto* g = b2.figures();
  if (f && g && detail::proper_subset(*f, *g)) return true;
  if (b1.cls == BehaviorClass::Proactive) {
    auto n = b1.order();
    auto m = b2.order();
    if (n && m && *n < *m) return true;
  }
  return false;
}

inline bool comparable(const Behavior& b1, const Behavior& b2) {
  return b1 == b2 || precedes(b1, b2) || precedes(b2, b1);
}

// Exponents of the Goedel-style number 2^a * 3^b * 5^c between two behaviors.
//   a: class rank difference
//   b: figure-set steps (symmetric difference)
//   c: arity steps
// Scopes live on one graph: Unspecified is a hub, Arity(n) sits n arity
// steps out along a chain, Figures(F) sits |F|+1 set steps out through
// Figures({}). Exponents are read off the shortest path, so the result is
// a metric even between scopes of different kinds.
struct DistanceExponents {
  int a = 0;
  int b = 0;
  int c = 0;
  bool operator==(const DistanceExponents&) const = default;
};

inline DistanceExponents distance_exponents(const Behavior& x, const Behavior& y) {
  DistanceExponents e;
  e.a = std::abs(rank(x.cls) - rank(y.cls));

  // Offsets from the hub: {set steps, arity steps}.
  auto hub_offset = [](const BehaviorScope& s) -> std::pair<int, int> {
    if (auto* a = std::get_if<Arity>(&s)) return {0, a->n};
    if (auto* f = std::get_if<Figures>(&s)) return {static_cast<int>(f->set.size()) + 1, 0};
    return {0, 0};
  };

  if (auto *f = x.figures(), *g = y.figures(); f && g) {
    e.b = static_cast<int>(detail::symmetric_difference_size(*f, *g));
  } else if (auto *n = x.arity(), *m = y.arity(); n && m) {
    e.c = std::abs(n->n - m->n);
  } else {
    auto [xb, xc] = hub_offset(x.scope);
    auto [yb, yc] = hub_offset(y.scope);
    e.b = xb + yb;
    e.c = xc + yc;
  }
  return e;
}

inline double distance(const Behavior& x, const Behavior& y) {
  const auto e = distance_exponents(x, y);
  return e.a * std::log(2.0) + e.b * std::log(3.0) + e.c * std::log(5.0);
}

// ---------------------------------------------------------------------------
// Textual grammar: ran|pur|rea|pro|soc, optionally {f1,f2,...} or ^n.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool valid_figure_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
  });
}

}  // namespace detail

// Parses "{a, b ,c}" (braces included). Whitespace inside braces is ignored.
inline FigureSet parse_figure_set(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("expected figure set in braces, got '" + std::string(text) + "'");
  FigureSet out;
  auto body = detail::trim(text.substr(1, text.size() - 2));
  if (body.empty()) return out;
  while (true) {
    auto comma = body.find(',');
    auto tok = detail::trim(body.substr(0, comma));
    if (!detail::valid_figure_token(tok))
      throw ParseError("bad figure identifier '" + std::string(tok) + "'");
    out.emplace(tok);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return out;
}

inline std::string format_figure_set(const FigureSet& f) {
  std::string s = "{";
  for (auto it = f.begin(); it != f.end(); ++it) {
    if (it != f.begin()) s += ',';
    s += *it;
  }
  s += '}';
  return s;
}

inline Behavior parse_behavior(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 3) throw ParseError("bad behavior term '" + std::string(text) + "'");
  auto cls = class_from_token(text.substr(0, 3));
  if (!cls) throw ParseError("unknown behavior class in '" + std::string(text) + "'");
  auto rest = detail::trim(text.substr(3));
  if (rest.empty()) return Behavior{*cls};
  if (rest.front() == '{') return Behavior::with_figures(*cls, parse_figure_set(rest));
  if (rest.front() == '^') {
    auto digits = detail::trim(rest.substr(1));
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw ParseError("bad arity in '" + std::string(text) + "'");
    int n = std::stoi(std::string(digits));
    if (n < 1) throw ParseError("arity must be >= 1 in '" + std::string(text) + "'");
    return Behavior::with_arity(*cls, n);
  }
  throw ParseError("trailing characters in behavior term '" + std::string(text) + "'");
}

inline std::string format_behavior(const Behavior& b) {
  std::string s(class_token(b.cls));
  if (auto* a = b.arity()) s += '^' + std::to_string(a->n);
  if (auto* f = b.figures()) s += format_figure_set(*f);
  return s;
}

}  // namespace sefit
