#pragma once

// MAPE-K cybernetic class: one optional behavior per organ.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sefit/behavior.hpp"

namespace sefit {

enum class Organ { Monitor = 0, Analyze = 1, Plan = 2, Execute = 3, Knowledge = 4 };

inline constexpr std::array<Organ, 5> kOrgans = {Organ::Monitor, Organ::Analyze, Organ::Plan,
                                                 Organ::Execute, Organ::Knowledge};

constexpr std::string_view organ_name(Organ o) noexcept {
  constexpr std::string_view names[] = {"monitor", "analyze", "plan", "execute", "knowledge"};
  return names[static_cast<int>(o)];
}

struct CyberneticClass {
  // std::nullopt is an absent organ.
  std::array<std::optional<Behavior>, 5> organs{};

  const std::optional<Behavior>& operator[](Organ o) const { return organs[static_cast<int>(o)]; }
  std::optional<Behavior>& operator[](Organ o) { return organs[static_cast<int>(o)]; }

  bool operator==(const CyberneticClass&) const = default;
};

inline CyberneticClass parse_class(std::string_view text) {
  auto t = detail::trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError("cybernetic class must be a parenthesised 5-tuple");
  t = t.substr(1, t.size() - 2);

  // Split on commas outside braces.
  std::vector<std::string_view> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '{') ++depth;
    if (t[i] == '}') --depth;
    if (t[i] == ',' && depth == 0) {
      terms.push_back(t.substr(start, i - start));
      start = i + 1;
    }
  }
  terms.push_back(t.substr(start));
  if (terms.size() != 5)
    throw ParseError("cybernetic class arity " + std::to_string(terms.size()) + " != 5");

  CyberneticClass c;
  for (std::size_t i = 0; i < 5; ++i) {
    auto term = detail::trim(terms[i]);
    if (term == "none") continue;
    try {
      c.organs[i] = parse_behavior(term);
    } catch (const ParseError& e) {
      throw ParseError("slot " + std::to_string(i + 1) + " (" +
                       std::string(organ_name(kOrgans[i])) + "): " + e.what());
    }
  }
  return c;
}

inline std::string format_class(const CyberneticClass& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) s += ", ";
    s += c.organs[i] ? format_behavior(*c.organs[i]) : "none";
  }
  s += ')';
  return s;
}

// Monitor and execute organs are expected to be purposeful.
inline std::vector<std::string> class_warnings(const CyberneticClass& c) {
  std::vector<std::string> out;
  for (auto o : {Organ::Monitor, Organ::Execute}) {
    if (c[o] && c[o]->cls != BehaviorClass::Purposeful)
      out.push_back(std::string(organ_name(o)) + " organ is " +
                    std::string(class_token(c[o]->cls)) + ", expected pur");
  }
  return out;
}

enum class Dominance { First, Second, Equal, Incomparable };

constexpr std::string_view to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::First: return "first";
    case Dominance::Second: return "second";
    case Dominance::Equal: return "equal";
    case Dominance::Incomparable: return "incomparable";
  }
  return "?";
}

// Per-organ comparison; an absent organ sits below every present behavior.
inline Dominance compare_organ(const std::optional<Behavior>& x, const std::optional<Behavior>& y) {
  if (!x && !y) return Dominance::Equal;
  if (!x) return Dominance::Second;
  if (!y) return Dominance::First;
  if (*x == *y) return Dominance::Equal;
  if (precedes(*y, *x)) return Dominance::First;
  if (precedes(*x, *y)) return Dominance::Second;
  return Dominance::Incomparable;
}

inline std::array<Dominance, 5> organ_comparison(const CyberneticClass& c1,
                                                 const CyberneticClass& c2) {
  std::array<Dominance, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = compare_organ(c1.organs[i], c2.organs[i]);
  return out;
}

// Product order over the five organs.
inline Dominance dominates(const CyberneticClass& c1, const CyberneticClass& c2) {
  bool first = false;
  bool second = false;
  for (auto d : organ_comparison(c1, c2)) {
    if (d == Dominance::Incomparable) return Dominance::Incomparable;
    first |= d == Dominance::First;
    second |= d == Dominance::Second;
  }
  if (first && second) return Dominance::Incomparable;
  if (first) return Dominance::First;
  if (second) return Dominance::Second;
  return Dominance::Equal;
}

}  // namespace sefit
