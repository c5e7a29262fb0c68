#pragma once

// Supply of a system behavior relative to an environment behavior, and the
// system-environment fit derived from it.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "sefit/behavior.hpp"

namespace sefit {

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

enum class SupplyKind { Perfect, Oversupply, Undersupply, Incomparable };

constexpr std::string_view to_string(SupplyKind k) noexcept {
  switch (k) {
    case SupplyKind::Perfect: return "perfect";
    case SupplyKind::Oversupply: return "oversupply";
    case SupplyKind::Undersupply: return "undersupply";
    case SupplyKind::Incomparable: return "incomparable";
  }
  return "?";
}

struct SupplyReport {
  double value = 0.0;
  SupplyKind kind = SupplyKind::Perfect;
};

enum class FitVariant { Linear, Quadratic };

inline FitVariant parse_fit_variant(std::string_view s) {
  if (s == "linear") return FitVariant::Linear;
  if (s == "quadratic") return FitVariant::Quadratic;
  throw ParseError("unknown fit variant '" + std::string(s) + "' (linear|quadratic)");
}

constexpr std::string_view to_string(FitVariant v) noexcept {
  return v == FitVariant::Linear ? "linear" : "quadratic";
}

// Fit in (0,1], or the distinguished undersupply value.
class FitValue {
 public:
  static FitValue neg_infinity() noexcept { return FitValue{}; }
  static FitValue finite(double v) noexcept { return FitValue{v}; }

  bool is_neg_infinity() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  // -inf for undersupply.
  double value() const noexcept { return value_ ? *value_ : kNegInfinity; }

  bool operator==(const FitValue&) const = default;

 private:
  FitValue() = default;
  explicit FitValue(double v) : value_(v) {}
  std::optional<double> value_;
};

// Positive when the environment behavior precedes the system's, negative
// when the system falls short. Incomparable pairs count as undersupply:
// some environmental figure is left uncovered.
inline SupplyReport supply(const Behavior& sys, const Behavior& env) {
  if (sys == env) return {0.0, SupplyKind::Perfect};
  const double d = distance(sys, env);
  if (precedes(env, sys)) return {d, SupplyKind::Oversupply};
  if (precedes(sys, env)) return {-d, SupplyKind::Undersupply};
  return {-d, SupplyKind::Incomparable};
}

inline FitValue fit(const SupplyReport& s, FitVariant v = FitVariant::Linear) {
  if (s.value < 0.0) return FitValue::neg_infinity();
  const double x = v == FitVariant::Linear ? s.value : s.value * s.value;
  return FitValue::finite(1.0 / (1.0 + x));
}

// Linear cost penalty. Returns -inf for undersupply.
inline double cost_adjusted_fit(const FitValue& f, double cost, double weight) {
  if (f.is_neg_infinity()) return kNegInfinity;
  return f.value() - weight * cost;
}

// Shared numeric formatting for reports: "-inf" for the undersupply value,
// otherwise up to 10 significant digits.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (v == 0.0) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string format_fit(const FitValue& f) { return format_real(f.value()); }

}  // namespace sefit
