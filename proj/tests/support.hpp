#pragma once

// Hand-rolled generators for the property tests.

#include <random>
#include <string>
#include <vector>

#include "sefit/sefit.hpp"

namespace sefit::testing {

inline std::vector<std::string> figure_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline FigureSet random_figures(std::mt19937_64& rng, int universe) {
  FigureSet s;
  std::bernoulli_distribution coin(0.5);
  for (int i = 1; i <= universe; ++i)
    if (coin(rng)) s.insert(std::to_string(i));
  return s;
}

inline BehaviorClass random_class(std::mt19937_64& rng) {
  return kAllClasses[std::uniform_int_distribution<int>(0, 4)(rng)];
}

// Mixes all three scope kinds; small universes so that comparable pairs
// and chains show up often.
inline Behavior random_behavior(std::mt19937_64& rng, int universe = 4, int max_arity = 5) {
  const auto cls = random_class(rng);
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return Behavior{cls};
    case 1:
    case 2: return Behavior::with_arity(cls, std::uniform_int_distribution<int>(1, max_arity)(rng));
    default: return Behavior::with_figures(cls, random_figures(rng, universe));
  }
}

inline Behavior random_env_behavior(std::mt19937_64& rng, int universe = 5) {
  return Behavior::with_figures(random_class(rng), random_figures(rng, universe));
}

inline Behavior pur(FigureSet f) { return Behavior::with_figures(BehaviorClass::Purposeful, std::move(f)); }

}  // namespace sefit::testing
