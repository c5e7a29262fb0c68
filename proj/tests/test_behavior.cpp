#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/behavior_oracle.hpp"
#include "sefit/behavior.hpp"
#include "support.hpp"

using namespace sefit;
using sefit::testing::pur;
using sefit::testing::random_behavior;

namespace {

const Behavior kRan{BehaviorClass::Random};
const Behavior kPur{BehaviorClass::Purposeful};
const Behavior kPro{BehaviorClass::Proactive};
const Behavior kSoc{BehaviorClass::Social};
const Behavior kPro1 = Behavior::with_arity(BehaviorClass::Proactive, 1);
const Behavior kPro2 = Behavior::with_arity(BehaviorClass::Proactive, 2);

// Frozen from an independent evaluation (Python math.log).
constexpr double kTwoLn3 = 2.1972245773362196;
constexpr double kTwoLn2 = 1.3862943611198906;
constexpr double kLn5 = 1.6094379124341003;

}  // namespace

TEST(Behavior, ProjectClass) {
  EXPECT_EQ(project_class(kRan), 1);
  EXPECT_EQ(project_class(kSoc), 5);
  EXPECT_EQ(project_class(kPro2), 4);
  EXPECT_EQ(project_class(Behavior{BehaviorClass::Purposeful}), 2);
  EXPECT_EQ(project_class(Behavior{BehaviorClass::Reactive}), 3);
}

TEST(Behavior, PrecedesExamples) {
  EXPECT_TRUE(precedes(kPur, kPro1));
  EXPECT_TRUE(precedes(pur({"1", "4"}), pur({"1", "2", "3", "4"})));
  EXPECT_TRUE(precedes(kPro1, kPro2));
  EXPECT_FALSE(precedes(pur({"1", "5"}), pur({"1", "2", "3", "4"})));
  EXPECT_FALSE(precedes(pur({"1", "2", "3", "4"}), pur({"1", "5"})));
}

TEST(Behavior, PrecedesUsesProactiveOrderAcrossScopeKinds) {
  const auto pro_sl = Behavior::with_figures(BehaviorClass::Proactive, {"speed", "luminosity"});
  const auto pro3 = Behavior::with_arity(BehaviorClass::Proactive, 3);
  EXPECT_TRUE(precedes(pro_sl, pro3));
  EXPECT_TRUE(precedes(kPro1, pro_sl));
  EXPECT_FALSE(precedes(pro_sl, kPro2));
  EXPECT_FALSE(precedes(kPro2, pro_sl));
  // Arity order only matters for proactive behaviors.
  EXPECT_FALSE(precedes(Behavior::with_arity(BehaviorClass::Reactive, 1),
                        Behavior::with_arity(BehaviorClass::Reactive, 2)));
}

TEST(Behavior, Comparable) {
  EXPECT_TRUE(comparable(pur({"1", "4"}), pur({"1", "4"})));
  EXPECT_FALSE(comparable(pur({"1", "5"}), pur({"1", "2", "3", "4"})));
  EXPECT_TRUE(comparable(kRan, kSoc));
}

TEST(Behavior, DistanceExamples) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto b = random_behavior(rng);
    EXPECT_EQ(distance(b, b), 0.0);
  }
  EXPECT_NEAR(distance(pur({"1", "4"}), pur({"1", "2", "3", "4"})), kTwoLn3, 1e-12);
  EXPECT_NEAR(distance(kPur, kPro), kTwoLn2, 1e-12);
  EXPECT_NEAR(distance(pur({"1", "2"}), Behavior::with_figures(BehaviorClass::Proactive, {"1", "2"})),
              kTwoLn2, 1e-12);
  EXPECT_NEAR(distance(kPro1, kPro2), kLn5, 1e-12);
}

TEST(Behavior, DistanceExponentsAreTheGoedelNumber) {
  const auto e = distance_exponents(pur({"1"}), Behavior::with_figures(BehaviorClass::Social, {"2", "3"}));
  EXPECT_EQ(e, (DistanceExponents{3, 3, 0}));
  EXPECT_NEAR(std::exp(distance(pur({"1"}), Behavior::with_figures(BehaviorClass::Social, {"2", "3"}))),
              8.0 * 27.0, 1e-9);
  // Mixed scope kinds route through the unspecified hub.
  EXPECT_EQ(distance_exponents(kPro2, Behavior::with_figures(BehaviorClass::Proactive, {"a", "b"})),
            (DistanceExponents{0, 3, 2}));
  EXPECT_EQ(distance_exponents(kPur, Behavior::with_figures(BehaviorClass::Purposeful, {})),
            (DistanceExponents{0, 1, 0}));
}

TEST(Behavior, DistanceMatchesScopeGraphOracle) {
  const auto figs = sefit::testing::figure_names(4);
  oracle::ScopeGraphMetric graph(figs, 4);
  const auto all = oracle::enumerate_universe(figs, 4);
  for (const auto& x : all)
    for (const auto& y : all) ASSERT_NEAR(distance(x, y), graph(x, y), 1e-9) << format_behavior(x) << " " << format_behavior(y);
}

TEST(Behavior, StrictPartialOrderExhaustive) {
  // 5 classes x (unspecified + 3 arities + 8 subsets) = 60 behaviors.
  const auto all = oracle::enumerate_universe(sefit::testing::figure_names(3), 3);
  ASSERT_LE(all.size(), 200u);
  for (const auto& a : all) {
    ASSERT_FALSE(precedes(a, a));
    for (const auto& b : all) {
      const bool ab = precedes(a, b);
      if (ab) {
        ASSERT_FALSE(precedes(b, a));
        ASSERT_LE(project_class(a), project_class(b));
        ASSERT_GT(distance(a, b), 0.0);
        for (const auto& c : all)
          if (precedes(b, c)) ASSERT_TRUE(precedes(a, c)) << format_behavior(a) << format_behavior(b) << format_behavior(c);
      }
    }
  }
}

TEST(Behavior, MetricAxiomsRandomized) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto x = random_behavior(rng), y = random_behavior(rng), z = random_behavior(rng);
    const double dxy = distance(x, y);
    ASSERT_GE(dxy, 0.0);
    ASSERT_EQ(dxy == 0.0, x == y);
    ASSERT_DOUBLE_EQ(dxy, distance(y, x));
    ASSERT_LE(distance(x, z), dxy + distance(y, z) + 1e-12);
  }
}

TEST(Behavior, SymmetricDifferenceAgreesWithOrderedFactorOnSubsetPairs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto g = sefit::testing::random_figures(rng, 6);
    FigureSet f;
    for (const auto& x : g)
      if (rng() & 1) f.insert(x);
    if (f == g) continue;
    const auto cls = sefit::testing::random_class(rng);
    const auto b1 = Behavior::with_figures(cls, f), b2 = Behavior::with_figures(cls, g);
    ASSERT_TRUE(precedes(b1, b2));
    ASSERT_EQ(distance_exponents(b1, b2).b, static_cast<int>(g.size() - f.size()));
  }
}

TEST(Behavior, DistanceAddsAlongSingleTermChains) {
  // Class chain.
  EXPECT_NEAR(distance(kRan, kSoc), distance(kRan, kPur) + distance(kPur, kSoc), 1e-12);
  // Figure-set chain.
  const auto a = pur({"1"}), b = pur({"1", "2"}), c = pur({"1", "2", "3", "4"});
  EXPECT_NEAR(distance(a, c), distance(a, b) + distance(b, c), 1e-12);
  // Arity chain.
  const auto p5 = Behavior::with_arity(BehaviorClass::Proactive, 5);
  EXPECT_NEAR(distance(kPro1, p5), distance(kPro1, kPro2) + distance(kPro2, p5), 1e-12);
}

TEST(BehaviorGrammar, ParsesTerms) {
  EXPECT_EQ(parse_behavior("pur"), kPur);
  EXPECT_EQ(parse_behavior("pro^2"), kPro2);
  EXPECT_EQ(parse_behavior("pro{speed,luminosity}"),
            Behavior::with_figures(BehaviorClass::Proactive, {"speed", "luminosity"}));
  EXPECT_EQ(parse_behavior("  pur{ 1 , 4 }  "), pur({"1", "4"}));
  EXPECT_EQ(parse_behavior("pur{}"), pur({}));
  EXPECT_EQ(parse_behavior("ran{x}"), Behavior::with_figures(BehaviorClass::Random, {"x"}));
}

TEST(BehaviorGrammar, RejectsMalformedTerms) {
  for (const char* bad : {"", "xyz", "pas", "pro^0", "pro^", "pro^x", "pro{a,,b}", "pro{a}x",
                          "pro{a", "purx", "pro^2{a}"}) {
    EXPECT_THROW(parse_behavior(bad), ParseError) << bad;
  }
}

TEST(BehaviorGrammar, FormatReparses) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto b = random_behavior(rng);
    ASSERT_EQ(parse_behavior(format_behavior(b)), b);
  }
  EXPECT_EQ(format_behavior(pur({"4", "1"})), "pur{1,4}");
  EXPECT_EQ(format_behavior(kPro1), "pro^1");
}
