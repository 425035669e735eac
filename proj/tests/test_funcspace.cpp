#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hopial/funcspace.hpp"
#include "hopial/quad.hpp"

using namespace hopial;

namespace {
const Interval unit(0.0, 1.0);
}

TEST(Interval, RejectsEmptyOrInfinite) {
  EXPECT_THROW(Interval(1.0, 1.0), DomainError);
  EXPECT_THROW(Interval(2.0, 1.0), DomainError);
  EXPECT_THROW(Interval(0.0, INFINITY), DomainError);
  EXPECT_DOUBLE_EQ(Interval(1.0, 3.0).length(), 2.0);
}

TEST(Evaluate, CatalogValues) {
  EXPECT_DOUBLE_EQ(evaluate(FunctionSpec::constant(1.0), 0.5, unit), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(FunctionSpec::power(1.0, 2.0), 0.5, unit), 0.25);
  EXPECT_DOUBLE_EQ(evaluate(FunctionSpec::power_from_right(2.0, 1.0), 0.25, unit), 1.5);
  EXPECT_NEAR(evaluate(FunctionSpec::exponential(1.0, 1.0), 1.0, unit), std::exp(1.0), 1e-15);
}

TEST(Evaluate, PiecewiseLinearMatchesInterpolationOracle) {
  const auto hat = FunctionSpec::piecewise_linear({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}});
  EXPECT_DOUBLE_EQ(evaluate(hat, 0.25, unit), 0.5);
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    const double oracle = x < 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
    EXPECT_NEAR(evaluate(hat, x, unit), oracle, 1e-15) << x;
  }
}

TEST(Evaluate, SingularPowerAtAnchorIsInfinity) {
  const double v = evaluate(FunctionSpec::power(1.0, -0.5), 0.0, unit);
  EXPECT_TRUE(std::isinf(v) && v > 0.0);
}

TEST(Evaluate, OutsideIntervalIsDomainError) {
  EXPECT_THROW(evaluate(FunctionSpec::constant(1.0), 1.5, unit), DomainError);
}

TEST(Validate, RejectsBrokenSpecs) {
  EXPECT_THROW(validate(FunctionSpec::piecewise_linear({{0.0, 1.0}, {0.0, 2.0}, {1.0, 0.0}}), unit),
               InvalidSpec);
  EXPECT_THROW(validate(FunctionSpec::piecewise_linear({{0.0, 1.0}, {1.0, -1.0}}), unit), InvalidSpec);
  EXPECT_THROW(validate(FunctionSpec::product({}), unit), InvalidSpec);
  EXPECT_NO_THROW(validate(FunctionSpec::sum({FunctionSpec::constant(1.0), FunctionSpec::power(1.0, 0.5)}), unit));
}

TEST(ClosedAntiderivative, ConstantAndPowerRule) {
  const auto G = closed_antiderivative(FunctionSpec::constant(3.0), unit);
  ASSERT_TRUE(G);
  EXPECT_NEAR(evaluate(*G, 0.4, unit), 1.2, 1e-15);
  for (double alpha : {-0.5, 0.0, 1.5, 3.0}) {
    const auto P = closed_antiderivative(FunctionSpec::power(1.0, alpha), unit);
    ASSERT_TRUE(P) << alpha;
    EXPECT_NEAR(evaluate(*P, 0.7, unit), std::pow(0.7, alpha + 1.0) / (alpha + 1.0), 1e-14) << alpha;
  }
}

TEST(ClosedAntiderivative, ProductIsAbsent) {
  const auto prod = FunctionSpec::product({FunctionSpec::power(1.0, 1.0), FunctionSpec::power(1.0, 2.0)});
  EXPECT_FALSE(closed_antiderivative(prod, unit));
}

TEST(ClosedAntiderivative, MatchesQuadratureOnSmoothSpecs) {
  const Interval iv(0.5, 2.0);
  const std::vector<FunctionSpec> specs = {
      FunctionSpec::power(2.0, 1.7), FunctionSpec::power_from_right(0.5, 2.5),
      FunctionSpec::exponential(1.5, -0.8),
      FunctionSpec::sum({FunctionSpec::constant(1.0), FunctionSpec::exponential(1.0, 0.3)})};
  for (const auto& f : specs) {
    const auto G = closed_antiderivative(f, iv);
    ASSERT_TRUE(G);
    for (double x : {0.9, 1.4, 2.0}) {
      const double q = integrate(integrand_of(f, iv), Interval(iv.a(), x)).value;
      EXPECT_NEAR(evaluate(*G, x, iv), q, 1e-10 * std::abs(q)) << x;
    }
  }
}

TEST(Reflect, MirrorsAboutMidpoint) {
  const Interval iv(1.0, 3.0);
  const auto f = FunctionSpec::sum({FunctionSpec::power(1.0, 1.5), FunctionSpec::exponential(1.0, 0.4)});
  const auto g = reflect(f, iv);
  for (double x : {1.0, 1.3, 2.0, 2.9}) {
    EXPECT_NEAR(evaluate(g, x, iv), evaluate(f, 4.0 - x, iv), 1e-13) << x;
  }
}

TEST(SampleFamily, RandomPiecewiseLinearIsReproducibleAndDistinct) {
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{4, 0.0, 1.0, false, false};
  fam.seed = 7;
  const auto a = sample_family(fam, 3);
  const auto b = sample_family(fam, 3);
  ASSERT_EQ(a.size(), 3u);
  std::set<std::vector<std::pair<double, double>>> distinct;
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].as<PiecewiseLinear>()->knots, b[i].as<PiecewiseLinear>()->knots);
    distinct.insert(a[i].as<PiecewiseLinear>()->knots);
  }
  EXPECT_EQ(distinct.size(), 3u);
}

TEST(SampleFamily, PrefixProperty) {
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{6, 0.0, 1.0, false, false};
  fam.seed = 11;
  const auto short_list = sample_family(fam, 10);
  const auto long_list = sample_family(fam, 25);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(short_list[i].as<PiecewiseLinear>()->knots, long_list[i].as<PiecewiseLinear>()->knots);
  }
}

TEST(SampleFamily, GridPowerLawEnumerates) {
  FamilySpec fam;
  fam.kind = GridPowerLaw{{0.0, 1.0, 2.0}};
  const auto fs = sample_family(fam, 3);
  for (int i = 0; i < 3; ++i) {
    const auto* pl = fs[i].as<PowerLaw>();
    ASSERT_NE(pl, nullptr);
    EXPECT_EQ(pl->alpha, static_cast<double>(i));
    EXPECT_EQ(pl->c, 1.0);
  }
}

TEST(SampleFamily, MembersAreNonnegative) {
  FamilySpec pwl;
  pwl.kind = RandomPiecewiseLinear{5, 0.0, 2.0, true, false};
  pwl.seed = 3;
  FamilySpec pw;
  pw.kind = RandomPowerLaw{-0.5, 2.0, 0.5, 3.0};
  pw.seed = 4;
  for (const auto* fam : {&pwl, &pw}) {
    const auto fs = sample_family(*fam, 20);
    std::mt19937_64 eng(99);
    for (const auto& f : fs) {
      for (int i = 0; i < 50; ++i) {
        const double x = detail::uniform(eng, 1e-9, 1.0);
        EXPECT_GE(evaluate(f, x, unit), 0.0);
      }
    }
  }
}

TEST(SampleFamily, VanishingFlagsHonoured) {
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{5, 0.2, 1.0, true, true};
  fam.seed = 5;
  for (const auto& f : sample_family(fam, 10)) {
    EXPECT_EQ(evaluate(f, 0.0, unit), 0.0);
    EXPECT_EQ(evaluate(f, 1.0, unit), 0.0);
  }
}
