#include <gtest/gtest.h>

#include <cmath>

#include "hopial/opial.hpp"

using namespace hopial;

namespace {

const Interval unit(0.0, 1.0);

LemmaParams params_for(OpialVariant v) {
  LemmaParams e;
  switch (v) {
    case OpialVariant::M1:
    case OpialVariant::AG:
      e.p = 2.0;
      e.q = 2.0;
      break;
    case OpialVariant::Z1:
    case OpialVariant::Z4:
      e.p = 1.0;
      e.q = 2.0;
      break;
    case OpialVariant::BS1:
    case OpialVariant::BS2:
      e.p = 1.0;
      e.q = 1.0;
      e.k = 2.0;
      break;
    default:
      break;
  }
  return e;
}

TestPath scaled_path(const TestPath& path, double c) {
  std::vector<std::pair<double, double>> knots = path.y.as<PiecewiseLinear>()->knots;
  for (auto& k : knots) k.second *= c;
  return pwl_path(knots, path.interval, "scaled");
}

}  // namespace

TEST(Variants, NamesRoundTrip) {
  for (OpialVariant v : all_variants()) EXPECT_EQ(variant_from_string(to_string(v)), v);
  EXPECT_THROW(variant_from_string("NOPE"), UsageError);
}

TEST(Paths, BuiltInPathsAreConsistent) {
  EXPECT_NO_THROW(validate_path(hat_path(unit)));
  EXPECT_NO_THROW(validate_path(hat_path(unit, 0.3)));
  EXPECT_NO_THROW(validate_path(linear_path(unit, Side::right)));
  EXPECT_NO_THROW(validate_path(power_path(Interval(1.0, 3.0), 1.5)));
  for (const auto& p : random_paths(20, 9, Vanishing::both)) EXPECT_NO_THROW(validate_path(p));
}

TEST(Paths, InconsistentDerivativeRejected) {
  TestPath bad = linear_path(unit);
  bad.derivative = FunctionSpec::constant(2.0);
  EXPECT_THROW(validate_path(bad), InvalidSpec);
}

TEST(OpialLhs, HandValues) {
  EXPECT_NEAR(opial_lhs(OpialVariant::OPIAL, hat_path(unit)).value, 0.25, 1e-14);
  EXPECT_NEAR(opial_lhs(OpialVariant::B1, linear_path(unit)).value, 0.5, 1e-14);
  for (OpialVariant v : all_variants()) {
    EXPECT_EQ(opial_lhs(v, zero_path(unit), {}, params_for(v)).value, 0.0) << to_string(v);
  }
}

TEST(EqualityWitnesses, RatioIsOne) {
  EXPECT_NEAR(verify_variant(OpialVariant::OPIAL, hat_path(unit)).ratio, 1.0, 1e-8);
  EXPECT_NEAR(verify_variant(OpialVariant::B1, linear_path(unit)).ratio, 1.0, 1e-8);
  LemmaParams h;
  h.p = 2.0;
  const auto rec = verify_variant(OpialVariant::H1, linear_path(unit), {}, h);
  EXPECT_NEAR(rec.ratio, 1.0, 1e-8);
  EXPECT_EQ(rec.status, Status::holds);
}

TEST(EqualityWitnesses, OpialHatOnShiftedInterval) {
  const Interval iv(2.0, 5.0);
  EXPECT_NEAR(verify_variant(OpialVariant::OPIAL, hat_path(iv)).ratio, 1.0, 1e-8);
}

TEST(Boundary, WrongEndRejected) {
  EXPECT_THROW(verify_variant(OpialVariant::OPIAL, linear_path(unit)), PreconditionFailed);
  EXPECT_THROW(verify_variant(OpialVariant::Z1, linear_path(unit, Side::right), {}, params_for(OpialVariant::Z1)),
               PreconditionFailed);
}

TEST(B1, PrintedConstantUsesRightEndpoint) {
  const Interval iv(1.0, 2.0);
  const auto printed = verify_variant(OpialVariant::B1, linear_path(iv), {}, {}, Mode::as_printed);
  const auto derived = verify_variant(OpialVariant::B1, linear_path(iv), {}, {}, Mode::as_derived);
  EXPECT_NEAR(printed.constant, 1.0, 1e-15);
  EXPECT_NEAR(derived.constant, 0.5, 1e-15);
}

TEST(BW1, PrintedFormFailsDerivedHolds) {
  LemmaWeights w;
  w.s = FunctionSpec::power(1.0, 1.0);
  const auto derived = verify_variant(OpialVariant::BW1, linear_path(unit), w, {}, Mode::as_derived);
  EXPECT_EQ(derived.status, Status::holds);
  const auto printed = verify_variant(OpialVariant::BW1, linear_path(unit), w, {}, Mode::as_printed);
  EXPECT_EQ(printed.status, Status::violated);
}

TEST(Homogeneity, RatioInvariantUnderScaling) {
  const auto paths = random_paths(5, 31, Vanishing::both);
  for (OpialVariant v : all_variants()) {
    const LemmaParams e = params_for(v);
    for (const auto& path : paths) {
      const double base = verify_variant(v, path, {}, e).ratio;
      const double big = verify_variant(v, scaled_path(path, 3.7), {}, e).ratio;
      EXPECT_NEAR(big, base, 1e-10 * std::max(1.0, base)) << to_string(v);
    }
  }
}

TEST(Reflection, LeftAndRightTwinsAgree) {
  const LemmaWeights w{FunctionSpec::sum({FunctionSpec::constant(1.0), FunctionSpec::power(1.0, 1.0)}),
                       FunctionSpec::sum({FunctionSpec::constant(0.5), FunctionSpec::power(1.0, 2.0)}),
                       FunctionSpec::constant(1.0)};
  const LemmaWeights wr{reflect(w.r, unit), reflect(w.s, unit), w.w};
  const auto paths = random_paths(5, 41, Vanishing::left);
  const std::vector<std::pair<OpialVariant, OpialVariant>> twins = {
      {OpialVariant::Z1, OpialVariant::Z4}, {OpialVariant::BS1, OpialVariant::BS2}};
  for (const auto& [left, right] : twins) {
    const LemmaParams e = params_for(left);
    for (const auto& path : paths) {
      std::vector<std::pair<double, double>> knots;
      for (const auto& [x, y] : path.y.as<PiecewiseLinear>()->knots) knots.emplace_back(1.0 - x, y);
      std::reverse(knots.begin(), knots.end());
      const TestPath mirrored = pwl_path(knots, unit, "mirrored");
      const double a = verify_variant(left, path, w, e).ratio;
      const double b = verify_variant(right, mirrored, wr, e).ratio;
      EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, a)) << to_string(left);
    }
  }
}

TEST(B2, ConstantWeightMatchesB1) {
  const auto path = random_paths(1, 5, Vanishing::left).front();
  const auto b1 = verify_variant(OpialVariant::B1, path);
  const auto b2 = verify_variant(OpialVariant::B2, path);
  EXPECT_NEAR(b1.constant * b1.rhs, b2.constant * b2.rhs, 1e-12);
}

TEST(RandomPaths, Y1Holds) {
  LemmaParams e;
  e.p = 1.5;
  e.q = 2.0;
  const auto paths = random_paths(200, 2024, Vanishing::left);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto rec = verify_variant(OpialVariant::Y1, paths[i], {}, e);
    EXPECT_EQ(rec.status, Status::holds) << i << " ratio " << rec.ratio;
  }
}

TEST(RandomPaths, EveryVariantHoldsInDerivedMode) {
  for (OpialVariant v : all_variants()) {
    const auto paths = random_paths(30, 7, required_vanishing(v));
    LemmaWeights w;
    if (v == OpialVariant::BW1) w.s = FunctionSpec::sum({FunctionSpec::constant(0.5), FunctionSpec::power(1.0, 1.0)});
    for (const auto& path : paths) {
      const auto rec = verify_variant(v, path, w, params_for(v));
      EXPECT_EQ(rec.status, Status::holds) << to_string(v) << " ratio " << rec.ratio;
    }
  }
}

TEST(Sharpness, HatPeakSearchFindsMidpoint) {
  auto family = [](const std::vector<double>& x) { return hat_path(unit, x.at(0)); };
  const auto res = lemma_sharpness_search(OpialVariant::OPIAL, family, {0.1}, {0.9});
  EXPECT_NEAR(res.best_ratio, 1.0, 1e-8);
  EXPECT_NEAR(res.best_params.at(0), 0.5, 1e-4);
  EXPECT_LE(res.evaluations, 100);
  EXPECT_THROW(lemma_sharpness_search(OpialVariant::OPIAL, family, {0.1}, {0.9}, {}, {}, Mode::as_derived, 10),
               DomainError);
}
