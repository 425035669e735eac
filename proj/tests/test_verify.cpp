#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "hopial/verify.hpp"

using namespace hopial;

namespace {

TheoremInstance unit_instance(TheoremId id) {
  TheoremInstance inst;
  inst.id = id;
  inst.mode = Mode::as_printed;
  return inst;
}

FamilySpec pwl_family(std::uint64_t seed, Interval iv = Interval(0.0, 1.0)) {
  FamilySpec fam;
  fam.kind = RandomPiecewiseLinear{6, 0.0, 1.0, false, false};
  fam.seed = seed;
  fam.interval = iv;
  return fam;
}

double hardy_ratio_oracle(double alpha) { return 1.0 / (4.0 * (1.0 + alpha) * (1.0 + alpha)); }

}  // namespace

TEST(Assemble, LeftHandSides) {
  EXPECT_NEAR(assemble_lhs(unit_instance(TheoremId::T2_1)).value, 0.25, 1e-12);
  EXPECT_NEAR(assemble_lhs(unit_instance(TheoremId::T2_3)).value, 1.0 / 3.0, 1e-12);
  TheoremInstance t11 = unit_instance(TheoremId::T2_11);
  t11.exponents.p = 2.0;
  EXPECT_NEAR(assemble_lhs(t11).value, 0.25, 1e-12);
}

TEST(Assemble, RightHandSides) {
  EXPECT_NEAR(assemble_rhs(unit_instance(TheoremId::T2_1)).value, 1.0, 1e-12);
  TheoremInstance t18 = unit_instance(TheoremId::T2_18);
  t18.exponents.p = 1.0;
  t18.exponents.conjugate_check = false;
  EXPECT_NEAR(assemble_rhs(t18).value, 0.5, 1e-12);
  TheoremInstance t22 = unit_instance(TheoremId::T2_22);
  t22.exponents.p = 2.0;
  t22.exponents.q = 2.0;
  EXPECT_NEAR(assemble_rhs(t22).value, 1.0, 1e-12);
}

TEST(Verify, HandEvaluatedReports) {
  const auto t21 = verify(unit_instance(TheoremId::T2_1));
  EXPECT_NEAR(t21.lhs, 0.25, 1e-12);
  EXPECT_NEAR(t21.constant, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(t21.rhs, 1.0, 1e-12);
  EXPECT_NEAR(t21.ratio, 0.75, 1e-12);
  EXPECT_EQ(t21.status, Status::holds);

  const auto t23 = verify(unit_instance(TheoremId::T2_3));
  EXPECT_NEAR(t23.ratio, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(t23.status, Status::holds);
}

TEST(Verify, ClassicalHardyNearExtremal) {
  TheoremInstance inst = unit_instance(TheoremId::HARDY);
  inst.f = FunctionSpec::power(1.0, -0.49);
  const auto rep = verify(inst);
  EXPECT_NEAR(rep.ratio, hardy_ratio_oracle(-0.49), 1e-8);
  EXPECT_EQ(rep.status, Status::holds);
}

TEST(Verify, ZeroFunction) {
  TheoremInstance inst = unit_instance(TheoremId::T2_1);
  inst.f = FunctionSpec::constant(0.0);
  const auto rep = verify(inst);
  EXPECT_EQ(rep.ratio, 0.0);
  EXPECT_EQ(rep.status, Status::holds);
}

TEST(Verify, StatusAgreesWithBudget) {
  for (TheoremId id : all_theorems()) {
    const auto sw = soundness_sweep(id, default_mode(id), SoundnessSettings{5, 3});
    for (const auto& r : sw.reports) {
      if (r.failed) continue;
      EXPECT_EQ(r.status, classify(r.ratio, r.budget)) << to_string(id);
      EXPECT_GE(r.ratio, 0.0);
    }
  }
}

TEST(Sweep, SingletonMatchesVerify) {
  const FunctionSpec one = FunctionSpec::constant(1.0);
  const auto fam = pwl_family(11);
  const auto sw = sweep(TheoremId::T2_1, fam, one, one, {}, 1, Mode::as_printed);
  TheoremInstance inst = unit_instance(TheoremId::T2_1);
  inst.f = sample_family(fam, 1).front();
  EXPECT_DOUBLE_EQ(sw.reports.front().ratio, verify(inst).ratio);
}

TEST(Sweep, T21UnitWeightsBounded) {
  const FunctionSpec one = FunctionSpec::constant(1.0);
  const auto sw = sweep(TheoremId::T2_1, pwl_family(2024), one, one, {}, 200, Mode::as_printed);
  EXPECT_LE(sw.max_ratio, 1.0 + 1e-6);
  EXPECT_TRUE(sw.violated.empty());
  EXPECT_EQ(sw.holds, 200);
}

TEST(Sweep, DeterministicAcrossRunsAndThreads) {
  setenv("HOPIAL_THREADS", "1", 1);
  const auto a = soundness_sweep(TheoremId::T2_9, Mode::as_printed, SoundnessSettings{40, 5});
  setenv("HOPIAL_THREADS", "4", 1);
  const auto b = soundness_sweep(TheoremId::T2_9, Mode::as_printed, SoundnessSettings{40, 5});
  unsetenv("HOPIAL_THREADS");
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    EXPECT_EQ(a.reports[i].ratio, b.reports[i].ratio);
    EXPECT_EQ(a.reports[i].status, b.reports[i].status);
  }
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.argmax, b.argmax);
}

TEST(Invariance, FScaling) {
  const auto fs = sample_family(pwl_family(77), 3);
  for (TheoremId id : all_theorems()) {
    const auto sw = soundness_sweep(id, default_mode(id), SoundnessSettings{1, 8});
    if (sw.reports.front().failed) continue;
    for (const auto& f : fs) {
      TheoremInstance inst = sw.reports.front().instance;
      inst.f = f;
      const double base = verify(inst).ratio;
      inst.f = scaled(f, 4.5);
      const double big = verify(inst).ratio;
      EXPECT_NEAR(big, base, 1e-9 * std::max(1.0, base)) << to_string(id);
    }
  }
}

TEST(Invariance, IntervalAffineForConstantWeights) {
  const auto fs = sample_family(pwl_family(19), 4);
  for (TheoremId id : {TheoremId::T2_3, TheoremId::T2_11}) {
    for (double L : {0.25, 3.0}) {
      for (const auto& f : fs) {
        TheoremInstance unit = unit_instance(id);
        unit.r = FunctionSpec::constant(2.0);
        unit.f = f;
        TheoremInstance wide = unit;
        wide.interval = Interval(0.0, L);
        auto knots = f.as<PiecewiseLinear>()->knots;
        for (auto& k : knots) k.first *= L;
        wide.f = FunctionSpec::piecewise_linear(knots);
        EXPECT_NEAR(verify(wide).ratio, verify(unit).ratio, 1e-9) << to_string(id) << " L=" << L;
      }
    }
  }
}

TEST(Holder, IntermediateBoundOfT21) {
  // r = c0 + c1 t^alpha has R(x) = c0 (1 - x) + c1 (1 - x^(alpha+1)) / (alpha + 1) in closed form,
  // and by Fubini the inner left side equals the integral of f R.
  const Interval iv(0.0, 1.0);
  const double c0 = 0.7, c1 = 0.4, alpha = 0.6;
  auto R = [&](double x) { return c0 * (1.0 - x) + c1 * (1.0 - std::pow(x, alpha + 1.0)) / (alpha + 1.0); };
  const FunctionSpec r = FunctionSpec::sum({FunctionSpec::constant(c0), FunctionSpec::power(c1, alpha)});
  const FunctionSpec s = FunctionSpec::sum({FunctionSpec::constant(1.2), FunctionSpec::power(0.3, 1.5)});
  auto s_of = [&](double x) { return 1.2 + 0.3 * std::pow(x, 1.5); };
  const auto sw = sweep(TheoremId::T2_1, pwl_family(2025), r, s, {}, 50, Mode::as_printed);
  const double r2s = integrate([&](double x) { return R(x) * R(x) / s_of(x); }, iv).value;
  EXPECT_NEAR(sw.reports.front().constant, r2s, 1e-10);
  for (const auto& rep : sw.reports) {
    const auto& f = rep.instance.f;
    std::vector<double> kinks;
    for (const auto& k : f.as<PiecewiseLinear>()->knots) kinks.push_back(k.first);
    auto kinked = [&](std::function<double(double)> fn) {
      Integrand in;
      in.fn = std::move(fn);
      in.breakpoints = kinks;
      return integrate(in, iv).value;
    };
    const double fR = kinked([&](double x) { return evaluate(f, x, iv) * R(x); });
    const double sf2 = kinked([&](double x) {
      const double v = evaluate(f, x, iv);
      return s_of(x) * v * v;
    });
    EXPECT_NEAR(std::sqrt(rep.lhs), fR, 1e-9);
    EXPECT_NEAR(rep.rhs, sf2, 1e-9);
    EXPECT_LE(fR, std::sqrt(r2s) * std::sqrt(sf2) * (1.0 + 1e-12));
  }
}

TEST(Sharpness, HardyPowerFamily) {
  const Interval iv(0.0, 1.0);
  const FunctionSpec one = FunctionSpec::constant(1.0);
  auto family = [](const std::vector<double>& x) { return FunctionSpec::power(1.0, x.at(0)); };
  const auto res = sharpness_search(TheoremId::HARDY, family, {-0.495}, {-0.05}, one, one, {}, iv,
                                    Mode::as_printed, 80);
  EXPECT_GE(res.best_ratio, 0.96);
  EXPECT_LE(res.best_ratio, 1.0);
  EXPECT_LT(res.best_params.at(0), -0.45);
  EXPECT_LE(res.evaluations, 80);

  double prev = 0.0;
  for (double a : {-0.1, -0.2, -0.3, -0.4, -0.49}) {
    TheoremInstance inst = unit_instance(TheoremId::HARDY);
    inst.f = FunctionSpec::power(1.0, a);
    const double ratio = verify(inst).ratio;
    EXPECT_NEAR(ratio, hardy_ratio_oracle(a), 1e-8) << a;
    EXPECT_GT(ratio, prev);
    prev = ratio;
  }
}

TEST(Sharpness, ParameterFreeFamilyEvaluatesOnce) {
  const FunctionSpec one = FunctionSpec::constant(1.0);
  auto family = [](const std::vector<double>&) { return FunctionSpec::constant(1.0); };
  const auto res = sharpness_search(TheoremId::T2_1, family, {}, {}, one, one, {}, Interval(0.0, 1.0),
                                    Mode::as_printed, 50);
  EXPECT_NEAR(res.best_ratio, 0.75, 1e-12);
  EXPECT_EQ(res.evaluations, 1);
  EXPECT_THROW(sharpness_search(TheoremId::T2_1, family, {}, {}, one, one, {}, Interval(0.0, 1.0),
                                Mode::as_printed, 49),
               DomainError);
}

TEST(Soundness, SelectedTheoremsHaveNoViolations) {
  for (TheoremId id : {TheoremId::T2_1, TheoremId::T2_3, TheoremId::T2_13, TheoremId::T2_22,
                       TheoremId::T2_27, TheoremId::T2_30, TheoremId::C2_1a}) {
    const auto sw = soundness_sweep(id, default_mode(id), SoundnessSettings{60, 2024});
    EXPECT_TRUE(sw.violated.empty()) << to_string(id);
    EXPECT_EQ(sw.failed, 0) << to_string(id) << ": " << sw.reports.front().reason;
  }
}

TEST(Preconditions, WrongArityRejected) {
  TheoremInstance inst = unit_instance(TheoremId::T2_22);
  inst.exponents.p = 2.0;
  inst.exponents.q = 1.0;
  EXPECT_THROW(verify(inst), Error);
}
