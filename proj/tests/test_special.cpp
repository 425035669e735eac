#include <gtest/gtest.h>

#include <cmath>

#include "hopial/special.hpp"

using namespace hopial;

TEST(Gamma, KnownValues) {
  EXPECT_NEAR(hopial::gamma(1.0), 1.0, 1e-15);
  EXPECT_NEAR(hopial::gamma(5.0), 24.0, 24.0 * 1e-14);
  EXPECT_NEAR(hopial::gamma(0.5), std::sqrt(M_PI), 1e-14);
}

TEST(Gamma, Recurrence) {
  for (double x = 0.1; x <= 20.0; x += 0.37) {
    EXPECT_NEAR(hopial::gamma(x + 1.0), x * hopial::gamma(x), 1e-11 * std::abs(hopial::gamma(x + 1.0))) << x;
  }
}

TEST(Gamma, NonPositiveIsDomainError) {
  EXPECT_THROW(hopial::gamma(0.0), DomainError);
  EXPECT_THROW(hopial::gamma(-1.5), DomainError);
}

TEST(BoydSigma, HandValues) {
  EXPECT_NEAR(boyd_sigma({1.0, 1.0, 2.0}), 1.0, 1e-15);
  EXPECT_NEAR(boyd_sigma({2.0, 1.0, 2.0}), 1.0, 1e-15);
  EXPECT_NEAR(boyd_sigma({1.0, 0.0, 2.0}), std::sqrt(3.0), 1e-15);
}

TEST(BoydI, UnitWhenEtaIsOne) { EXPECT_NEAR(boyd_I({1.0, 1.0, 2.0}).value, 1.0, 1e-12); }

TEST(BoydI, EtaZeroAgainstBetaFunction) {
  // eta = 0: integrand t^(1/nu - 1) (1 - t)^(1 - gamma), gamma = (nu + s nu) / (s nu)
  for (double nu : {1.0, 1.5, 3.0}) {
    for (double s : {2.0, 3.0}) {
      const double gam = (nu + s * nu) / (s * nu);
      const double oracle = std::beta(1.0 / nu, 2.0 - gam);
      EXPECT_NEAR(boyd_I({nu, 0.0, s}).value, oracle, 1e-9 * oracle) << nu << " " << s;
    }
  }
}

TEST(BoydI, TwoResolutionAgreement) {
  for (double nu : {1.0, 2.0, 3.5}) {
    for (double eta : {0.5, 1.0, 1.5}) {
      for (double s : {2.0, 3.0}) {
        const auto coarse = boyd_I({nu, eta, s}, 1e-10);
        const auto fine = boyd_I({nu, eta, s}, 1e-12);
        EXPECT_NEAR(coarse.value, fine.value, std::max(1e-8 * fine.value, coarse.abs_error_estimate));
      }
    }
  }
}

TEST(BoydN, OverlapWithB1) {
  EXPECT_NEAR(boyd_N({1.0, 1.0, 2.0}).value, 0.5, 1e-10);
  EXPECT_NEAR(boyd_L(1.0, 1.0), 0.5, 1e-12);
}

TEST(BoydN, Positive) {
  for (double nu : {0.5, 1.0, 2.0}) {
    for (double eta : {0.0, 0.5, 1.0, 1.9}) {
      EXPECT_GT(boyd_N({nu, eta, 2.0}).value, 0.0);
    }
  }
}

TEST(BoydL, HandValues) {
  EXPECT_NEAR(boyd_L(2.0, 1.0), 1.0 / 6.0, 1e-12);
  // the two forms differ only in the prefactor power: nu^nu against nu^eta
  EXPECT_NEAR(boyd_L_limit(2.0, 1.0), 1.0 / 3.0, 1e-12);
  for (double nu : {1.5, 3.0, 4.0}) {
    for (double eta : {1.0, 2.0}) {
      EXPECT_NEAR(boyd_L_limit(nu, eta), boyd_L(nu, eta) * std::pow(nu, nu - eta), 1e-12 * boyd_L_limit(nu, eta));
    }
  }
}

TEST(BoydL, LimitMatchesBoydNAsEtaApproachesS) {
  const double nu = 4.0, s = 2.0;
  const double n = boyd_N({nu, s - 1e-6, s}, 1e-13).value;
  EXPECT_NEAR(n, boyd_L_limit(nu, s), 1e-4);
}

TEST(BoydLq, ModesDiffer) {
  EXPECT_NE(boyd_Lq(2.0, 2.0, Mode::as_printed), boyd_Lq(2.0, 2.0, Mode::as_derived));
  EXPECT_GT(boyd_Lq(2.0, 2.0), 0.0);
}
