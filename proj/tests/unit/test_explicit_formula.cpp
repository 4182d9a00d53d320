#include <gtest/gtest.h>

#include <cmath>

#include "zlab/arith.hpp"
#include "zlab/errors.hpp"
#include "zlab/explicit_formula.hpp"
#include "zlab/moments.hpp"
#include "zlab/special.hpp"

using namespace zlab;

TEST(Tau, AsymptoticAgainstDigamma) {
  // exp(-2 Re chi'/chi) from mpmath digamma.
  EXPECT_NEAR(tau_from_chi(2, 20.0), 10.130006801578815, 1e-12);
  EXPECT_NEAR(tau_from_chi(2, 200.0), 1013.2097255583489, 1e-9);
  EXPECT_NEAR(tau(2, 20.0) / 10.130006801578815, 1.0, 2e-7);
  EXPECT_NEAR(tau(2, 2000.0) / 101321.18153147971, 1.0, 1e-14);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(tau(k, 500.0) / tau_from_chi(k, 500.0), 1.0, 1e-11);
  EXPECT_THROW(tau(1, 0.0), DomainError);
}

TEST(Phase, DerivativesAndSaddle) {
  const double h = 1e-4;
  for (int k : {1, 2, 3, 4}) {
    for (std::int64_t n : {1, 3, 17}) {
      const double t = 300.0;
      const PhaseData p = phase(k, n, t);
      const double fd1 = (phase(k, n, t + h).F - phase(k, n, t - h).F) / (2 * h);
      const double fd2 = (phase(k, n, t + h).F1 - phase(k, n, t - h).F1) / (2 * h);
      EXPECT_NEAR(p.F1, fd1, 1e-6);
      EXPECT_NEAR(p.F2, fd2, 1e-8);
      EXPECT_NEAR(phase(k, n, saddle_point(k, n)).F1, 0.0, 1e-13);
    }
  }
  EXPECT_THROW(phase(2, 0, 10.0), DomainError);
  EXPECT_THROW(phase(2, 1, -1.0), DomainError);
}

TEST(Phase, SaddleTermModulus) {
  const Complex s = saddle_term(2, 9);
  EXPECT_NEAR(std::abs(s), kPi * std::sqrt(9.0), 1e-12);
  // k = 2: exp(-2 pi i n) = 1.
  EXPECT_NEAR(s.imag(), 0.0, 1e-9);
}

TEST(CosCycles, ReducesLargeArguments) {
  EXPECT_DOUBLE_EQ(cos_cycles(0.25 + 1e9), cos_cycles(0.25));
  EXPECT_NEAR(cos_cycles(0.5), -1.0, 1e-16);
  EXPECT_NEAR(cos_cycles(-1.0 / 3.0), -0.5, 1e-15);
}

TEST(Rho, PartitionOfUnity) {
  EXPECT_EQ(smoothing_rho(0.3), 1.0);
  EXPECT_EQ(smoothing_rho(2.5), 0.0);
  for (double x = 0.4; x < 2.2; x += 0.05) {
    EXPECT_NEAR(smoothing_rho(x) + smoothing_rho(1.0 / x), 1.0, 1e-14) << x;
    EXPECT_GE(smoothing_rho(x), smoothing_rho(x + 0.01) - 1e-15);
  }
}

TEST(MainTerm, IndexRange) {
  const DivisorTable d2 = divisor_sieve(2, 400);
  const CosineSumResult r = moment_main_term(2, 1000.0, d2);
  EXPECT_EQ(r.n_lo, static_cast<std::int64_t>(std::ceil(1000.0 / kTwoPi)));
  EXPECT_EQ(r.n_hi, static_cast<std::int64_t>(std::floor(1000.0 / kPi)));
  EXPECT_EQ(r.terms, r.n_hi - r.n_lo + 1);
  EXPECT_EQ(main_term_upper(2, 1000.0), r.n_hi);
  EXPECT_EQ(cubic_upper(500.0), static_cast<std::int64_t>(std::floor(std::pow(500.0 / kTwoPi, 1.5))));
  EXPECT_THROW(moment_main_term(2, 1e4, d2), CapacityError);
  EXPECT_THROW(moment_main_term(3, 100.0, d2), DomainError);
}

TEST(MainTerm, TracksSecondMomentIncrement) {
  const double T = 500.0;
  auto t = primitive_table(2, 2 * T);
  const DivisorTable d2 = divisor_sieve(2, static_cast<std::uint64_t>(main_term_upper(2, T)));
  const double lhs = t->value(2 * T) - t->value(T);
  const double residual = lhs - moment_main_term(2, T, d2).value;
  EXPECT_LT(std::abs(residual), 5.0 * std::pow(T, 0.55));
}

TEST(MainTerm, SignMutationBreaksResidual) {
  // Replacing the cosine sum by its negative must push the residual far past
  // the bound the correct formula satisfies.
  const double T = 500.0;
  auto t = primitive_table(2, 2 * T);
  const DivisorTable d2 = divisor_sieve(2, static_cast<std::uint64_t>(main_term_upper(2, T)));
  const double lhs = t->value(2 * T) - t->value(T);
  const double rhs = moment_main_term(2, T, d2).value;
  const double bound = 5.0 * std::pow(T, 0.55);
  EXPECT_LT(std::abs(lhs - rhs), bound);
  EXPECT_GT(std::abs(lhs + rhs), 10.0 * bound);
}

TEST(Cubic, ApproxTracksPrimitive) {
  auto t = primitive_table(3, 1000.0);
  const DivisorTable d3 = divisor_sieve(3, static_cast<std::uint64_t>(cubic_upper(1000.0)));
  for (double x : {300.0, 700.0, 1000.0}) {
    EXPECT_LT(std::abs(t->value(x) - cubic_primitive_approx(x, d3)), 4.0 * std::pow(x, 0.8)) << x;
  }
  const DivisorTable d2 = divisor_sieve(2, 10);
  EXPECT_THROW(cubic_primitive_approx(100.0, d2), DomainError);
}

TEST(Examples, TauPhaseSaddle) {
  // The leading factor is exactly 1 here; the first correction moves it by 2.1e-3.
  EXPECT_NEAR(tau(2, kTwoPi), 1.0 - 2.0 / (24.0 * kTwoPi * kTwoPi), 1e-15);
  EXPECT_NEAR(tau(3, 100.0) / std::pow(100.0 / kTwoPi, 3), 1.0, 1e-3);
  EXPECT_NEAR(tau(1, 400.0) / tau(1, 200.0), 2.0, 2e-4);
  EXPECT_NEAR(phase(2, 1, kTwoPi).F, -kTwoPi - kPi / 4.0, 1e-12);
  EXPECT_NEAR(saddle_point(2, 5), 10.0 * kPi, 1e-12);
  EXPECT_NEAR(saddle_point(3, 8), 8.0 * kPi, 1e-12);
  const Complex s1 = saddle_term(2, 1);
  EXPECT_NEAR(s1.real(), kPi, 1e-12);
  EXPECT_NEAR(s1.imag(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(saddle_term(2, 4)), kTwoPi, 1e-12);
}
