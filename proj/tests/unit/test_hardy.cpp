#include <gtest/gtest.h>

#include <cmath>

#include "zlab/errors.hpp"
#include "zlab/hardy.hpp"
#include "zlab/special.hpp"

using namespace zlab;

namespace {

// mpmath siegelz at 30 digits.
constexpr double kZ10 = -1.5491945461810224;
constexpr double kZ20 = 1.1478424121851973;
constexpr double kZ50 = -0.340735005955025;
constexpr double kZ100 = 2.6926970566644637;
constexpr double kZ500 = 1.4724478510550854;
constexpr double kZ1000 = 0.9977946375215866;
constexpr double kZ2000_5 = -0.14192565964075328;
constexpr double kZ3 = -0.5385471385417072;
constexpr double kFirstZero = 14.134725141734693;

}  // namespace

TEST(ZOracle, Reference) {
  EXPECT_NEAR(z_oracle(0.0), -1.4603545088095868, 1e-12);
  EXPECT_NEAR(z_oracle(3.0), kZ3, 1e-12);
  EXPECT_NEAR(z_oracle(10.0), kZ10, 1e-11);
  EXPECT_NEAR(z_oracle(100.0), kZ100, 1e-11);
  EXPECT_NEAR(z_oracle(2000.5), kZ2000_5, 1e-10);
}

TEST(ZOracle, EvenAndModulus) {
  for (double t : {1.0, 10.0, 77.7, 600.0}) {
    EXPECT_NEAR(z_oracle(-t), z_oracle(t), 1e-11);
    EXPECT_NEAR(std::abs(z_oracle(t)), std::abs(zeta_em({0.5, t}).value), 1e-9);
  }
  const ZSample s = z_oracle_sample(50.0);
  EXPECT_EQ(s.main_terms, 0);
  EXPECT_LT(s.err_est, 1e-8);
}

TEST(ZOracle, NoSignChangeBeforeFirstZero) {
  for (double t = 0.0; t < 14.0; t += 0.05) EXPECT_LT(z_oracle(t), 0.0) << t;
}

TEST(ZRs, MatchesReferenceValues) {
  EXPECT_NEAR(z_rs(20.0).value, kZ20, 5e-5);
  EXPECT_NEAR(z_rs(50.0).value, kZ50, 5e-6);
  EXPECT_NEAR(z_rs(100.0).value, kZ100, 1e-7);
  EXPECT_NEAR(z_rs(500.0).value, kZ500, 1e-8);
  EXPECT_NEAR(z_rs(1000.0).value, kZ1000, 1e-8);
}

TEST(ZRs, FirstZero) { EXPECT_NEAR(z_rs(kFirstZero).value, 0.0, 1e-3); }

TEST(ZRs, CorrectionsAgainstOracle) {
  EXPECT_NEAR(z_rs(100.0, 2).value, z_oracle(100.0), 5e-4);
  const double ref = z_oracle(1000.0);
  const double e0 = std::abs(z_rs(1000.0, 0).value - ref);
  const double e2 = std::abs(z_rs(1000.0, 2).value - ref);
  EXPECT_GE(e0, 10.0 * e2);
}

TEST(ZRs, ErrorModelCoversOracleGap) {
  for (double t : {60.0, 123.4, 777.0, 2500.0}) {
    for (int j = 0; j <= 3; ++j) {
      const ZSample s = z_rs(t, j);
      EXPECT_LE(std::abs(s.value - z_oracle(t)), s.err_est) << "t = " << t << " j = " << j;
      EXPECT_DOUBLE_EQ(s.err_est, kRsErrorConstants[j] * std::pow(t, -(2.0 * j + 3.0) / 4.0));
    }
  }
}

TEST(ZRs, MainTermCount) {
  EXPECT_EQ(z_rs(100.0).main_terms, 3);
  EXPECT_EQ(z_rs(kTwoPi * 16.0 + 1e-6).main_terms, 4);
  EXPECT_EQ(z_rs(1000.0, 1).corrections, 1);
}

TEST(ZRs, Domain) {
  EXPECT_THROW(z_rs(9.99), DomainError);
  EXPECT_THROW(z_rs(100.0, 5), DomainError);
  EXPECT_THROW(z_rs(100.0, -1), DomainError);
}

TEST(ZRs, SignChangesTrackOracle) {
  // Sign changes on [10, 200] sit within 1e-2 of the oracle's.
  double prev_rs = z_rs(10.0).value;
  double prev_or = z_oracle(10.0);
  const double h = 0.01;
  std::vector<double> a, b;
  for (double t = 10.0 + h; t <= 200.0; t += h) {
    const double r = z_rs(t).value;
    const double o = z_oracle(t);
    if ((r > 0) != (prev_rs > 0)) a.push_back(t);
    if ((o > 0) != (prev_or > 0)) b.push_back(t);
    prev_rs = r;
    prev_or = o;
  }
  ASSERT_EQ(a.size(), b.size());
  ASSERT_GE(a.size(), 70u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), 1e-2 + 1e-9);
}

TEST(ZValue, SwitchesAtCutoff) {
  EXPECT_DOUBLE_EQ(z_value(9.5), z_oracle(9.5));
  EXPECT_DOUBLE_EQ(z_value(10.5), z_rs(10.5, 3).value);
}
