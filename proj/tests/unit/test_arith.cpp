#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "zlab/arith.hpp"
#include "zlab/errors.hpp"

using namespace zlab;

TEST(Divisors, SmallValues) {
  const DivisorTable d2 = divisor_sieve(2, 100);
  EXPECT_EQ(d2[1], 1u);
  EXPECT_EQ(d2[12], 6u);
  EXPECT_EQ(d2[97], 2u);
  EXPECT_EQ(d2[100], 9u);
  const DivisorTable d3 = divisor_sieve(3, 64);
  EXPECT_EQ(d3[8], 10u);   // C(3 + 2, 2)
  EXPECT_EQ(d3[12], 18u);  // 6 * 3
  const DivisorTable d1 = divisor_sieve(1, 10);
  for (std::uint64_t n = 1; n <= 10; ++n) EXPECT_EQ(d1[n], 1u);
}

TEST(Divisors, SieveMatchesBrute) {
  for (int k : {2, 3, 4}) {
    const DivisorTable t = divisor_sieve(k, 3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_EQ(t[n], divisor_brute(k, n)) << "k=" << k << " n=" << n;
  }
}

TEST(Divisors, PrimePowersAndMultiplicativity) {
  const DivisorTable d4 = divisor_sieve(4, 5000);
  // d_k(p^a) = C(a + k - 1, k - 1)
  EXPECT_EQ(d4[1024], 286u);  // C(13, 3)
  EXPECT_EQ(d4[3 * 1024], 286u * 4u);
  EXPECT_EQ(d4[7 * 11 * 13], 64u);
}

TEST(Divisors, DirichletConvolutionStep) {
  // d_3 = d_2 * 1.
  const DivisorTable d2 = divisor_sieve(2, 500);
  const DivisorTable d3 = divisor_sieve(3, 500);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) s += d2[d];
    }
    ASSERT_EQ(d3[n], s);
  }
}

TEST(Divisors, SummatoryGrowth) {
  // sum_{n <= x} d(n) = x log x + (2 gamma - 1) x + O(sqrt x)
  const DivisorTable d2 = divisor_sieve(2, 100000);
  std::uint64_t s = 0;
  for (std::uint64_t n = 1; n <= 100000; ++n) s += d2[n];
  const double x = 1e5;
  const double main = x * std::log(x) + (2 * 0.5772156649015329 - 1) * x;
  EXPECT_LT(std::abs(static_cast<double>(s) - main), 2.0 * std::sqrt(x));
}

TEST(Divisors, Errors) {
  EXPECT_THROW(divisor_sieve(0, 10), DomainError);
  EXPECT_THROW(divisor_sieve(9, 10), DomainError);
  EXPECT_THROW(divisor_sieve(2, 0), DomainError);
  EXPECT_THROW(divisor_sieve(2, 1000, 100), CapacityError);
  EXPECT_THROW(divisor_brute(5, 10), CapacityError);
  EXPECT_THROW(divisor_brute(2, 200000), CapacityError);
  const DivisorTable t = divisor_sieve(2, 10);
  EXPECT_THROW(t.at(11), CapacityError);
  EXPECT_EQ(t.at(10), 4u);
}

TEST(Divisors, BinaryRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "zlab_test_d3.bin").string();
  const DivisorTable t = divisor_sieve(3, 2000);
  save_divisor_table(t, path);
  const DivisorTable u = load_divisor_table(path);
  EXPECT_EQ(u.k, 3);
  EXPECT_EQ(u.limit, 2000u);
  EXPECT_EQ(u.counts, t.counts);
  EXPECT_EQ(std::filesystem::file_size(path), 16u + 8u * 2000u);
  std::remove(path.c_str());
  EXPECT_THROW(load_divisor_table(path), Error);
}
