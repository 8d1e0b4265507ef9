#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "gmc/mc_engine.hpp"
#include "gmc/rng.hpp"

using gmc::mc::PhiloxCounter;
using gmc::mc::RngStream;

// Published known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
  const PhiloxCounter expected{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8};
  EXPECT_EQ(gmc::mc::philox4x32_10({0, 0, 0, 0}, {0, 0}), expected);
}

TEST(Philox, KnownAnswerAllOnes) {
  const PhiloxCounter expected{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd};
  EXPECT_EQ(gmc::mc::philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                   {0xffffffff, 0xffffffff}),
            expected);
}

TEST(Philox, KnownAnswerPiDigits) {
  const PhiloxCounter expected{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1};
  EXPECT_EQ(gmc::mc::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                   {0xa4093822, 0x299f31d0}),
            expected);
}

TEST(RngStream, SameKeyReproduces) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
  RngStream c(42, 7), d(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(c.normal(), d.normal());
}

TEST(RngStream, DistinctKeysDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (std::uint64_t id = 0; id < 64; ++id) first.insert(RngStream(seed, id)());
  }
  EXPECT_EQ(first.size(), 4u * 64u);
}

TEST(RngStream, UniformOpenInterval) {
  RngStream s(1, 0);
  double sum = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RngStream, AdjacentStreamsUncorrelated) {
  constexpr int n = 100000;
  RngStream a(9, 100), b(9, 101);
  double sab = 0.0;
  for (int i = 0; i < n; ++i) sab += (a.uniform() - 0.5) * (b.uniform() - 0.5);
  const double corr = sab / n * 12.0;
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(RngStream, Lag1WithinStream) {
  constexpr int n = 100000;
  RngStream a(3, 0);
  double prev = a.uniform() - 0.5, s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cur = a.uniform() - 0.5;
    s += prev * cur;
    prev = cur;
  }
  EXPECT_LT(std::abs(s / n * 12.0), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(RngStream, VariateMoments) {
  constexpr int n = 200000;
  RngStream s(5, 1);
  std::vector<double> normal(n), expo(n), gam(n), beta(n);
  for (int i = 0; i < n; ++i) {
    normal[i] = s.normal();
    expo[i] = s.exponential();
    gam[i] = s.gamma_variate(0.3);
    beta[i] = s.beta_variate(1.25, 0.25);
  }
  const auto sn = gmc::mc::shape_moments(normal);
  EXPECT_NEAR(sn.mean, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sn.variance, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(gmc::mc::summarize(expo).mean, 1.0, 4.0 / std::sqrt(n));
  const auto sg = gmc::mc::summarize(gam);
  EXPECT_NEAR(sg.mean, 0.3, 4.0 * sg.std_error);
  const auto sb = gmc::mc::summarize(beta);
  EXPECT_NEAR(sb.mean, 1.25 / 1.5, 4.0 * sb.std_error);
  for (double x : beta) {
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
  }
}

TEST(RngStream, SubstreamIsIndependentOfParentPosition) {
  RngStream a(8, 3);
  const auto child1 = a.substream(17);
  for (int i = 0; i < 10; ++i) a();
  auto child2 = a.substream(17);
  auto c1 = child1;
  EXPECT_EQ(c1(), child2());
  EXPECT_NE(RngStream(8, 3).substream(17)(), RngStream(8, 3).substream(18)());
}

TEST(DeriveSeed, DistinctTags) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t tag = 0; tag < 1000; ++tag) seeds.insert(gmc::mc::derive_seed(1, tag));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(gmc::mc::derive_seed(5, 9), gmc::mc::derive_seed(5, 9));
}
