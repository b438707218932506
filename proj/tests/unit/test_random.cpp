#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "fmb/random.hpp"

namespace fmb {
namespace {

TEST(Mix64, ReferenceSplitMix64Output) {
  // First three outputs of SplitMix64 seeded with 0.
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL * 2), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL * 3), 0x06C45D188009454FULL);
}

TEST(DeriveSeed, DistinctAcrossIndicesAndRoots) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t root = 0; root < 4; ++root) {
    for (std::uint64_t k = 0; k < 25000; ++k) seen.insert(derive_seed(root, k));
  }
  EXPECT_EQ(seen.size(), 100000u);
  EXPECT_EQ(derive_seed(1, 7), derive_seed(1, 7));
}

TEST(RandomStream, ReproducibleAndIndependentOfOtherStreams) {
  RandomStream a(42, Stream::kProcessNoise);
  RandomStream b(42, Stream::kProcessNoise);
  RandomStream other(42, Stream::kObservationNoise);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.next_u64();
    EXPECT_EQ(va, b.next_u64());
    // Consuming another stream never affects this one.
    other.next_u64();
  }
  EXPECT_EQ(a.counter(), 1000u);

  RandomStream c(42, Stream::kProcessNoise);
  RandomStream d(42, Stream::kObservationNoise);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += c.next_u64() == d.next_u64();
  EXPECT_EQ(equal, 0);
}

TEST(RandomStream, UniformOpenInterval) {
  RandomStream r(1, Stream::kInitialState);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  constexpr int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  // SE of the mean of U(0,1) is sqrt(1/12 / n).
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RandomStream, NormalMoments) {
  RandomStream r(2, Stream::kObservationNoise);
  constexpr int n = 1000000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.standard_normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(RandomStream, GaussianUsesSquareRoot) {
  RandomStream r(3, Stream::kProcessNoise);
  Eigen::Matrix2d S;
  S << 2.0, 0.5, 0.5, 1.0;
  const Eigen::Vector2d mean(1.0, -1.0);
  constexpr int n = 200000;
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d x = r.gaussian(mean, S);
    m += x;
    c += (x - mean) * (x - mean).transpose();
  }
  m /= n;
  c /= n;
  EXPECT_LT((m - mean).cwiseAbs().maxCoeff(), 0.02);
  EXPECT_LT((c - S * S).cwiseAbs().maxCoeff(), 0.05);
}

}  // namespace
}  // namespace fmb
