#include "fmb/random.hpp"

#include <cmath>
#include <numbers>

namespace fmb {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(mix64(root) ^ (index * kGoldenGamma + 0xD1B54A32D192ED03ULL));
}

RandomStream::RandomStream(std::uint64_t seed, Stream name)
    : key_(mix64(seed ^ mix64(static_cast<std::uint64_t>(name) * kGoldenGamma))) {}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double RandomStream::uniform() {
  // 53 random bits, shifted to the open interval by half an ulp step.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::standard_normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Eigen::VectorXd RandomStream::standard_normal(Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = standard_normal();
  return z;
}

Eigen::VectorXd RandomStream::gaussian(const Eigen::VectorXd& mean,
                                       const Eigen::MatrixXd& cov_sqrt) {
  return mean + cov_sqrt * standard_normal(mean.size());
}

}  // namespace fmb
