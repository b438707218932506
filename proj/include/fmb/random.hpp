#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace fmb {

/// Named substreams drawn from one rollout seed. Adding a new name never
/// perturbs the existing ones.
enum class Stream : std::uint64_t {
  kInitialState = 1,
  kProcessNoise = 2,
  kObservationNoise = 3,
};

/// SplitMix64 output function (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z);

/// Derives the seed of rollout `index` from a sweep's root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Counter-based generator: the k-th draw is mix64(key + k * golden_gamma),
/// so a stream is fully described by (key, counter) and has no hidden state.
/// Normals use the Box-Muller transform and are reproducible bit for bit on
/// any platform with an IEEE-conforming libm.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, Stream name);

  std::uint64_t next_u64();
  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform();
  double standard_normal();
  Eigen::VectorXd standard_normal(Eigen::Index n);

  /// Sample from N(mean, cov) using the symmetric square root of cov.
  Eigen::VectorXd gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov_sqrt);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

}  // namespace fmb
