#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "fmb/control.hpp"
#include "fmb/filtering.hpp"
#include "fmb/gaussian.hpp"
#include "fmb/lqg_model.hpp"

namespace fmb {

/// One closed-loop run under u_t = -K m_t, with every configured
/// finite-memory belief evaluated passively on the same realized IO history.
///
/// states, observations and true_beliefs hold t = 0..T; inputs holds the
/// applied u_0..u_{T-1}. final_input is the policy's u_T, which is not applied
/// but enters the cost at t = T.
struct TrajectoryRecord {
  std::uint64_t seed = 0;
  long horizon = 0;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> observations;
  std::vector<Eigen::VectorXd> inputs;
  Eigen::VectorXd final_input;
  std::vector<GaussianBelief> true_beliefs;
  std::vector<long> memory_lengths;
  std::map<long, std::vector<GaussianBelief>> fm_beliefs;
  std::map<long, std::vector<GaussianBelief>> obs_only_beliefs;  // empty unless requested

  /// u_t for t in [0, T].
  const Eigen::VectorXd& policy_input(long t) const;

  /// The window a memory-H filter sees at time t: s = max(0, t - H).
  IoWindow window(long t, long memory) const;

  const std::vector<GaussianBelief>& fm(long memory) const;
  const std::vector<GaussianBelief>& obs_only(long memory) const;
};

struct RolloutOptions {
  bool obs_only = false;  // also evaluate the input-blind variant for each H
};

/// Samples x_0 ~ N(m_0, P_0), then for t = 0..T draws y_t, updates the exact
/// belief, applies u_t = -K m_t and steps the plant. Noise comes from three
/// named substreams of `seed`, so the record is a pure function of
/// (model, gain, memory_lengths, horizon, seed).
///
/// Throws DivergenceError if any state component exceeds 1e12 in magnitude.
TrajectoryRecord rollout(const LqgModel& model, const LqrGain& gain,
                         const std::vector<long>& memory_lengths, long horizon,
                         std::uint64_t seed, const RolloutOptions& options = {});

/// Writes one row per step: t, x_*, y_*, u_*, m_*, trP, then W2 to the true
/// belief for every memory length (columns w2_H<h>).
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);

}  // namespace fmb
