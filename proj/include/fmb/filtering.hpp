#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fmb/gaussian.hpp"
#include "fmb/lqg_model.hpp"

namespace fmb {

/// Truncated input/output history (y_s, ..., y_t; u_s, ..., u_{t-1}).
/// There is always exactly one more observation than inputs.
struct IoWindow {
  long start = 0;
  std::vector<Eigen::VectorXd> observations;
  std::vector<Eigen::VectorXd> inputs;

  /// Number of propagation steps, t - s.
  long length() const { return static_cast<long>(inputs.size()); }
  long end() const { return start + length(); }

  /// Throws ShapeError unless observations.size() == inputs.size() + 1.
  void validate() const;
};

/// Kalman measurement update of b with observation y, Joseph form.
GaussianBelief measurement_update(const LqgModel& model, const GaussianBelief& b,
                                  const Eigen::VectorXd& y);

/// Prediction through the dynamics: N(A m + B u, A P A' + Sigma_w).
GaussianBelief predict(const LqgModel& model, const GaussianBelief& b, const Eigen::VectorXd& u);

/// One step of the exact belief recursion b_{t+1} = Phi(b_t, u_t, y_{t+1}).
GaussianBelief kalman_step(const LqgModel& model, const GaussianBelief& b,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& y_next);

/// Boundary belief at a window's left edge: the fixed prior (m_0, P_0)
/// conditioned on the single observation y_s, without prediction.
GaussianBelief boundary_belief(const LqgModel& model, const Eigen::VectorXd& y_s);

/// Window-restart belief: boundary_belief(y_s), then kalman_step along
/// (u_s, y_{s+1}), ..., (u_{t-1}, y_t).
GaussianBelief finite_memory_belief(const LqgModel& model, const IoWindow& window);

/// Same as above on borrowed storage: observations y_s..y_t, inputs u_s..u_{t-1}.
GaussianBelief finite_memory_belief(const LqgModel& model,
                                    std::span<const Eigen::VectorXd> observations,
                                    std::span<const Eigen::VectorXd> inputs);

/// Same recursion as finite_memory_belief but blind to the inputs: every
/// propagation step uses u = 0.
GaussianBelief obs_only_belief(const LqgModel& model,
                               std::span<const Eigen::VectorXd> observations);

}  // namespace fmb
