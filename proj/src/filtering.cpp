#include "fmb/filtering.hpp"

#include <string>

#include "fmb/errors.hpp"

namespace fmb {

void IoWindow::validate() const {
  if (observations.size() != inputs.size() + 1) {
    throw ShapeError("IoWindow: " + std::to_string(observations.size()) +
                     " observations for " + std::to_string(inputs.size()) +
                     " inputs; expected exactly one more observation than inputs");
  }
}

GaussianBelief measurement_update(const LqgModel& model, const GaussianBelief& b,
                                  const Eigen::VectorXd& y) {
  const Eigen::MatrixXd& C = model.C;
  if (y.size() != model.obs_dim() || b.dim() != model.state_dim()) {
    throw ShapeError("measurement_update: observation/belief dimension mismatch");
  }
  const Eigen::MatrixXd& P = b.cov();
  const Eigen::MatrixXd CP = C * P;
  const Eigen::MatrixXd S = CP * C.transpose() + model.observation_noise;
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("measurement_update: innovation covariance is singular");
  }
  // S is symmetric, so (S^{-1} C P)^T = P C^T S^{-1}.
  const Eigen::MatrixXd gain = llt.solve(CP).transpose();

  Eigen::VectorXd mean = b.mean() + gain * (y - C * b.mean());
  const Eigen::MatrixXd I_KC =
      Eigen::MatrixXd::Identity(model.state_dim(), model.state_dim()) - gain * C;
  Eigen::MatrixXd cov = I_KC * P * I_KC.transpose() +
                        gain * model.observation_noise * gain.transpose();
  return GaussianBelief(std::move(mean), 0.5 * (cov + cov.transpose()));
}

GaussianBelief predict(const LqgModel& model, const GaussianBelief& b, const Eigen::VectorXd& u) {
  if (u.size() != model.input_dim() || b.dim() != model.state_dim()) {
    throw ShapeError("predict: input/belief dimension mismatch");
  }
  Eigen::VectorXd mean = model.A * b.mean() + model.B * u;
  Eigen::MatrixXd cov = model.A * b.cov() * model.A.transpose() + model.process_noise;
  return GaussianBelief(std::move(mean), 0.5 * (cov + cov.transpose()));
}

GaussianBelief kalman_step(const LqgModel& model, const GaussianBelief& b,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& y_next) {
  return measurement_update(model, predict(model, b, u), y_next);
}

GaussianBelief boundary_belief(const LqgModel& model, const Eigen::VectorXd& y_s) {
  return measurement_update(model, model.prior(), y_s);
}

GaussianBelief finite_memory_belief(const LqgModel& model, const IoWindow& window) {
  window.validate();
  return finite_memory_belief(model, window.observations, window.inputs);
}

GaussianBelief finite_memory_belief(const LqgModel& model,
                                    std::span<const Eigen::VectorXd> observations,
                                    std::span<const Eigen::VectorXd> inputs) {
  if (observations.size() != inputs.size() + 1) {
    throw ShapeError("finite_memory_belief: window needs exactly one more observation than inputs");
  }
  GaussianBelief belief = boundary_belief(model, observations.front());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    belief = kalman_step(model, belief, inputs[k], observations[k + 1]);
  }
  return belief;
}

GaussianBelief obs_only_belief(const LqgModel& model,
                               std::span<const Eigen::VectorXd> observations) {
  if (observations.empty()) throw ShapeError("obs_only_belief: empty observation list");
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(model.input_dim());
  GaussianBelief belief = boundary_belief(model, observations.front());
  for (std::size_t k = 1; k < observations.size(); ++k) {
    belief = kalman_step(model, belief, zero, observations[k]);
  }
  return belief;
}

}  // namespace fmb
