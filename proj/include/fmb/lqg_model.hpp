#pragma once

#include <Eigen/Dense>

#include "fmb/gaussian.hpp"

namespace fmb {

/// Discrete-time linear-Gaussian POMDP with quadratic cost:
///
///   x_{t+1} = A x_t + B u_t + w_t,   w_t ~ N(0, process_noise)
///   y_t     = C x_t + v_t,           v_t ~ N(0, observation_noise)
///   c(x, u) = x^T Q x + u^T R u,     x_0 ~ N(prior_mean, prior_cov)
///
/// Built through make_model() or double_integrator(); both validate.
struct LqgModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd process_noise;
  Eigen::MatrixXd observation_noise;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
  Eigen::VectorXd prior_mean;
  Eigen::MatrixXd prior_cov;
  double gamma = 0.99;

  Eigen::Index state_dim() const { return A.rows(); }
  Eigen::Index input_dim() const { return B.cols(); }
  Eigen::Index obs_dim() const { return C.rows(); }

  GaussianBelief prior() const { return GaussianBelief(prior_mean, prior_cov); }

  /// Throws ShapeError / NotPsdError / DomainError if any invariant fails.
  void validate() const;
};

/// Validates and returns the model. Symmetric inputs are symmetrized.
LqgModel make_model(LqgModel model);

/// Position/velocity double integrator with only the position observed.
LqgModel double_integrator(double dt, const Eigen::Matrix2d& sigma_w,
                           const Eigen::Matrix<double, 1, 1>& sigma_v, const Eigen::Matrix2d& q,
                           const Eigen::Matrix<double, 1, 1>& r, const GaussianBelief& prior,
                           double gamma = 0.99);

/// Default experiment constants, see README.
LqgModel default_double_integrator();

double stage_cost(const LqgModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u);

/// E_{x~b}[c(x, u)] = m^T Q m + Tr(Q P) + u^T R u.
double belief_stage_cost(const LqgModel& model, const GaussianBelief& b,
                         const Eigen::VectorXd& u);

}  // namespace fmb
