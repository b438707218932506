#include "fmb/lqg_model.hpp"

#include <string>

#include "fmb/errors.hpp"

namespace fmb {

namespace {

void require_shape(const Eigen::MatrixXd& M, Eigen::Index rows, Eigen::Index cols,
                   const char* name) {
  if (M.rows() != rows || M.cols() != cols) {
    throw ShapeError(std::string("LqgModel: ") + name + " is " + std::to_string(M.rows()) +
                     "x" + std::to_string(M.cols()) + ", expected " + std::to_string(rows) +
                     "x" + std::to_string(cols));
  }
}

void require_psd(const Eigen::MatrixXd& M, const char* name) {
  try {
    project_psd(M);
  } catch (const std::exception& e) {
    throw NotPsdError(std::string("LqgModel: ") + name + " must be symmetric PSD (" +
                      e.what() + ")");
  }
}

void require_pd(const Eigen::MatrixXd& M, const char* name) {
  require_psd(M, name);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (M.size() > 0 && es.eigenvalues().minCoeff() <= 0.0) {
    throw NotPsdError(std::string("LqgModel: ") + name + " must be positive definite");
  }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& M) { return 0.5 * (M + M.transpose()); }

}  // namespace

void LqgModel::validate() const {
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();
  const Eigen::Index p = C.rows();
  if (n == 0) throw ShapeError("LqgModel: empty state");
  require_shape(A, n, n, "A");
  require_shape(B, n, m, "B");
  require_shape(C, p, n, "C");
  require_shape(process_noise, n, n, "process_noise");
  require_shape(observation_noise, p, p, "observation_noise");
  require_shape(Q, n, n, "Q");
  require_shape(R, m, m, "R");
  require_shape(prior_cov, n, n, "prior_cov");
  if (prior_mean.size() != n) {
    throw ShapeError("LqgModel: prior_mean has dimension " + std::to_string(prior_mean.size()) +
                     ", expected " + std::to_string(n));
  }
  require_psd(process_noise, "process_noise");
  require_psd(prior_cov, "prior_cov");
  require_psd(Q, "Q");
  require_pd(observation_noise, "observation_noise");
  require_pd(R, "R");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("LqgModel: gamma must lie in (0, 1), got " + std::to_string(gamma));
  }
}

LqgModel make_model(LqgModel model) {
  model.validate();
  model.process_noise = symmetrized(model.process_noise);
  model.observation_noise = symmetrized(model.observation_noise);
  model.Q = symmetrized(model.Q);
  model.R = symmetrized(model.R);
  model.prior_cov = symmetrized(model.prior_cov);
  return model;
}

LqgModel double_integrator(double dt, const Eigen::Matrix2d& sigma_w,
                           const Eigen::Matrix<double, 1, 1>& sigma_v, const Eigen::Matrix2d& q,
                           const Eigen::Matrix<double, 1, 1>& r, const GaussianBelief& prior,
                           double gamma) {
  if (!(dt > 0.0)) {
    throw DomainError("double_integrator: dt must be positive, got " + std::to_string(dt));
  }
  if (prior.dim() != 2) throw ShapeError("double_integrator: prior must be 2-dimensional");

  LqgModel model;
  model.A.resize(2, 2);
  model.A << 1.0, dt, 0.0, 1.0;
  model.B.resize(2, 1);
  model.B << 0.5 * dt * dt, dt;
  model.C.resize(1, 2);
  model.C << 1.0, 0.0;
  model.process_noise = sigma_w;
  model.observation_noise = sigma_v;
  model.Q = q;
  model.R = r;
  model.prior_mean = prior.mean();
  model.prior_cov = prior.cov();
  model.gamma = gamma;
  return make_model(std::move(model));
}

LqgModel default_double_integrator() {
  Eigen::Vector2d m0(10.0, 0.0);
  return double_integrator(0.1, 1e-3 * Eigen::Matrix2d::Identity(),
                           Eigen::Matrix<double, 1, 1>::Constant(0.1), Eigen::Matrix2d::Identity(),
                           Eigen::Matrix<double, 1, 1>::Constant(0.1),
                           GaussianBelief(m0, Eigen::Matrix2d::Identity()), 0.99);
}

double stage_cost(const LqgModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  if (x.size() != model.state_dim() || u.size() != model.input_dim()) {
    throw ShapeError("stage_cost: state/input dimension mismatch");
  }
  return x.dot(model.Q * x) + u.dot(model.R * u);
}

double belief_stage_cost(const LqgModel& model, const GaussianBelief& b,
                         const Eigen::VectorXd& u) {
  if (b.dim() != model.state_dim()) {
    throw ShapeError("belief_stage_cost: belief dimension mismatch");
  }
  return stage_cost(model, b.mean(), u) + (model.Q * b.cov()).trace();
}

}  // namespace fmb
