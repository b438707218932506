#include "fmb/control.hpp"

#include <algorithm>
#include <string>

#include "fmb/errors.hpp"

namespace fmb {

namespace {

Eigen::LLT<Eigen::MatrixXd> factor_pd(const Eigen::MatrixXd& M) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("solve_dare: R + B'PB is not positive definite");
  }
  return llt;
}

Eigen::MatrixXd riccati_map(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                            const Eigen::MatrixXd& P) {
  const Eigen::MatrixXd BtP = B.transpose() * P;
  const Eigen::MatrixXd BtPA = BtP * A;
  const auto llt = factor_pd(R + BtP * B);
  Eigen::MatrixXd next = A.transpose() * P * A - BtPA.transpose() * llt.solve(BtPA) + Q;
  return 0.5 * (next + next.transpose());
}

}  // namespace

double dare_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                     const Eigen::MatrixXd& P) {
  return (riccati_map(A, B, Q, R, P) - P).norm();
}

DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                        const DareOptions& options) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != B.cols() || R.cols() != B.cols()) {
    throw ShapeError("solve_dare: inconsistent A, B, Q, R dimensions");
  }

  Eigen::MatrixXd P = 0.5 * (Q + Q.transpose());
  double change = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd next = riccati_map(A, B, Q, R, P);
    if (!next.allFinite()) {
      throw ConvergenceError("solve_dare: iterate became non-finite at iteration " +
                                 std::to_string(it),
                             change);
    }
    change = (next - P).norm();
    const double scale = std::max(1.0, P.norm());
    P = std::move(next);
    if (change < options.tolerance * scale) {
      return DareSolution{P, dare_residual(A, B, Q, R, P), it};
    }
  }
  throw ConvergenceError("solve_dare: no convergence after " +
                             std::to_string(options.max_iterations) + " iterations",
                         dare_residual(A, B, Q, R, P));
}

double spectral_radius(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

LqrGain lqr_gain(const LqgModel& model, const DareOptions& options) {
  const DareSolution dare = solve_dare(model.A, model.B, model.Q, model.R, options);
  const Eigen::MatrixXd BtP = model.B.transpose() * dare.P;
  const auto llt = factor_pd(model.R + BtP * model.B);
  LqrGain gain;
  gain.K = llt.solve(BtP * model.A);
  gain.P_dare = dare.P;
  gain.residual = dare.residual;
  gain.closed_loop_spectral_radius = spectral_radius(model.A - model.B * gain.K);
  return gain;
}

LqrGain zero_gain(const LqgModel& model) {
  LqrGain gain;
  gain.K = Eigen::MatrixXd::Zero(model.input_dim(), model.state_dim());
  gain.P_dare = Eigen::MatrixXd::Zero(model.state_dim(), model.state_dim());
  gain.closed_loop_spectral_radius = spectral_radius(model.A);
  return gain;
}

}  // namespace fmb
