#pragma once

#include <Eigen/Dense>

#include "fmb/lqg_model.hpp"

namespace fmb {

struct DareOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
};

struct DareSolution {
  Eigen::MatrixXd P;
  double residual = 0.0;  // ||A'PA - P - A'PB(R+B'PB)^{-1}B'PA + Q||_F
  int iterations = 0;
};

/// Solves the discrete algebraic Riccati equation by fixed-point iteration
///   P <- A'PA - A'PB (R + B'PB)^{-1} B'PA + Q,   starting at P = Q.
/// Throws ConvergenceError (carrying the last residual) if the iteration does
/// not settle, and ConditioningError if R + B'PB stops being positive definite.
DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                        const DareOptions& options = {});

/// Frobenius norm of the DARE residual at P.
double dare_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                     const Eigen::MatrixXd& P);

struct LqrGain {
  Eigen::MatrixXd K;       // u = -K m
  Eigen::MatrixXd P_dare;
  double residual = 0.0;
  double closed_loop_spectral_radius = 0.0;  // of A - B K
};

/// Infinite-horizon discrete LQR gain K = (R + B'PB)^{-1} B'PA.
LqrGain lqr_gain(const LqgModel& model, const DareOptions& options = {});

/// A zero feedback gain for `model` (open loop, u = 0).
LqrGain zero_gain(const LqgModel& model);

double spectral_radius(const Eigen::MatrixXd& M);

}  // namespace fmb
