#pragma once

#include <Eigen/Dense>

namespace fmb {

// Absolute tolerance on eigenvalues below which a symmetric matrix is
// rejected as not positive semidefinite. Eigenvalues in [-kPsdTolerance, 0)
// are clamped to zero.
inline constexpr double kPsdTolerance = 1e-9;

// Absolute tolerance on max |M - M^T| for a matrix to count as symmetric,
// scaled by max(1, max |M_ij|).
inline constexpr double kSymmetryTolerance = 1e-10;

/// Returns true if |M - M^T| is within kSymmetryTolerance (scaled).
bool is_symmetric(const Eigen::MatrixXd& M);

/// Symmetrizes M, verifies its eigenvalues are >= -kPsdTolerance and clamps
/// any negative ones to zero. Throws ShapeError for a non-square or
/// asymmetric matrix and NotPsdError for a clearly indefinite one.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& M);

/// Principal square root of a symmetric PSD matrix via symmetric
/// eigendecomposition, with negative-eigenvalue clamping.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& M);

/// Multivariate normal N(mean, cov). The covariance is symmetrized and
/// PSD-clamped on construction, so every live instance is a valid Gaussian.
class GaussianBelief {
 public:
  GaussianBelief(Eigen::VectorXd mean, const Eigen::MatrixXd& cov);

  /// Point mass at `mean`.
  static GaussianBelief dirac(const Eigen::VectorXd& mean);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  Eigen::Index dim() const { return mean_.size(); }

  /// E ||x||^2 = ||m||^2 + Tr(P).
  double second_moment() const;

  bool operator==(const GaussianBelief& other) const {
    return mean_ == other.mean_ && cov_ == other.cov_;
  }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Closed-form Wasserstein-2 distance between two Gaussians:
///   W2^2 = ||m1 - m2||^2 + Tr(P1 + P2 - 2 (P1^{1/2} P2 P1^{1/2})^{1/2}).
///
/// The trace (Bures) term is evaluated as ||S1 - S2 U||_F^2 where S_i = P_i^{1/2}
/// and U is the orthogonal polar factor of S2^T S1. That sum of squares equals
/// the trace expression exactly and does not lose precision when P1 ~ P2.
double w2_gaussian(const GaussianBelief& b1, const GaussianBelief& b2);

}  // namespace fmb
