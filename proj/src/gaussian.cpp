#include "fmb/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmb/errors.hpp"

namespace fmb {

namespace {

void require_square(const Eigen::MatrixXd& M, const char* what) {
  if (M.rows() != M.cols()) {
    throw ShapeError(std::string(what) + ": matrix is " +
                     std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                     ", expected square");
  }
}

void require_symmetric(const Eigen::MatrixXd& M, const char* what) {
  require_square(M, what);
  if (!is_symmetric(M)) {
    throw ShapeError(std::string(what) + ": matrix is not symmetric");
  }
}

}  // namespace

bool is_symmetric(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) return false;
  if (M.size() == 0) return true;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  return (M - M.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& M) {
  require_symmetric(M, "project_psd");
  Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  if (sym.size() == 0) return sym;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> values(sym, Eigen::EigenvaluesOnly);
  const double min_eig = values.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    throw NotPsdError("project_psd: smallest eigenvalue " + std::to_string(min_eig) +
                      " below -" + std::to_string(kPsdTolerance));
  }
  if (min_eig >= 0.0) return sym;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& M) {
  require_symmetric(M, "sqrt_psd");
  const Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  if (sym.size() == 0) return sym;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& eig = es.eigenvalues();
  if (eig.minCoeff() < -kPsdTolerance) {
    throw NotPsdError("sqrt_psd: smallest eigenvalue " + std::to_string(eig.minCoeff()) +
                      " below -" + std::to_string(kPsdTolerance));
  }
  const Eigen::VectorXd root = eig.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd S = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (S + S.transpose());
}

GaussianBelief::GaussianBelief(Eigen::VectorXd mean, const Eigen::MatrixXd& cov)
    : mean_(std::move(mean)) {
  if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
    throw ShapeError("GaussianBelief: mean has dimension " + std::to_string(mean_.size()) +
                     " but covariance is " + std::to_string(cov.rows()) + "x" +
                     std::to_string(cov.cols()));
  }
  cov_ = project_psd(cov);
}

GaussianBelief GaussianBelief::dirac(const Eigen::VectorXd& mean) {
  return GaussianBelief(mean, Eigen::MatrixXd::Zero(mean.size(), mean.size()));
}

double GaussianBelief::second_moment() const { return mean_.squaredNorm() + cov_.trace(); }

double w2_gaussian(const GaussianBelief& b1, const GaussianBelief& b2) {
  if (b1.dim() != b2.dim()) {
    throw ShapeError("w2_gaussian: dimensions " + std::to_string(b1.dim()) + " and " +
                     std::to_string(b2.dim()) + " differ");
  }
  const double mean_term = (b1.mean() - b2.mean()).squaredNorm();

  double bures = 0.0;
  if (b1.cov() != b2.cov()) {
    const Eigen::MatrixXd S1 = sqrt_psd(b1.cov());
    const Eigen::MatrixXd S2 = sqrt_psd(b2.cov());
    // min over orthogonal U of ||S1 - S2 U||_F^2 is attained at the polar
    // factor of S2^T S1 and equals Tr(P1) + Tr(P2) - 2 ||S2^T S1||_*.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S2.transpose() * S1,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd U = svd.matrixU() * svd.matrixV().transpose();
    bures = (S1 - S2 * U).squaredNorm();
  }

  const double w2_sq = mean_term + bures;
  return std::sqrt(std::max(w2_sq, 0.0));
}

}  // namespace fmb
