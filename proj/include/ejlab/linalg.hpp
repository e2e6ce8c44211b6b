#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ejlab {

/// Spectral norm via the largest eigenvalue of M^T M.  Deterministic and
/// accurate enough (~1e-14 relative) for residual measurement.
inline double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m,
                                                    Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

/// Smallest eigenvalue of a symmetric matrix (symmetrized defensively).
inline double min_eigenvalue_sym(const Eigen::MatrixXd& s) {
  Eigen::MatrixXd h = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Column-major flattening used by the Lie-span rank computation.
inline Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

inline Eigen::MatrixXd unvectorize(const Eigen::VectorXd& v, int rows,
                                   int cols) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

}  // namespace ejlab
