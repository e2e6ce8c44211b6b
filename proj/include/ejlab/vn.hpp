#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "ejlab/expm.hpp"
#include "ejlab/model.hpp"

namespace ejlab {

using ComplexMatrix = Eigen::MatrixXcd;

/// Coordinate vector -> hermitian matrix, for built real/complex models.
/// This is the bridge to the closed matrix forms; quaternion and octonion
/// entries have no complex n x n representation, so they are rejected.
inline ComplexMatrix to_matrix(const AlgebraModel& m,
                               const Eigen::VectorXd& coords) {
  if (m.kind != Kind::real && m.kind != Kind::complex)
    throw ConfigError("matrix bridge supports real and complex kinds");
  if (m.rep.empty())
    throw ConfigError("matrix bridge needs a built model");
  if (coords.size() != m.dim)
    throw ConfigError("coordinate vector does not match the model");
  ComplexMatrix a = ComplexMatrix::Zero(m.n, m.n);
  for (int b = 0; b < m.dim; ++b) {
    const double c = coords(b);
    if (c == 0.0) continue;
    const auto& rep = m.rep[static_cast<std::size_t>(b)];
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) {
        const Octonion& o = rep[static_cast<std::size_t>(i) *
                                    static_cast<std::size_t>(m.n) +
                                static_cast<std::size_t>(j)];
        a(i, j) += c * std::complex<double>(o.c[0], o.c[1]);
      }
  }
  return a;
}

/// Hermitian matrix -> coordinate vector, the inverse of to_matrix on
/// hermitian input: coords_b = Re tr(a B_b).
inline Eigen::VectorXd from_matrix(const AlgebraModel& m,
                                   const ComplexMatrix& a) {
  if (m.kind != Kind::real && m.kind != Kind::complex)
    throw ConfigError("matrix bridge supports real and complex kinds");
  if (m.rep.empty())
    throw ConfigError("matrix bridge needs a built model");
  if (a.rows() != m.n || a.cols() != m.n)
    throw ConfigError("matrix does not match the model size");
  Eigen::VectorXd coords = Eigen::VectorXd::Zero(m.dim);
  for (int b = 0; b < m.dim; ++b) {
    const auto& rep = m.rep[static_cast<std::size_t>(b)];
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) {
        const Octonion& o = rep[static_cast<std::size_t>(i) *
                                    static_cast<std::size_t>(m.n) +
                                static_cast<std::size_t>(j)];
        // Re( a_ij * conj(o) ) summed over entries equals Re tr(a B^T*) =
        // Re tr(a B) for hermitian B.
        s += a(i, j).real() * o.c[0] + a(i, j).imag() * o.c[1];
      }
    coords(b) = s;
  }
  return coords;
}

namespace detail {
inline void require_hermitian(const ComplexMatrix& a, const char* what,
                              double tol) {
  if ((a - a.adjoint()).norm() > tol)
    throw ConfigError(std::string(what) + " must be hermitian");
}
}  // namespace detail

/// Closed matrix forms of the compression triple at a projection e:
/// U a = e a e,  T a = (e a + a e)/2,  S a = (e - e') a (e - e').
struct VnCompressions {
  ComplexMatrix U, T, S;
};

inline VnCompressions vn_closed_forms(const ComplexMatrix& e,
                                      const ComplexMatrix& a,
                                      double tol = 1e-9) {
  detail::require_hermitian(a, "target", tol);
  if ((e - e.adjoint()).norm() > tol || (e * e - e).norm() > tol)
    throw NotProjection("compression base must be a hermitian projection");
  const ComplexMatrix r =
      2.0 * e - ComplexMatrix::Identity(e.rows(), e.cols());
  return VnCompressions{e * a * e, 0.5 * (e * a + a * e), r * a * r};
}

/// Closed matrix forms of the two flows generated by a hermitian b:
///   flow_R = e^{t b/2} a e^{t b/2}          (symmetric multiplication)
///   flow_D = e^{i t b/2} a e^{-i t b/2}     (commutator rotation)
/// computed by eigendecomposition of b, the independent oracle route.
struct VnFlows {
  ComplexMatrix flow_R, flow_D;
};

inline VnFlows vn_dynamics(const ComplexMatrix& b, const ComplexMatrix& a,
                           double t, double tol = 1e-9) {
  detail::require_hermitian(b, "generator", tol);
  detail::require_hermitian(a, "target", tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b);
  if (es.info() != Eigen::Success)
    throw Error("eigendecomposition of the flow generator failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  const ComplexMatrix v = es.eigenvectors();
  Eigen::VectorXcd grow(lam.size()), phase(lam.size());
  for (int i = 0; i < lam.size(); ++i) {
    grow(i) = std::exp(0.5 * t * lam(i));
    phase(i) = std::exp(std::complex<double>(0.0, 0.5 * t * lam(i)));
  }
  const ComplexMatrix eg = v * grow.asDiagonal() * v.adjoint();
  const ComplexMatrix up = v * phase.asDiagonal() * v.adjoint();
  return VnFlows{eg * a * eg, up * a * up.adjoint()};
}

/// Coordinate matrix of the commutator derivation a -> i(b a - a b)/2,
/// the skew part generated by b; columns are images of basis elements.
/// Complex entries only: over real symmetric matrices the commutator
/// rotation leaves the algebra and has no coordinate generator.
inline SuperOperator vn_skew_generator(const AlgebraModel& m,
                                       const Eigen::VectorXd& b_coords) {
  if (m.kind != Kind::complex)
    throw ConfigError("commutator generator needs complex entries");
  const ComplexMatrix b = to_matrix(m, b_coords);
  SuperOperator d(m.dim, m.dim);
  const std::complex<double> half_i(0.0, 0.5);
  for (int k = 0; k < m.dim; ++k) {
    Eigen::VectorXd basis_coords = Eigen::VectorXd::Zero(m.dim);
    basis_coords(k) = 1.0;
    const ComplexMatrix bk = to_matrix(m, basis_coords);
    d.col(k) = from_matrix(m, half_i * (b * bk - bk * b));
  }
  return d;
}

}  // namespace ejlab
