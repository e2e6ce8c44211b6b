#pragma once

// Independent oracle arithmetic for the tests: dense complex matrices with
// a hand-built basis (quaternions through the 2x2 complex embedding), and a
// recursive Cayley-Dickson multiplier for the scalar table.  Nothing here
// reuses the library's structure-constant route.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ejlab/model.hpp"

namespace testor {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// phi maps quaternion units into 2x2 complex matrices:
// 1 -> I, i -> diag(i, -i), j -> [[0,1],[-1,0]], k -> [[0,i],[i,0]].
inline CMat quaternion_unit_rep(int u) {
  CMat m = CMat::Zero(2, 2);
  const Cplx I(0.0, 1.0);
  switch (u) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 0) = I; m(1, 1) = -I; break;
    case 2: m(0, 1) = 1.0; m(1, 0) = -1.0; break;
    case 3: m(0, 1) = I; m(1, 0) = I; break;
    default: throw std::invalid_argument("quaternion unit out of range");
  }
  return m;
}

inline int embed_size(ejlab::Kind k, int n) {
  return k == ejlab::Kind::quaternion ? 2 * n : n;
}

// Trace pairing of the embedded basis: quaternion blocks double the trace.
inline double pairing_scale(ejlab::Kind k) {
  return k == ejlab::Kind::quaternion ? 2.0 : 1.0;
}

// Hermitian basis in the documented model order: diagonal units first,
// then (i < j) lexicographic with scalar units, normalized by 1/sqrt(2).
inline std::vector<CMat> dense_basis(ejlab::Kind k, int n) {
  const int units = ejlab::scalar_dim(k);
  const int nn = embed_size(k, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<CMat> basis;
  auto put = [&](CMat& m, int bi, int bj, const CMat& val) {
    if (k == ejlab::Kind::quaternion)
      m.block(2 * bi, 2 * bj, 2, 2) = val;
    else
      m(bi, bj) = val(0, 0);
  };
  auto scalar_rep = [&](int u) {
    if (k == ejlab::Kind::quaternion) return quaternion_unit_rep(u);
    CMat m = CMat::Zero(1, 1);
    m(0, 0) = u == 0 ? Cplx(1.0, 0.0) : Cplx(0.0, 1.0);
    return m;
  };
  for (int i = 0; i < n; ++i) {
    CMat m = CMat::Zero(nn, nn);
    put(m, i, i, scalar_rep(0));
    basis.push_back(m);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int u = 0; u < units; ++u) {
        CMat m = CMat::Zero(nn, nn);
        const CMat r = inv_sqrt2 * scalar_rep(u);
        put(m, i, j, r);
        CMat radj = r.adjoint();
        put(m, j, i, radj);
        basis.push_back(m);
      }
  return basis;
}

inline CMat to_dense(ejlab::Kind k, int n, const Eigen::VectorXd& coords) {
  const std::vector<CMat> basis = dense_basis(k, n);
  CMat a = CMat::Zero(embed_size(k, n), embed_size(k, n));
  for (std::size_t b = 0; b < basis.size(); ++b)
    a += coords(static_cast<Eigen::Index>(b)) * basis[b];
  return a;
}

inline Eigen::VectorXd from_dense(ejlab::Kind k, int n, const CMat& a) {
  const std::vector<CMat> basis = dense_basis(k, n);
  Eigen::VectorXd coords(static_cast<Eigen::Index>(basis.size()));
  const double scale = pairing_scale(k);
  for (std::size_t b = 0; b < basis.size(); ++b)
    coords(static_cast<Eigen::Index>(b)) = (a * basis[b]).trace().real() / scale;
  return coords;
}

inline CMat jordan_dense(const CMat& a, const CMat& b) {
  return 0.5 * (a * b + b * a);
}

inline double trace_form_dense(ejlab::Kind k, const CMat& a, const CMat& b) {
  return (a * b).trace().real() / pairing_scale(k);
}

// --- Recursive Cayley-Dickson multiplication --------------------------------
// Doubling rule (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), the same
// convention the library's table documents, evaluated structurally.

inline std::vector<double> cd_conj(std::vector<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
  return v;
}

inline std::vector<double> cd_mul(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  const std::size_t len = x.size();
  if (len == 1) return {x[0] * y[0]};
  const std::size_t h = len / 2;
  const std::vector<double> a(x.begin(), x.begin() + static_cast<long>(h));
  const std::vector<double> b(x.begin() + static_cast<long>(h), x.end());
  const std::vector<double> c(y.begin(), y.begin() + static_cast<long>(h));
  const std::vector<double> d(y.begin() + static_cast<long>(h), y.end());
  const std::vector<double> left_a = cd_mul(a, c);
  const std::vector<double> left_b = cd_mul(cd_conj(d), b);
  const std::vector<double> right_a = cd_mul(d, a);
  const std::vector<double> right_b = cd_mul(b, cd_conj(c));
  std::vector<double> out(len);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = left_a[i] - left_b[i];
    out[h + i] = right_a[i] + right_b[i];
  }
  return out;
}

}  // namespace testor
