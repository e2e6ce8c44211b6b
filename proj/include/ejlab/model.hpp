#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ejlab/errors.hpp"
#include "ejlab/linalg.hpp"
#include "ejlab/octonion.hpp"

namespace ejlab {

enum class Kind { real, complex, quaternion, octonion };

inline int scalar_dim(Kind k) {
  switch (k) {
    case Kind::real: return 1;
    case Kind::complex: return 2;
    case Kind::quaternion: return 4;
    case Kind::octonion: return 8;
  }
  throw ConfigError("unknown scalar kind");
}

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::real: return "real";
    case Kind::complex: return "complex";
    case Kind::quaternion: return "quaternion";
    case Kind::octonion: return "octonion";
  }
  throw ConfigError("unknown scalar kind");
}

inline Kind kind_from_name(const std::string& s) {
  if (s == "real") return Kind::real;
  if (s == "complex") return Kind::complex;
  if (s == "quaternion") return Kind::quaternion;
  if (s == "octonion") return Kind::octonion;
  throw ConfigError("unknown model kind '" + s +
                    "' (expected real|complex|quaternion|octonion)");
}

/// Real dimension of the hermitian n x n matrices over the scalar kind.
inline int model_dim(Kind k, int n) {
  return n + n * (n - 1) / 2 * scalar_dim(k);
}

/// Superoperators are real matrices acting on coordinate vectors.
using SuperOperator = Eigen::MatrixXd;

inline constexpr double kPositivityTol = 1e-9;

/// A finite-dimensional formally real Jordan algebra of hermitian n x n
/// matrices over a scalar kind, presented in a trace-orthonormal real basis.
///
/// Basis order (pinned, and relied on by serialization and tests):
/// the n diagonal matrix units E_ii first, then for each pair i < j in
/// lexicographic order and each scalar unit u = 0..k-1 the matrix with
/// entry (i,j) = u/sqrt(2) and (j,i) = conj(u)/sqrt(2).  In this basis the
/// trace form <x,y> = Re tr(xy) has Gram matrix exactly I.
///
/// `structure[i](j,k)` is the structure tensor of the Jordan product
/// b_i o b_j = sum_k structure[i](j,k) b_k, fully symmetrized over its
/// three slots (valid because the product commutes and the trace form is
/// associative), so every multiplication operator is exactly symmetric.
///
/// Instances are immutable after construction and safe to share.
struct AlgebraModel {
  Kind kind = Kind::real;
  int n = 0;
  int dim = 0;
  std::vector<Eigen::MatrixXd> structure;
  Eigen::MatrixXd gram;
  Eigen::VectorXd unit;
  /// Dense hermitian representation of each basis element, entry (i,j) at
  /// rep[b][i*n + j].  Empty for models imported from serialized tensors.
  std::vector<std::vector<Octonion>> rep;
};

/// An element of a specific model, held as coordinates in the model basis.
struct AlgebraElement {
  const AlgebraModel* model = nullptr;
  Eigen::VectorXd coords;
};

inline AlgebraElement element(const AlgebraModel& m, Eigen::VectorXd coords) {
  if (coords.size() != m.dim)
    throw ConfigError("coordinate vector has size " +
                      std::to_string(coords.size()) + ", model needs " +
                      std::to_string(m.dim));
  return AlgebraElement{&m, std::move(coords)};
}

inline AlgebraElement zero_element(const AlgebraModel& m) {
  return AlgebraElement{&m, Eigen::VectorXd::Zero(m.dim)};
}

inline AlgebraElement unit_element(const AlgebraModel& m) {
  return AlgebraElement{&m, m.unit};
}

inline void require_same_model(const AlgebraElement& x,
                               const AlgebraElement& y) {
  if (x.model == nullptr || y.model == nullptr || x.model != y.model)
    throw ModelMismatch("operands belong to different algebra models");
}

inline AlgebraElement operator+(const AlgebraElement& x,
                                const AlgebraElement& y) {
  require_same_model(x, y);
  return AlgebraElement{x.model, x.coords + y.coords};
}

inline AlgebraElement operator-(const AlgebraElement& x,
                                const AlgebraElement& y) {
  require_same_model(x, y);
  return AlgebraElement{x.model, x.coords - y.coords};
}

inline AlgebraElement operator*(double s, const AlgebraElement& x) {
  return AlgebraElement{x.model, s * x.coords};
}

inline double coord_norm(const AlgebraElement& x) { return x.coords.norm(); }

/// Jordan product via the structure tensor.
inline AlgebraElement jordan_product(const AlgebraElement& x,
                                     const AlgebraElement& y) {
  require_same_model(x, y);
  const AlgebraModel& m = *x.model;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    const double xi = x.coords(i);
    if (xi == 0.0) continue;
    z.noalias() += xi * (m.structure[static_cast<std::size_t>(i)] * y.coords);
  }
  return AlgebraElement{&m, std::move(z)};
}

/// Jordan triple product {x,y,z} = x o (y o z) - y o (z o x) + z o (x o y).
inline AlgebraElement triple_product(const AlgebraElement& x,
                                     const AlgebraElement& y,
                                     const AlgebraElement& z) {
  require_same_model(x, y);
  require_same_model(y, z);
  const AlgebraElement a = jordan_product(x, jordan_product(y, z));
  const AlgebraElement b = jordan_product(y, jordan_product(z, x));
  const AlgebraElement c = jordan_product(z, jordan_product(x, y));
  return AlgebraElement{x.model, a.coords - b.coords + c.coords};
}

/// Associative trace form <x,y> = Re tr(xy).
inline double trace_form(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_model(x, y);
  return x.coords.dot(x.model->gram * y.coords);
}

/// Multiplication operator L_x : y -> x o y as a superoperator.  Exactly
/// symmetric thanks to the symmetrized structure tensor.
inline SuperOperator mult_operator(const AlgebraElement& x) {
  const AlgebraModel& m = *x.model;
  SuperOperator l = SuperOperator::Zero(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i) {
    const double xi = x.coords(i);
    if (xi == 0.0) continue;
    l.noalias() += xi * m.structure[static_cast<std::size_t>(i)];
  }
  return l;
}

/// Smallest eigenvalue of L_x.  The cone of squares is self-dual, so
/// x >= 0 exactly when this is >= 0.
inline double positivity_margin(const AlgebraElement& x) {
  return min_eigenvalue_sym(mult_operator(x));
}

inline bool is_positive(const AlgebraElement& x, double tol = kPositivityTol) {
  return positivity_margin(x) >= -tol;
}

namespace detail {

/// Dense hermitian matrix with octonion entries, the construction-time
/// representation behind every model kind.
struct KMatrix {
  int n = 0;
  std::vector<Octonion> a;

  static KMatrix zero(int n) {
    KMatrix m;
    m.n = n;
    m.a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
               Octonion::zero());
    return m;
  }

  Octonion& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }

  const Octonion& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }
};

inline KMatrix kmat_mul(const KMatrix& x, const KMatrix& y) {
  KMatrix z = KMatrix::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const Octonion& xik = x.at(i, k);
      if (xik.squared_norm() == 0.0) continue;
      for (int j = 0; j < x.n; ++j)
        z.at(i, j) = z.at(i, j) + xik * y.at(k, j);
    }
  return z;
}

inline KMatrix kmat_jordan(const KMatrix& x, const KMatrix& y) {
  const KMatrix xy = kmat_mul(x, y);
  const KMatrix yx = kmat_mul(y, x);
  KMatrix z = KMatrix::zero(x.n);
  for (std::size_t t = 0; t < z.a.size(); ++t)
    z.a[t] = 0.5 * (xy.a[t] + yx.a[t]);
  return z;
}

/// Re tr(x y) for hermitian x, y, written as the entrywise pairing.
inline double kmat_inner(const KMatrix& x, const KMatrix& y) {
  double s = 0.0;
  for (std::size_t t = 0; t < x.a.size(); ++t) s += dot(x.a[t], y.a[t]);
  return s;
}

inline std::vector<KMatrix> hermitian_basis(Kind kind, int n) {
  const int k = scalar_dim(kind);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<KMatrix> basis;
  basis.reserve(static_cast<std::size_t>(model_dim(kind, n)));
  for (int i = 0; i < n; ++i) {
    KMatrix m = KMatrix::zero(n);
    m.at(i, i) = Octonion::one();
    basis.push_back(std::move(m));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int u = 0; u < k; ++u) {
        KMatrix m = KMatrix::zero(n);
        const Octonion e = inv_sqrt2 * Octonion::unit(u);
        m.at(i, j) = e;
        m.at(j, i) = e.conj();
        basis.push_back(std::move(m));
      }
  return basis;
}

}  // namespace detail

/// Builds the model for hermitian n x n matrices over the scalar kind.
/// Octonion entries are only a Jordan algebra at n = 3 (the exceptional
/// 27-dimensional algebra); other sizes are rejected.
inline AlgebraModel build_model(Kind kind, int n) {
  if (n < 2) throw ConfigError("model needs n >= 2");
  if (kind == Kind::octonion && n != 3)
    throw ConfigError("octonion entries require n = 3");

  const std::vector<detail::KMatrix> basis = detail::hermitian_basis(kind, n);
  const int d = static_cast<int>(basis.size());

  AlgebraModel m;
  m.kind = kind;
  m.n = n;
  m.dim = d;

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double g = detail::kmat_inner(basis[static_cast<std::size_t>(i)],
                                          basis[static_cast<std::size_t>(j)]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw Error("basis failed the orthonormality check");
    }
  m.gram = Eigen::MatrixXd::Identity(d, d);

  std::vector<Eigen::MatrixXd> raw(
      static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const detail::KMatrix p = detail::kmat_jordan(
          basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
      for (int k = 0; k < d; ++k) {
        const double v =
            detail::kmat_inner(p, basis[static_cast<std::size_t>(k)]);
        raw[static_cast<std::size_t>(i)](j, k) = v;
        raw[static_cast<std::size_t>(j)](i, k) = v;
      }
    }

  // One value per index orbit, assigned to all six slots, so the stored
  // tensor is bit-exactly symmetric.
  m.structure.assign(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      for (int k = j; k < d; ++k) {
        const double v = (raw[static_cast<std::size_t>(i)](j, k) +
                          raw[static_cast<std::size_t>(i)](k, j) +
                          raw[static_cast<std::size_t>(j)](i, k) +
                          raw[static_cast<std::size_t>(j)](k, i) +
                          raw[static_cast<std::size_t>(k)](i, j) +
                          raw[static_cast<std::size_t>(k)](j, i)) /
                         6.0;
        m.structure[static_cast<std::size_t>(i)](j, k) = v;
        m.structure[static_cast<std::size_t>(i)](k, j) = v;
        m.structure[static_cast<std::size_t>(j)](i, k) = v;
        m.structure[static_cast<std::size_t>(j)](k, i) = v;
        m.structure[static_cast<std::size_t>(k)](i, j) = v;
        m.structure[static_cast<std::size_t>(k)](j, i) = v;
      }

  m.unit = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) m.unit(i) = 1.0;

  m.rep.reserve(static_cast<std::size_t>(d));
  for (const auto& b : basis) m.rep.push_back(b.a);
  return m;
}

/// Process-wide cache of built models keyed by (kind, n).
inline const AlgebraModel& shared_model(Kind kind, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<AlgebraModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::pair<int, int> key{static_cast<int>(kind), n};
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<AlgebraModel>(build_model(kind, n)))
             .first;
  }
  return *it->second;
}

}  // namespace ejlab
