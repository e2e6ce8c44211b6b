#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ejlab {

/// Basis multiplication table for the octonions (1, i1, ..., i7).
///
/// Convention: Cayley-Dickson doubling of the quaternions with
/// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)) and ij = k, which gives
/// the seven oriented Fano-plane triples
///
///   (1,2,3) (1,4,5) (2,4,6) (3,4,7) (2,5,7) (3,6,5) (1,7,6)
///
/// read as i_a i_b = i_c together with their cyclic images; swapping the
/// factors flips the sign.  The leading 1, 2 and 4 coordinates are closed
/// under the table, so the same arithmetic drives the real, complex and
/// quaternion scalars.
struct OctonionTable {
  std::array<std::array<std::int8_t, 8>, 8> sign{};
  std::array<std::array<std::uint8_t, 8>, 8> index{};
};

constexpr OctonionTable make_octonion_table() {
  OctonionTable t{};
  for (int i = 0; i < 8; ++i) {
    t.sign[0][i] = 1;
    t.index[0][i] = static_cast<std::uint8_t>(i);
    t.sign[i][0] = 1;
    t.index[i][0] = static_cast<std::uint8_t>(i);
  }
  for (int i = 1; i < 8; ++i) {
    t.sign[i][i] = -1;
    t.index[i][i] = 0;
  }
  constexpr int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7},
                                 {2, 5, 7}, {3, 6, 5}, {1, 7, 6}};
  for (const auto& tri : triples) {
    const int cyc[3][3] = {{tri[0], tri[1], tri[2]},
                           {tri[1], tri[2], tri[0]},
                           {tri[2], tri[0], tri[1]}};
    for (const auto& p : cyc) {
      t.sign[p[0]][p[1]] = 1;
      t.index[p[0]][p[1]] = static_cast<std::uint8_t>(p[2]);
      t.sign[p[1]][p[0]] = -1;
      t.index[p[1]][p[0]] = static_cast<std::uint8_t>(p[2]);
    }
  }
  return t;
}

inline constexpr OctonionTable kOctonionTable = make_octonion_table();

/// One scalar of the coordinate *-algebra, stored as 8 real coordinates.
/// Real, complex and quaternion scalars simply leave the trailing
/// coordinates at zero.
struct Octonion {
  std::array<double, 8> c{};

  static Octonion zero() { return {}; }

  static Octonion one() {
    Octonion z;
    z.c[0] = 1.0;
    return z;
  }

  static Octonion unit(int k) {
    Octonion z;
    z.c[static_cast<std::size_t>(k)] = 1.0;
    return z;
  }

  static Octonion real(double v) {
    Octonion z;
    z.c[0] = v;
    return z;
  }

  friend Octonion operator+(const Octonion& p, const Octonion& q) {
    Octonion z;
    for (int i = 0; i < 8; ++i) z.c[i] = p.c[i] + q.c[i];
    return z;
  }

  friend Octonion operator-(const Octonion& p, const Octonion& q) {
    Octonion z;
    for (int i = 0; i < 8; ++i) z.c[i] = p.c[i] - q.c[i];
    return z;
  }

  friend Octonion operator*(double s, const Octonion& p) {
    Octonion z;
    for (int i = 0; i < 8; ++i) z.c[i] = s * p.c[i];
    return z;
  }

  friend Octonion operator*(const Octonion& p, double s) { return s * p; }

  friend Octonion operator*(const Octonion& p, const Octonion& q) {
    Octonion z;
    for (int i = 0; i < 8; ++i) {
      const double pi = p.c[i];
      if (pi == 0.0) continue;
      for (int j = 0; j < 8; ++j) {
        const double qj = q.c[j];
        if (qj == 0.0) continue;
        z.c[kOctonionTable.index[i][j]] +=
            static_cast<double>(kOctonionTable.sign[i][j]) * pi * qj;
      }
    }
    return z;
  }

  Octonion conj() const {
    Octonion z;
    z.c[0] = c[0];
    for (int i = 1; i < 8; ++i) z.c[i] = -c[i];
    return z;
  }

  double squared_norm() const {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += c[i] * c[i];
    return s;
  }

  double norm() const { return std::sqrt(squared_norm()); }

  /// Euclidean pairing Re(p conj(q)).
  friend double dot(const Octonion& p, const Octonion& q) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += p.c[i] * q.c[i];
    return s;
  }
};

}  // namespace ejlab
