#pragma once

#include <cmath>
#include <string>

#include "ejlab/errors.hpp"
#include "ejlab/model.hpp"

namespace ejlab {

inline constexpr double kExpNormGuard = 50.0;

/// exp(t D) by scaling-and-squaring with a truncated Taylor series.
/// Relative accuracy is around 1e-13 inside the guarded range; the guard
/// rejects ||t D||_F > 50 where squaring noise would dominate.
inline SuperOperator exp_superoperator(const SuperOperator& d, double t = 1.0) {
  if (d.rows() != d.cols()) throw ConfigError("exp needs a square matrix");
  if (!std::isfinite(t)) throw ConfigError("exp needs a finite time");
  const int n = static_cast<int>(d.rows());
  SuperOperator a = t * d;
  const double nrm = a.norm();
  if (!(nrm <= kExpNormGuard))
    throw ExpOverflow("||t D|| = " + std::to_string(nrm) +
                      " exceeds the exp guard of 50");
  int squarings = 0;
  if (nrm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    a /= std::pow(2.0, squarings);
  }
  SuperOperator sum = SuperOperator::Identity(n, n) + a;
  SuperOperator term = a;
  for (int k = 2; k <= 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-17 * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace ejlab
