#pragma once

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ejlab/dynamics.hpp"
#include "ejlab/linalg.hpp"
#include "ejlab/model.hpp"

namespace ejlab {

/// Dimension of the derivation Lie algebra of H_n over each scalar kind,
/// from the standard classification: so(n), su(n), sp(n), and f4 for the
/// exceptional 27-dimensional algebra.  Used as the independent oracle.
inline int lie_dimension_oracle(Kind k, int n) {
  switch (k) {
    case Kind::real: return n * (n - 1) / 2;
    case Kind::complex: return n * n - 1;
    case Kind::quaternion: return n * (2 * n + 1);
    case Kind::octonion:
      if (n != 3) throw ConfigError("octonion entries require n = 3");
      return 52;
  }
  throw ConfigError("unknown scalar kind");
}

struct LieAlgebraReport {
  int dimension = 0;
  /// Orthonormal (Frobenius) basis of the extracted algebra.
  std::vector<SuperOperator> basis;
  /// Worst relative distance of a basis bracket from the span.
  double closure_residual = 0.0;
  Eigen::VectorXd singular_values;
  /// Ratio sigma_r / sigma_{r+1} at the rank cutoff; infinite when the
  /// trailing spectrum is exactly zero or the stack has full rank.
  double singular_gap = std::numeric_limits<double>::infinity();
  /// Diagnostics from re-classifying each basis element.
  double max_skew_residual = 0.0;
  double max_derivation_violation = 0.0;
  double min_exp_margin = 0.0;
};

/// Extracts the Lie algebra spanned by commutators [L_a, L_b].  By
/// bilinearity the span over all ordered basis pairs equals the span over
/// arbitrary pairs, so the bracket stack is deterministic; the rank comes
/// from an SVD with a relative cutoff and a required decisive gap.
/// `verification_samples` sizes the witness campaign used to re-certify
/// each extracted basis element as a skew derivation (pass at least
/// dim^2 for comfortable oversampling; the budget is split per element).
inline LieAlgebraReport skew_lie_algebra(const AlgebraModel& m,
                                         int verification_samples, Rng& rng,
                                         double cutoff_rel = 1e-8,
                                         double min_gap = 10.0) {
  const int d = m.dim;
  const int pairs = d * (d - 1) / 2;
  Eigen::MatrixXd stack(pairs, d * d);
  int row = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Eigen::MatrixXd bracket =
          m.structure[static_cast<std::size_t>(i)] *
              m.structure[static_cast<std::size_t>(j)] -
          m.structure[static_cast<std::size_t>(j)] *
              m.structure[static_cast<std::size_t>(i)];
      stack.row(row++) = vectorize(bracket).transpose();
    }

  // The stack has singular values with very high multiplicity (identical
  // values across dozens of directions), which trips the deflation in the
  // divide-and-conquer SVD and can fabricate spurious mid-scale values;
  // the one-sided Jacobi SVD handles degenerate spectra exactly and the
  // stacks stay small enough for it.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  LieAlgebraReport r;
  r.singular_values = sv;
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top <= 0.0) {
    r.dimension = 0;
    return r;
  }
  const double cutoff = cutoff_rel * top;
  int rank = 0;
  while (rank < sv.size() && sv(rank) >= cutoff) ++rank;
  if (rank < sv.size() && sv(rank) > 0.0) {
    r.singular_gap = sv(rank - 1) / sv(rank);
    if (r.singular_gap < min_gap)
      throw RankUnstable("singular-value gap " +
                         std::to_string(r.singular_gap) +
                         " at the rank cutoff is not decisive");
  }
  r.dimension = rank;

  r.basis.reserve(static_cast<std::size_t>(rank));
  for (int k = 0; k < rank; ++k)
    r.basis.push_back(unvectorize(svd.matrixV().col(k), d, d));

  // Closure: every bracket of basis elements must stay in the span.
  double worst = 0.0;
  for (int a = 0; a < rank; ++a)
    for (int b = a + 1; b < rank; ++b) {
      const Eigen::MatrixXd w = r.basis[static_cast<std::size_t>(a)] *
                                    r.basis[static_cast<std::size_t>(b)] -
                                r.basis[static_cast<std::size_t>(b)] *
                                    r.basis[static_cast<std::size_t>(a)];
      Eigen::VectorXd wv = vectorize(w);
      const double nrm = wv.norm();
      Eigen::VectorXd proj = Eigen::VectorXd::Zero(d * d);
      for (int k = 0; k < rank; ++k) {
        const Eigen::VectorXd bk = vectorize(r.basis[static_cast<std::size_t>(k)]);
        proj += bk.dot(wv) * bk;
      }
      const double res = (wv - proj).norm();
      worst = std::max(worst, nrm > 1e-14 ? res / nrm : res);
    }
  r.closure_residual = worst;

  // Re-certify each basis element as a skew derivation.
  const int per_element =
      std::max(1, verification_samples / std::max(1, rank));
  ClassifyConfig cfg;
  cfg.events = std::clamp(per_element / 4, 2, 4);
  cfg.states_per_event = 2;
  cfg.elements_per_event = 2;
  cfg.cone_samples = 4;
  cfg.t_grid = {0.1, 1.0};
  double min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < rank; ++k) {
    cfg.seed = rng.bits();
    const GeneratorClassification c =
        classify_generator(m, r.basis[static_cast<std::size_t>(k)], cfg);
    r.max_skew_residual = std::max(r.max_skew_residual, c.skew_residual);
    r.max_derivation_violation =
        std::max(r.max_derivation_violation, c.worst_violation);
    min_margin = std::min(
        min_margin, std::min(c.exp_margin_forward, c.exp_margin_backward));
  }
  r.min_exp_margin = rank > 0 ? min_margin : 0.0;
  return r;
}

}  // namespace ejlab
