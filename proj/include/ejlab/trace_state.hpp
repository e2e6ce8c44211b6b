#pragma once

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ejlab/logic.hpp"

namespace ejlab {

/// Solution of the trace-state feasibility problem, with the diagnostics
/// needed to report degeneracy: the dimension of the invariant subspace,
/// the trailing singular values that defined it, the worst residual of
/// the defining constraints at the solution, and its positivity margin.
struct TraceStateSolution {
  State state;
  int nullspace_dim = 0;
  Eigen::VectorXd singular_values;
  double constraint_residual = 0.0;
  double positivity_margin = 0.0;
};

/// Finds a state invariant under every measurement channel P_e = U_e+U_e'
/// of the given events, i.e. mu(U_e f) + mu(U_e' f) = mu(f) for all f.
/// Solved as the joint nullspace of the stacked (P_e^T - I) acting on
/// density coordinates.  When the invariant subspace has dimension > 1
/// the unit direction is projected into it, and the multiplicity is
/// reported rather than hidden.  Throws NoSolution when the nullspace is
/// empty, carries no mass, or yields a non-positive density.
inline TraceStateSolution find_trace_state(const AlgebraModel& m,
                                           const std::vector<Event>& events,
                                           double tol = kPositivityTol,
                                           double cutoff_rel = 1e-8) {
  if (events.empty())
    throw ConfigError("trace-state solve needs at least one event");
  const int d = m.dim;
  Eigen::MatrixXd stack(static_cast<int>(events.size()) * d, d);
  const SuperOperator id = SuperOperator::Identity(d, d);
  for (std::size_t idx = 0; idx < events.size(); ++idx) {
    if (&events[idx].model() != &m)
      throw ModelMismatch("event belongs to a different model");
    const SuperOperator p = lueders_channel(events[idx]);
    stack.middleRows(static_cast<int>(idx) * d, d) = p.transpose() - id;
  }

  // Jacobi rather than divide-and-conquer: the latter's deflation is
  // unreliable on spectra with high multiplicity, and this rank decision
  // feeds a NoSolution/degeneracy verdict.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = cutoff_rel * std::max(top, 1.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) >= cutoff) ++rank;
  const int nullity = d - rank;
  if (nullity <= 0)
    throw NoSolution("no invariant direction: smallest singular value " +
                     std::to_string(sv(sv.size() - 1)));

  // Inside the invariant subspace, pick the direction of the unit (the
  // canonical trace density); with a one-dimensional nullspace this is
  // just the nullvector.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  for (int k = rank; k < d; ++k) {
    const Eigen::VectorXd col = svd.matrixV().col(k);
    v += col.dot(m.unit) * col;
  }
  if (v.norm() < 1e-12)
    throw NoSolution("invariant subspace is orthogonal to the unit");
  const double mass = v.dot(m.gram * m.unit);
  if (std::abs(mass) < 1e-12)
    throw NoSolution("invariant direction carries no mass");
  Eigen::VectorXd rho = v / mass;

  const double margin = positivity_margin(element(m, rho));
  if (margin < -tol)
    throw NoSolution("invariant density has positivity margin " +
                     std::to_string(margin));

  TraceStateSolution sol{State(element(m, rho), tol), nullity, sv,
                         (stack * rho).cwiseAbs().maxCoeff(), margin};
  return sol;
}

/// Worst defect of mu(U_e f) + mu(U_e' f) = mu(f) over fresh pairs
/// (e, f), the out-of-sample validation of a trace-state solve.
inline double validate_trace_state(const State& mu,
                                   const std::vector<Event>& events,
                                   const std::vector<AlgebraElement>& targets) {
  if (events.size() != targets.size())
    throw ConfigError("validation needs matched event/target lists");
  double worst = 0.0;
  const AlgebraModel& m = mu.model();
  for (std::size_t i = 0; i < events.size(); ++i) {
    const SuperOperator p = lueders_channel(events[i]);
    const double lhs = mu(element(m, p * targets[i].coords));
    const double rhs = mu(targets[i]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace ejlab
