#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ejlab/expm.hpp"
#include "ejlab/logic.hpp"
#include "ejlab/rng.hpp"

namespace ejlab {

/// Gaussian element, normalized to coordinate norm 1 by default.
inline AlgebraElement random_element(const AlgebraModel& m, Rng& rng,
                                     bool normalized = true) {
  Eigen::VectorXd v = rng.normal_vector(m.dim);
  if (normalized) {
    double nrm = v.norm();
    while (nrm < 1e-12) {
      v = rng.normal_vector(m.dim);
      nrm = v.norm();
    }
    v /= nrm;
  }
  return AlgebraElement{&m, std::move(v)};
}

/// Random square y o y with ||y|| = 1, a generic positive element.
inline AlgebraElement random_square(const AlgebraModel& m, Rng& rng) {
  const AlgebraElement y = random_element(m, rng);
  return jordan_product(y, y);
}

/// Normalized random square: a generic state density.
inline State random_state(const AlgebraModel& m, Rng& rng) {
  for (;;) {
    AlgebraElement s = random_square(m, rng);
    const double mass = trace_form(s, unit_element(m));
    if (mass < 1e-12) continue;
    s.coords /= mass;
    return State(std::move(s));
  }
}

/// Random element of the derivation Lie algebra: a sum of commutators of
/// multiplication operators, normalized to Frobenius norm 1.  Such
/// operators kill the unit and generate automorphisms.
inline SuperOperator random_skew_generator(const AlgebraModel& m, Rng& rng,
                                           int terms = 2) {
  for (;;) {
    SuperOperator k = SuperOperator::Zero(m.dim, m.dim);
    for (int t = 0; t < terms; ++t) {
      const SuperOperator la = mult_operator(random_element(m, rng));
      const SuperOperator lb = mult_operator(random_element(m, rng));
      k.noalias() += la * lb - lb * la;
    }
    const double nrm = k.norm();
    if (nrm > 1e-12) return k / nrm;
  }
}

/// Random automorphism exp(theta K) of the Jordan product.  Automorphisms
/// preserve idempotency, the trace form and orthogonality, so they carry
/// diagonal events to generic ones without losing exactness.
inline SuperOperator random_automorphism(const AlgebraModel& m, Rng& rng) {
  const SuperOperator k = random_skew_generator(m, rng);
  return exp_superoperator(k, rng.uniform(0.3, 1.5));
}

/// Random event of the given rank: an automorphism image of the leading
/// diagonal idempotent.  Rank 0 and rank n return the exact extremes.
inline Event random_event(const AlgebraModel& m, int rank, Rng& rng) {
  if (rank < 0 || rank > m.n) throw ConfigError("event rank out of range");
  if (rank == 0) return Event(zero_element(m));
  if (rank == m.n) return Event(unit_element(m));
  const SuperOperator w = random_automorphism(m, rng);
  const Event d = diagonal_event(m, rank);
  return Event(element(m, w * d.element().coords));
}

/// Random event of uniform rank in 1..n-1.
inline Event random_event(const AlgebraModel& m, Rng& rng) {
  return random_event(m, 1 + rng.below(m.n - 1), rng);
}

/// Three pairwise orthogonal events covering a diagonal split, moved by a
/// single automorphism.  For n = 2 the third event is zero (the split has
/// only two nonempty parts).
inline std::array<Event, 3> random_orthogonal_triple(const AlgebraModel& m,
                                                     Rng& rng) {
  const std::vector<int> perm = rng.permutation(m.n);
  int c1 = 1, c2 = 2;
  if (m.n >= 3) {
    c1 = 1 + rng.below(m.n - 2);
    c2 = c1 + 1 + rng.below(m.n - 1 - c1);
  }
  const SuperOperator w = random_automorphism(m, rng);
  auto part_event = [&](int lo, int hi) {
    std::vector<int> idx;
    for (int i = lo; i < hi; ++i) idx.push_back(perm[static_cast<std::size_t>(i)]);
    const Event d = subset_event(m, idx);
    return Event(element(m, w * d.element().coords));
  };
  return {part_event(0, c1), part_event(c1, c2), part_event(c2, m.n)};
}

/// Pair of events whose multiplication operators do not commute, the
/// generic situation for the semigroup construction.
inline std::pair<Event, Event> random_noncommuting_pair(
    const AlgebraModel& m, Rng& rng, double min_commutator = 1e-8,
    int max_tries = 64) {
  for (int t = 0; t < max_tries; ++t) {
    Event e = random_event(m, rng);
    Event f = random_event(m, rng);
    const SuperOperator le = compression_T(e);
    const SuperOperator lf = compression_T(f);
    if ((le * lf - lf * le).norm() > min_commutator)
      return {std::move(e), std::move(f)};
  }
  throw Error("no non-commuting event pair found");
}

/// Random state supported on e (so mu(e) = 1): a compressed generic state.
inline State random_state_on(const Event& e, Rng& rng) {
  const AlgebraModel& m = e.model();
  const SuperOperator u = compression_U(e);
  for (;;) {
    const State sigma = random_state(m, rng);
    Eigen::VectorXd p = u * sigma.density().coords;
    const double mass = p.dot(m.gram * m.unit);
    if (mass < 1e-8) continue;
    return State(element(m, p / mass));
  }
}

}  // namespace ejlab
