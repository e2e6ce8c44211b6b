#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ejlab/model.hpp"

namespace ejlab {

inline constexpr double kEventTol = 1e-9;
inline constexpr double kStateNormTol = 1e-10;
inline constexpr double kNullEventEps = 1e-12;

/// An event: an idempotent element.  The constructor enforces
/// ||e o e - e|| <= tol; because e and its complement are squares, every
/// idempotent automatically satisfies 0 <= e <= I.  The trace of an
/// idempotent counts its rank, recorded as a hint when it is numerically
/// integral.
class Event {
 public:
  explicit Event(AlgebraElement e, double tol = kEventTol)
      : element_(std::move(e)) {
    const AlgebraElement sq = jordan_product(element_, element_);
    residual_ = (sq.coords - element_.coords).norm();
    if (!(residual_ <= tol))
      throw NotIdempotent("idempotency residual " + std::to_string(residual_) +
                          " exceeds tolerance");
    trace_ = trace_form(element_, unit_element(model()));
    const double r = std::round(trace_);
    if (std::abs(trace_ - r) <= 1e-6) rank_hint_ = static_cast<int>(r);
  }

  const AlgebraElement& element() const { return element_; }
  const AlgebraModel& model() const { return *element_.model; }
  double idempotency_residual() const { return residual_; }
  double trace() const { return trace_; }
  std::optional<int> rank_hint() const { return rank_hint_; }

 private:
  AlgebraElement element_;
  double residual_ = 0.0;
  double trace_ = 0.0;
  std::optional<int> rank_hint_;
};

inline Event orthocomplement(const Event& e) {
  return Event(unit_element(e.model()) - e.element());
}

/// Orthogonality of events is vanishing of the Jordan product.
inline bool orthogonal(const Event& e, const Event& f,
                       double tol = kEventTol) {
  return coord_norm(jordan_product(e.element(), f.element())) <= tol;
}

/// Sum of orthogonal events, itself an event.
inline Event event_sum(const Event& e, const Event& f,
                       double tol = kEventTol) {
  if (!orthogonal(e, f, tol))
    throw NotOrthogonal("event_sum requires orthogonal events");
  return Event(e.element() + f.element());
}

/// Diagonal idempotent on an index subset.
inline Event subset_event(const AlgebraModel& m,
                          const std::vector<int>& indices) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m.dim);
  for (int i : indices) {
    if (i < 0 || i >= m.n) throw ConfigError("diagonal index out of range");
    c(i) = 1.0;
  }
  return Event(element(m, std::move(c)));
}

/// Diagonal idempotent of the given rank on the leading indices.
inline Event diagonal_event(const AlgebraModel& m, int rank) {
  if (rank < 0 || rank > m.n)
    throw ConfigError("diagonal event rank out of range");
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) idx[static_cast<std::size_t>(i)] = i;
  return subset_event(m, idx);
}

/// The compression triple of an event: U = 2L^2 - L, T = L, and the
/// reflection S = 2U + 2U' - I where U' belongs to the orthocomplement.
struct Compressions {
  SuperOperator U, T, S;
};

inline SuperOperator compression_T(const Event& e) {
  return mult_operator(e.element());
}

inline SuperOperator compression_U(const Event& e) {
  const SuperOperator t = compression_T(e);
  return 2.0 * t * t - t;
}

inline Compressions compressions(const Event& e) {
  const int d = e.model().dim;
  const SuperOperator id = SuperOperator::Identity(d, d);
  const SuperOperator t = compression_T(e);
  const SuperOperator tc = id - t;
  const SuperOperator u = 2.0 * t * t - t;
  const SuperOperator uc = 2.0 * tc * tc - tc;
  return Compressions{u, t, 2.0 * u + 2.0 * uc - id};
}

/// Two-outcome measurement update channel U_e + U_e'.
inline SuperOperator lueders_channel(const Event& e) {
  const int d = e.model().dim;
  const SuperOperator id = SuperOperator::Identity(d, d);
  const SuperOperator t = compression_T(e);
  const SuperOperator tc = id - t;
  return (2.0 * t * t - t) + (2.0 * tc * tc - tc);
}

/// A state: a positive density with mass one, evaluated against elements
/// through the trace form.
class State {
 public:
  explicit State(AlgebraElement rho, double tol = kPositivityTol)
      : density_(std::move(rho)) {
    const double mass = trace_form(density_, unit_element(model()));
    if (std::abs(mass - 1.0) > kStateNormTol)
      throw NotNormalized("state mass " + std::to_string(mass) +
                          " is not 1");
    margin_ = ejlab::positivity_margin(density_);
    if (margin_ < -tol)
      throw NotPositive("state density has positivity margin " +
                        std::to_string(margin_));
  }

  double operator()(const AlgebraElement& x) const {
    return trace_form(density_, x);
  }

  double operator()(const Event& e) const { return (*this)(e.element()); }

  const AlgebraElement& density() const { return density_; }
  const AlgebraModel& model() const { return *density_.model; }
  double positivity_margin() const { return margin_; }

 private:
  AlgebraElement density_;
  double margin_ = 0.0;
};

/// mu(f | e) = mu(U_e f) / mu(e).  Throws when mu(e) <= eps; campaign code
/// that must stay total uses the product form mu(U_e f) instead.
inline double conditional_probability(const State& mu, const Event& f,
                                      const Event& e,
                                      double eps = kNullEventEps) {
  if (&mu.model() != &e.model() || &e.model() != &f.model())
    throw ModelMismatch("state and events belong to different models");
  const double pe = mu(e);
  if (pe <= eps)
    throw ConditionOnNull("conditioning on an event of probability " +
                          std::to_string(pe));
  const SuperOperator u = compression_U(e);
  return mu(element(mu.model(), u * f.element().coords)) / pe;
}

/// Density transport mu_x(y) = mu(x o y) for a positive x normalized under
/// mu; the result is again a state when mu is the trace state.
inline State statistical_state(const State& mu, const AlgebraElement& x,
                               double tol = kPositivityTol,
                               double norm_tol = 1e-8) {
  if (&mu.model() != x.model)
    throw ModelMismatch("state and element belong to different models");
  if (!is_positive(x, tol))
    throw NotPositive("statistical_state requires a positive element");
  const double mass = mu(x);
  if (std::abs(mass - 1.0) > norm_tol)
    throw NotNormalized("element has mu-mass " + std::to_string(mass) +
                        ", expected 1");
  AlgebraElement rho = jordan_product(mu.density(), x);
  const double exact_mass = trace_form(rho, unit_element(*x.model));
  rho.coords /= exact_mass;
  return State(std::move(rho), tol);
}

}  // namespace ejlab
