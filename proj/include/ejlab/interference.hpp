#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "ejlab/linalg.hpp"
#include "ejlab/logic.hpp"

namespace ejlab {

/// Square-root arguments in the probability bounds are tiny products that
/// can round slightly negative; anything below this witnesses a real
/// positivity bug and aborts instead of being clamped.
inline constexpr double kSqrtClampFloor = -1e-12;

namespace detail {
inline double clamped_sqrt_arg(double v, double* max_clamp) {
  if (v >= 0.0) return v;
  if (v < kSqrtClampFloor)
    throw NotPositive("square-root argument " + std::to_string(v) +
                      " is negative beyond rounding; state positivity is "
                      "broken");
  if (max_clamp != nullptr) *max_clamp = std::max(*max_clamp, -v);
  return 0.0;
}
}  // namespace detail

/// Identifies one sampled configuration for replay.
struct SampleContext {
  Kind kind = Kind::real;
  int n = 0;
  std::uint64_t master_seed = 0;
  long sample_index = -1;
  std::uint64_t sample_seed = 0;
};

/// Per-sample record of the interference diagnostics.  Fields not filled
/// by the producing check stay zero.  Slack convention: slack >= 0 means
/// the inequality holds with margin, residuals are absolute values.
struct InterferenceReport {
  double i3 = 0.0;
  double additivity_residual = 0.0;
  double interference_term = 0.0;
  double lower_bound_slack = 0.0;
  double upper_bound_slack = 0.0;
  double symmetry_residual = 0.0;
  double decomposition_slack = 0.0;
  double sqrt_clamp = 0.0;
  SampleContext context;
};

/// Third-order interference of three pairwise orthogonal events against a
/// target event f, in the product form
///   I3 = mu(U_{e1+e2+e3} f) - sum_pairs mu(U_{ei+ej} f) + sum_i mu(U_ei f),
/// which never divides by a condition probability.  Vanishes identically
/// in this theory; the campaign measures the numerical size.
inline double sorkin_I3(const State& mu, const Event& e1, const Event& e2,
                        const Event& e3, const Event& f,
                        double tol = kEventTol) {
  const AlgebraModel& m = mu.model();
  if (&e1.model() != &m || &e2.model() != &m || &e3.model() != &m ||
      &f.model() != &m)
    throw ModelMismatch("sorkin_I3 operands belong to different models");
  if (!orthogonal(e1, e2, tol) || !orthogonal(e1, e3, tol) ||
      !orthogonal(e2, e3, tol))
    throw NotOrthogonal("sorkin_I3 requires pairwise orthogonal events");
  const SuperOperator l1 = compression_T(e1);
  const SuperOperator l2 = compression_T(e2);
  const SuperOperator l3 = compression_T(e3);
  const Eigen::VectorXd& fc = f.element().coords;
  auto term = [&](const SuperOperator& l) {
    const Eigen::VectorXd uf = 2.0 * (l * (l * fc)) - l * fc;
    return mu(element(m, uf));
  };
  return term(l1 + l2 + l3) - term(l1 + l2) - term(l1 + l3) - term(l2 + l3) +
         term(l1) + term(l2) + term(l3);
}

/// Spectral-norm defect of T-additivity on an orthogonal pair:
/// || T_{e+f} - T_e - T_f ||.  Zero exactly when I3 vanishes for all
/// states, which is the second-order structure of the theory.
inline double t_additivity_residual(const Event& e, const Event& f,
                                    double tol = kEventTol) {
  if (&e.model() != &f.model())
    throw ModelMismatch("t_additivity operands belong to different models");
  if (!orthogonal(e, f, tol))
    throw NotOrthogonal("t_additivity_residual requires orthogonal events");
  const Event sum = event_sum(e, f, tol);
  const SuperOperator defect =
      compression_T(sum) - compression_T(e) - compression_T(f);
  return operator_norm(defect);
}

/// Evaluates the second-order bound family for a state mu and events e, f:
///   interference term  d = mu(f) - mu(U_e f) - mu(U_e' f)
///   lower slack        d + 2 sqrt(mu(U_e f) mu(U_e' f))        >= 0
///   upper slack        2 sqrt(mu(U_e f') mu(U_e' f')) - d      >= 0
///   symmetry residual  |mu(U_e f') + mu(U_e' f) - mu(U_f e') - mu(U_f' e)|
///   decomposition slack 2 mu(U_e f) + 2 mu(U_e' f) - mu(f)     >= 0
/// all in the division-free product form.
inline InterferenceReport interference_bounds(const State& mu, const Event& e,
                                              const Event& f) {
  const AlgebraModel& m = mu.model();
  if (&e.model() != &m || &f.model() != &m)
    throw ModelMismatch("interference_bounds operands belong to different "
                        "models");
  const int d = m.dim;
  const SuperOperator id = SuperOperator::Identity(d, d);
  const SuperOperator le = compression_T(e);
  const SuperOperator lec = id - le;
  const SuperOperator ue = 2.0 * le * le - le;
  const SuperOperator uec = 2.0 * lec * lec - lec;
  const SuperOperator lf = compression_T(f);
  const SuperOperator lfc = id - lf;
  const SuperOperator uf = 2.0 * lf * lf - lf;
  const SuperOperator ufc = 2.0 * lfc * lfc - lfc;

  const Eigen::VectorXd& fc = f.element().coords;
  const Eigen::VectorXd fcc = m.unit - fc;
  const Eigen::VectorXd& ec = e.element().coords;
  const Eigen::VectorXd ecc = m.unit - ec;

  auto value = [&](const SuperOperator& op, const Eigen::VectorXd& x) {
    return mu(element(m, op * x));
  };

  const double a1 = value(ue, fc);    // mu(U_e f)
  const double a2 = value(uec, fc);   // mu(U_e' f)
  const double b1 = value(ue, fcc);   // mu(U_e f')
  const double b2 = value(uec, fcc);  // mu(U_e' f')
  const double c1 = value(uf, ecc);   // mu(U_f e')
  const double c2 = value(ufc, ec);   // mu(U_f' e)
  const double pf = mu(f);

  InterferenceReport r;
  r.interference_term = pf - a1 - a2;
  const double clamp0 =
      detail::clamped_sqrt_arg(a1, &r.sqrt_clamp) *
      detail::clamped_sqrt_arg(a2, &r.sqrt_clamp);
  const double clamp1 =
      detail::clamped_sqrt_arg(b1, &r.sqrt_clamp) *
      detail::clamped_sqrt_arg(b2, &r.sqrt_clamp);
  r.lower_bound_slack = r.interference_term + 2.0 * std::sqrt(clamp0);
  r.upper_bound_slack = 2.0 * std::sqrt(clamp1) - r.interference_term;
  r.symmetry_residual = std::abs(b1 + a2 - c1 - c2);
  r.decomposition_slack = 2.0 * a1 + 2.0 * a2 - pf;
  return r;
}

}  // namespace ejlab
