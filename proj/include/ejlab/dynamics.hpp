#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ejlab/expm.hpp"
#include "ejlab/linalg.hpp"
#include "ejlab/sampling.hpp"

namespace ejlab {

/// Result of probing whether a superoperator maps the positive cone into
/// itself, by the worst positivity margin over probe elements.
struct ConePositivity {
  bool positive = false;
  double min_margin = 0.0;
  int samples = 0;
};

/// Probes P against the unit, random squares and random events (all
/// normalized), recording min over probes of the smallest eigenvalue of
/// L_{P x}.  Self-duality of the cone makes this a sound one-sided test:
/// a genuine violation shows up as a clearly negative margin.
inline ConePositivity cone_positivity_check(const AlgebraModel& m,
                                            const SuperOperator& p,
                                            int samples, Rng& rng,
                                            double tol = kPositivityTol) {
  if (samples < 1) throw ConfigError("cone check needs at least one sample");
  if (p.rows() != m.dim || p.cols() != m.dim)
    throw ConfigError("superoperator does not match the model dimension");
  double min_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x;
    if (s == 0) {
      x = m.unit;
    } else if (s % 2 == 1) {
      x = random_square(m, rng).coords;
    } else {
      x = random_event(m, rng).element().coords;
    }
    const double nrm = x.norm();
    if (nrm < 1e-12) continue;
    x /= nrm;
    min_margin =
        std::min(min_margin, positivity_margin(element(m, p * x)));
  }
  return ConePositivity{min_margin >= -tol, min_margin, samples};
}

/// One witness pair (state, element) with mu(x) = 0 and x >= 0, kept for
/// replay when a classification is challenged.
struct WitnessPair {
  Eigen::VectorXd state_coords;
  Eigen::VectorXd element_coords;
  double value = 0.0;
};

struct ClassifyConfig {
  int events = 6;
  int states_per_event = 3;
  int elements_per_event = 3;
  int cone_samples = 8;
  std::vector<double> t_grid{0.1, 1.0, 3.0};
  std::uint64_t seed = 0x77697468ULL;
  double tol = kPositivityTol;
};

/// Order-theoretic classification of a generator D.
///
/// Witness pairs are constructed, not rejection-sampled: for a random
/// event e, states supported on the orthocomplement satisfy mu(e) = 0,
/// and positive elements x = U_e y lie in the face of e, so mu(x) = 0
/// by the decomposition identity.  A derivation must kill every witness
/// value mu(D x); a dissipation must keep them >= 0.  Both verdicts also
/// require the exponential flow to preserve the cone on the time grid
/// (forward only for dissipations, both directions for derivations),
/// which makes "derivation implies dissipation" structural.
struct GeneratorClassification {
  bool is_derivation = false;
  bool is_dissipation = false;
  bool is_skew = false;
  double worst_violation = 0.0;   // max |mu(D x)| over witnesses
  double min_signed = 0.0;        // min mu(D x) over witnesses
  double skew_residual = 0.0;     // ||D 1||
  double max_witness_mass = 0.0;  // max mu(x), sanity of the construction
  double exp_margin_forward = 0.0;
  double exp_margin_backward = 0.0;
  int witness_count = 0;
  std::vector<WitnessPair> extremal_witnesses;
};

inline GeneratorClassification classify_generator(
    const AlgebraModel& m, const SuperOperator& d,
    const ClassifyConfig& cfg = {}) {
  if (d.rows() != m.dim || d.cols() != m.dim)
    throw ConfigError("generator does not match the model dimension");
  Rng rng(cfg.seed);
  GeneratorClassification r;
  r.skew_residual = (d * m.unit).norm();
  r.min_signed = std::numeric_limits<double>::infinity();

  WitnessPair worst_abs;
  for (int ev = 0; ev < cfg.events; ++ev) {
    const Event e = random_event(m, rng);
    const Event ec = orthocomplement(e);
    const SuperOperator ue = compression_U(e);
    std::vector<State> states;
    for (int s = 0; s < cfg.states_per_event; ++s)
      states.push_back(random_state_on(ec, rng));
    for (int ex = 0; ex < cfg.elements_per_event; ++ex) {
      Eigen::VectorXd x = ue * random_square(m, rng).coords;
      const double nrm = x.norm();
      if (nrm < 1e-12) continue;
      x /= nrm;
      const Eigen::VectorXd dx = d * x;
      for (const State& mu : states) {
        const double mass = mu(element(m, x));
        r.max_witness_mass = std::max(r.max_witness_mass, std::abs(mass));
        const double v = mu.density().coords.dot(m.gram * dx);
        ++r.witness_count;
        r.min_signed = std::min(r.min_signed, v);
        if (std::abs(v) >= r.worst_violation) {
          r.worst_violation = std::abs(v);
          worst_abs =
              WitnessPair{mu.density().coords, x, v};
        }
      }
    }
  }
  if (r.witness_count > 0) r.extremal_witnesses.push_back(worst_abs);
  if (r.witness_count == 0)
    r.min_signed = 0.0;

  double fwd = std::numeric_limits<double>::infinity();
  double bwd = std::numeric_limits<double>::infinity();
  for (double t : cfg.t_grid) {
    fwd = std::min(fwd, cone_positivity_check(m, exp_superoperator(d, t),
                                              cfg.cone_samples, rng, cfg.tol)
                            .min_margin);
    bwd = std::min(bwd, cone_positivity_check(m, exp_superoperator(d, -t),
                                              cfg.cone_samples, rng, cfg.tol)
                            .min_margin);
  }
  r.exp_margin_forward = fwd;
  r.exp_margin_backward = bwd;

  r.is_dissipation =
      r.min_signed >= -cfg.tol && r.exp_margin_forward >= -cfg.tol;
  r.is_derivation = r.worst_violation <= cfg.tol &&
                    r.exp_margin_forward >= -cfg.tol &&
                    r.exp_margin_backward >= -cfg.tol;
  r.is_skew = r.skew_residual <= cfg.tol;
  return r;
}

/// Two-event relaxation generator D = P_e P_f - I built from the
/// measurement channels P = U + U'.  Generates a positive semigroup that
/// fixes the unit.
inline SuperOperator semigroup_generator(const Event& e, const Event& f) {
  if (&e.model() != &f.model())
    throw ModelMismatch("semigroup events belong to different models");
  const SuperOperator pe = lueders_channel(e);
  const SuperOperator pf = lueders_channel(f);
  return pe * pf - SuperOperator::Identity(pe.rows(), pe.cols());
}

/// Residual of the closed-form exponential of the difference generator
/// T_e - T_e':  exp(t (T_e - T_e')) = I + e^t U_e + e^-t U_e' - U_e - U_e'.
/// The time range is capped so e^|t| stays well inside double precision
/// relative accuracy for the comparison.
inline double exp_identity_residual(const Event& e, double t) {
  if (std::abs(t) > 10.0)
    throw ConfigError("exp identity residual is validated for |t| <= 10");
  const AlgebraModel& m = e.model();
  const int d = m.dim;
  const SuperOperator id = SuperOperator::Identity(d, d);
  const SuperOperator le = compression_T(e);
  const SuperOperator lec = id - le;
  const SuperOperator ue = 2.0 * le * le - le;
  const SuperOperator uec = 2.0 * lec * lec - lec;
  const SuperOperator lhs = exp_superoperator(2.0 * le - id, t);
  const SuperOperator rhs =
      id + std::exp(t) * ue + std::exp(-t) * uec - ue - uec;
  return operator_norm(lhs - rhs);
}

}  // namespace ejlab
