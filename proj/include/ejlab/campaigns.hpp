#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ejlab/dynamics.hpp"
#include "ejlab/interference.hpp"
#include "ejlab/lie.hpp"
#include "ejlab/logic.hpp"
#include "ejlab/sampling.hpp"
#include "ejlab/trace_state.hpp"
#include "ejlab/vn.hpp"

namespace ejlab {

/// Shared campaign parameters, mirroring the CLI flags.
struct CampaignConfig {
  Kind kind = Kind::complex;
  int n = 3;
  std::uint64_t seed = 1;
  long samples = 1000;
  double tol = 1e-9;
};

/// One recorded tolerance violation, carrying enough data (sample seed and
/// the sampled coordinates) to replay the configuration in isolation.
struct Violation {
  std::string check;
  long sample = -1;
  std::uint64_t sample_seed = 0;
  double value = 0.0;
  double threshold = 0.0;
  std::map<std::string, Eigen::VectorXd> witness;
};

inline constexpr double kLieClosureTol = 1e-8;

// ---------------------------------------------------------------------------
// Third-order interference.

struct I3Row {
  long sample = 0;
  std::uint64_t seed = 0;
  double i3 = 0.0;
  double additivity_residual = 0.0;
};

struct I3Result {
  CampaignConfig config;
  double max_abs_i3 = 0.0;
  double max_additivity_residual = 0.0;
  std::vector<I3Row> rows;
  std::vector<Violation> violations;
};

/// Samples (state, orthogonal triple, target event) configurations and
/// records the seven-term alternating sum plus the operator additivity
/// defect of the sampled orthogonal pair.
inline I3Result run_i3(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  I3Result res;
  res.config = cfg;
  res.rows.reserve(static_cast<std::size_t>(cfg.samples));
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const std::array<Event, 3> triple = random_orthogonal_triple(m, rng);
    const Event f = random_event(m, rng);
    const State mu = random_state(m, rng);
    const double i3 = sorkin_I3(mu, triple[0], triple[1], triple[2], f);
    const double add = t_additivity_residual(triple[0], triple[1]);
    res.rows.push_back(I3Row{s, seed, i3, add});
    res.max_abs_i3 = std::max(res.max_abs_i3, std::abs(i3));
    res.max_additivity_residual = std::max(res.max_additivity_residual, add);
    if (std::abs(i3) > cfg.tol)
      res.violations.push_back(Violation{
          "sorkin_i3", s, seed, i3, cfg.tol,
          {{"state", mu.density().coords},
           {"e1", triple[0].element().coords},
           {"e2", triple[1].element().coords},
           {"e3", triple[2].element().coords},
           {"f", f.element().coords}}});
    if (add > cfg.tol)
      res.violations.push_back(Violation{
          "t_additivity", s, seed, add, cfg.tol,
          {{"e1", triple[0].element().coords},
           {"e2", triple[1].element().coords}}});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Conditional-probability bounds.

struct BoundsRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double interference_term = 0.0;
  double lower_bound_slack = 0.0;
  double upper_bound_slack = 0.0;
  double symmetry_residual = 0.0;
  double decomposition_slack = 0.0;
};

struct BoundsResult {
  CampaignConfig config;
  double min_lower_bound_slack = std::numeric_limits<double>::infinity();
  double min_upper_bound_slack = std::numeric_limits<double>::infinity();
  double max_symmetry_residual = 0.0;
  double min_decomposition_slack = std::numeric_limits<double>::infinity();
  double max_abs_interference = 0.0;
  double max_sqrt_clamp = 0.0;
  std::vector<BoundsRow> rows;
  std::vector<Violation> violations;
};

inline BoundsResult run_bounds(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  BoundsResult res;
  res.config = cfg;
  res.rows.reserve(static_cast<std::size_t>(cfg.samples));
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const State mu = random_state(m, rng);
    const Event e = random_event(m, rng);
    const Event f = random_event(m, rng);
    InterferenceReport rep = interference_bounds(mu, e, f);
    rep.context = SampleContext{cfg.kind, cfg.n, cfg.seed, s, seed};
    res.rows.push_back(BoundsRow{s, seed, rep.interference_term,
                                 rep.lower_bound_slack, rep.upper_bound_slack,
                                 rep.symmetry_residual,
                                 rep.decomposition_slack});
    res.min_lower_bound_slack =
        std::min(res.min_lower_bound_slack, rep.lower_bound_slack);
    res.min_upper_bound_slack =
        std::min(res.min_upper_bound_slack, rep.upper_bound_slack);
    res.max_symmetry_residual =
        std::max(res.max_symmetry_residual, rep.symmetry_residual);
    res.min_decomposition_slack =
        std::min(res.min_decomposition_slack, rep.decomposition_slack);
    res.max_abs_interference =
        std::max(res.max_abs_interference, std::abs(rep.interference_term));
    res.max_sqrt_clamp = std::max(res.max_sqrt_clamp, rep.sqrt_clamp);
    auto witness = [&]() {
      return std::map<std::string, Eigen::VectorXd>{
          {"state", mu.density().coords},
          {"e", e.element().coords},
          {"f", f.element().coords}};
    };
    if (rep.lower_bound_slack < -cfg.tol)
      res.violations.push_back(Violation{"lower_bound", s, seed,
                                         rep.lower_bound_slack, cfg.tol,
                                         witness()});
    if (rep.upper_bound_slack < -cfg.tol)
      res.violations.push_back(Violation{"upper_bound", s, seed,
                                         rep.upper_bound_slack, cfg.tol,
                                         witness()});
    if (rep.symmetry_residual > cfg.tol)
      res.violations.push_back(Violation{"symmetry", s, seed,
                                         rep.symmetry_residual, cfg.tol,
                                         witness()});
    if (rep.decomposition_slack < -cfg.tol)
      res.violations.push_back(Violation{"decomposition", s, seed,
                                         rep.decomposition_slack, cfg.tol,
                                         witness()});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Compression operator identities.

struct OperatorRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double u_idempotent = 0.0;
  double s_involution = 0.0;
  double tst_identity = 0.0;
  double u_definition = 0.0;
  double u_orthogonality = 0.0;
  double t_fixes_subevent = 0.0;
  double state_invariance = 0.0;
};

struct OperatorResult {
  CampaignConfig config;
  double max_u_idempotent = 0.0;
  double max_s_involution = 0.0;
  double max_tst_identity = 0.0;
  double max_u_definition = 0.0;
  double max_u_orthogonality = 0.0;
  double max_t_fixes_subevent = 0.0;
  double max_state_invariance = 0.0;
  std::vector<OperatorRow> rows;
  std::vector<Violation> violations;
};

/// Exercises U^2 = U, S^2 = I, T + S T = 2 U, U = 2 T^2 - T on random
/// events (including the rank-0 and rank-n extremes), plus the orthogonal
/// family: U_e U_f = 0 and U_e f = 0 for orthogonal events, T_e f = f for
/// f below e, and mu(U_e x) = mu(x) for states supported on e.
inline OperatorResult run_operator_identities(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  const SuperOperator id = SuperOperator::Identity(m.dim, m.dim);
  OperatorResult res;
  res.config = cfg;
  res.rows.reserve(static_cast<std::size_t>(cfg.samples));
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const Event e = random_event(m, rng.below(m.n + 1), rng);
    const Compressions c = compressions(e);
    OperatorRow row;
    row.sample = s;
    row.seed = seed;
    row.u_idempotent = operator_norm(c.U * c.U - c.U);
    row.s_involution = operator_norm(c.S * c.S - id);
    row.tst_identity = operator_norm(c.T + c.S * c.T - 2.0 * c.U);
    row.u_definition = operator_norm(c.U - (2.0 * c.T * c.T - c.T));

    const std::array<Event, 3> g = random_orthogonal_triple(m, rng);
    const SuperOperator u1 = compression_U(g[0]);
    const SuperOperator u2 = compression_U(g[1]);
    row.u_orthogonality = std::max(
        operator_norm(u1 * u2), (u1 * g[1].element().coords).norm());
    const Event big = event_sum(g[0], g[1]);
    row.t_fixes_subevent =
        (compression_T(big) * g[0].element().coords - g[0].element().coords)
            .norm();
    const State mu = random_state_on(big, rng);
    const AlgebraElement x = random_element(m, rng);
    row.state_invariance = std::abs(
        mu(element(m, compression_U(big) * x.coords)) - mu(x));
    res.rows.push_back(row);

    res.max_u_idempotent = std::max(res.max_u_idempotent, row.u_idempotent);
    res.max_s_involution = std::max(res.max_s_involution, row.s_involution);
    res.max_tst_identity = std::max(res.max_tst_identity, row.tst_identity);
    res.max_u_definition = std::max(res.max_u_definition, row.u_definition);
    res.max_u_orthogonality =
        std::max(res.max_u_orthogonality, row.u_orthogonality);
    res.max_t_fixes_subevent =
        std::max(res.max_t_fixes_subevent, row.t_fixes_subevent);
    res.max_state_invariance =
        std::max(res.max_state_invariance, row.state_invariance);

    const std::map<std::string, Eigen::VectorXd> witness{
        {"e", e.element().coords}};
    auto flag = [&](const char* name, double value, double threshold) {
      if (value > threshold)
        res.violations.push_back(
            Violation{name, s, seed, value, threshold, witness});
    };
    flag("u_idempotent", row.u_idempotent, cfg.tol);
    flag("s_involution", row.s_involution, cfg.tol);
    flag("tst_identity", row.tst_identity, cfg.tol);
    flag("u_definition", row.u_definition, cfg.tol);
    flag("u_orthogonality", row.u_orthogonality, cfg.tol);
    flag("t_fixes_subevent", row.t_fixes_subevent, cfg.tol);
    flag("state_invariance", row.state_invariance,
         std::max(cfg.tol, 1e-8));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Closed-form exponential identity.

struct ExpIdentityRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double t = 0.0;
  double residual = 0.0;
};

struct ExpIdentityResult {
  CampaignConfig config;
  std::vector<double> grid{-3.0, -1.0, -0.1, 0.1, 1.0, 3.0};
  double max_residual = 0.0;
  std::vector<ExpIdentityRow> rows;
  std::vector<Violation> violations;
};

inline ExpIdentityResult run_exp_identity(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  ExpIdentityResult res;
  res.config = cfg;
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const Event e = random_event(m, rng);
    for (double t : res.grid) {
      const double r = exp_identity_residual(e, t);
      res.rows.push_back(ExpIdentityRow{s, seed, t, r});
      res.max_residual = std::max(res.max_residual, r);
      if (r > cfg.tol)
        res.violations.push_back(Violation{"exp_identity", s, seed, r,
                                           cfg.tol,
                                           {{"e", e.element().coords}}});
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Relaxation semigroups.

struct SemigroupRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double t = 0.0;
  double cone_margin = 0.0;
  double unit_residual = 0.0;
};

struct SemigroupResult {
  CampaignConfig config;
  std::vector<double> grid{0.1, 1.0, 3.0};
  double min_cone_margin = std::numeric_limits<double>::infinity();
  double max_unit_residual = 0.0;
  double max_generator_unit_residual = 0.0;
  std::vector<SemigroupRow> rows;
  std::vector<Violation> violations;
};

/// Builds D = P_e P_f - I for non-commuting event pairs and checks that
/// exp(t D) preserves the cone and fixes the unit along the time grid.
inline SemigroupResult run_semigroup(const CampaignConfig& cfg,
                                     int cone_samples = 8) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  SemigroupResult res;
  res.config = cfg;
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const auto [e, f] = random_noncommuting_pair(m, rng);
    const SuperOperator d = semigroup_generator(e, f);
    res.max_generator_unit_residual =
        std::max(res.max_generator_unit_residual, (d * m.unit).norm());
    const std::map<std::string, Eigen::VectorXd> witness{
        {"e", e.element().coords}, {"f", f.element().coords}};
    for (double t : res.grid) {
      const SuperOperator p = exp_superoperator(d, t);
      const double margin =
          cone_positivity_check(m, p, cone_samples, rng, cfg.tol).min_margin;
      const double unit_res = (p * m.unit - m.unit).norm();
      res.rows.push_back(SemigroupRow{s, seed, t, margin, unit_res});
      res.min_cone_margin = std::min(res.min_cone_margin, margin);
      res.max_unit_residual = std::max(res.max_unit_residual, unit_res);
      if (margin < -cfg.tol)
        res.violations.push_back(
            Violation{"cone_positivity", s, seed, margin, cfg.tol, witness});
      if (unit_res > cfg.tol)
        res.violations.push_back(
            Violation{"unit_fixed", s, seed, unit_res, cfg.tol, witness});
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Order derivations and the generator decomposition.

struct DerivationRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double self_adjoint_worst = 0.0;
  double reconstruction_residual = 0.0;
  double skew_part_residual = 0.0;
  double skew_part_worst = 0.0;
  bool is_derivation = false;
};

struct DerivationsResult {
  CampaignConfig config;
  double max_self_adjoint_worst = 0.0;
  double max_reconstruction_residual = 0.0;
  double max_skew_part_residual = 0.0;
  double max_skew_part_worst = 0.0;
  double min_exp_margin = std::numeric_limits<double>::infinity();
  long derivation_count = 0;
  std::vector<DerivationRow> rows;
  std::vector<Violation> violations;
};

/// For random a and skew K: certifies that L_a is an order derivation
/// (witness values vanish, flows preserve the cone both ways), and that
/// the decomposition of D = L_a + K recovers a = D 1 with a skew
/// remainder that is again a derivation.
inline DerivationsResult run_derivations(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  DerivationsResult res;
  res.config = cfg;
  res.rows.reserve(static_cast<std::size_t>(cfg.samples));
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const AlgebraElement a = random_element(m, rng);
    const SuperOperator la = mult_operator(a);
    const SuperOperator k = random_skew_generator(m, rng);
    const SuperOperator d = la + k;

    ClassifyConfig ccfg;
    ccfg.seed = rng.bits();
    ccfg.tol = cfg.tol;
    const GeneratorClassification ca = classify_generator(m, la, ccfg);

    const Eigen::VectorXd recovered = d * m.unit;
    const double recon = (recovered - a.coords).norm();
    const SuperOperator remainder =
        d - mult_operator(element(m, recovered));
    ccfg.seed = rng.bits();
    const GeneratorClassification ck = classify_generator(m, remainder, ccfg);

    DerivationRow row{s,
                      seed,
                      ca.worst_violation,
                      recon,
                      ck.skew_residual,
                      ck.worst_violation,
                      ca.is_derivation};
    res.rows.push_back(row);
    res.max_self_adjoint_worst =
        std::max(res.max_self_adjoint_worst, ca.worst_violation);
    res.max_reconstruction_residual =
        std::max(res.max_reconstruction_residual, recon);
    res.max_skew_part_residual =
        std::max(res.max_skew_part_residual, ck.skew_residual);
    res.max_skew_part_worst =
        std::max(res.max_skew_part_worst, ck.worst_violation);
    res.min_exp_margin = std::min(
        res.min_exp_margin,
        std::min(std::min(ca.exp_margin_forward, ca.exp_margin_backward),
                 std::min(ck.exp_margin_forward, ck.exp_margin_backward)));
    if (ca.is_derivation) ++res.derivation_count;

    const std::map<std::string, Eigen::VectorXd> witness{{"a", a.coords}};
    if (ca.worst_violation > cfg.tol)
      res.violations.push_back(Violation{"self_adjoint_derivation", s, seed,
                                         ca.worst_violation, cfg.tol,
                                         witness});
    if (!ca.is_derivation)
      res.violations.push_back(Violation{
          "flow_cone_positivity", s, seed,
          std::min(ca.exp_margin_forward, ca.exp_margin_backward), cfg.tol,
          witness});
    if (recon > cfg.tol)
      res.violations.push_back(Violation{"unit_reconstruction", s, seed,
                                         recon, cfg.tol, witness});
    if (ck.skew_residual > cfg.tol || ck.worst_violation > cfg.tol)
      res.violations.push_back(Violation{
          "skew_remainder", s, seed,
          std::max(ck.skew_residual, ck.worst_violation), cfg.tol, witness});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Trace state.

struct TraceValidationRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;
};

struct TraceStateResult {
  CampaignConfig config;
  Eigen::VectorXd density;
  int nullspace_dim = 0;
  double constraint_residual = 0.0;
  double positivity_margin = 0.0;
  double validation_residual = 0.0;
  double distance_to_uniform = 0.0;
  Eigen::VectorXd singular_values;
  std::vector<TraceValidationRow> rows;
  std::vector<Violation> violations;
};

/// Solves for the channel-invariant state from a moderate random event
/// set, then validates invariance on cfg.samples fresh (event, element)
/// pairs.  The distance to the uniform density unit/n is reported; for
/// the simple matrix models it is the known answer.
inline TraceStateResult run_trace_state(const CampaignConfig& cfg,
                                        int solver_events = 0) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  if (solver_events <= 0)
    solver_events = std::max(8, std::min(48, 2 * m.dim));
  Rng rng(Rng::derive(cfg.seed, 0));
  std::vector<Event> events;
  events.reserve(static_cast<std::size_t>(solver_events));
  for (int i = 0; i < solver_events; ++i) events.push_back(random_event(m, rng));

  const TraceStateSolution sol = find_trace_state(m, events, cfg.tol);

  TraceStateResult res;
  res.config = cfg;
  res.density = sol.state.density().coords;
  res.nullspace_dim = sol.nullspace_dim;
  res.constraint_residual = sol.constraint_residual;
  res.positivity_margin = sol.positivity_margin;
  res.singular_values = sol.singular_values;
  res.distance_to_uniform =
      (res.density - m.unit / static_cast<double>(m.n)).norm();

  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s) + 1);
    Rng vrng(seed);
    const Event e = random_event(m, vrng);
    const AlgebraElement x = random_element(m, vrng);
    const double r = validate_trace_state(sol.state, {e}, {x});
    res.rows.push_back(TraceValidationRow{s, seed, r});
    res.validation_residual = std::max(res.validation_residual, r);
    if (r > cfg.tol)
      res.violations.push_back(Violation{"channel_invariance", s, seed, r,
                                         cfg.tol,
                                         {{"e", e.element().coords},
                                          {"x", x.coords}}});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Derivation Lie algebra.

struct LieResult {
  CampaignConfig config;
  int dimension = 0;
  int expected_dimension = 0;
  double closure_residual = 0.0;
  double singular_gap = 0.0;
  double max_skew_residual = 0.0;
  double max_derivation_violation = 0.0;
  double min_exp_margin = 0.0;
  Eigen::VectorXd singular_values;
  std::vector<Violation> violations;
};

inline LieResult run_lie(const CampaignConfig& cfg) {
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  Rng rng(cfg.seed);
  const int budget = static_cast<int>(
      std::max<long>(cfg.samples, static_cast<long>(m.dim) * m.dim));
  const LieAlgebraReport rep = skew_lie_algebra(m, budget, rng);

  LieResult res;
  res.config = cfg;
  res.dimension = rep.dimension;
  res.expected_dimension = lie_dimension_oracle(cfg.kind, cfg.n);
  res.closure_residual = rep.closure_residual;
  res.singular_gap = rep.singular_gap;
  res.max_skew_residual = rep.max_skew_residual;
  res.max_derivation_violation = rep.max_derivation_violation;
  res.min_exp_margin = rep.min_exp_margin;
  res.singular_values = rep.singular_values;
  if (res.dimension != res.expected_dimension)
    res.violations.push_back(Violation{
        "lie_dimension", 0, cfg.seed, static_cast<double>(res.dimension),
        static_cast<double>(res.expected_dimension), {}});
  if (res.closure_residual > kLieClosureTol)
    res.violations.push_back(Violation{"lie_closure", 0, cfg.seed,
                                       res.closure_residual, kLieClosureTol,
                                       {}});
  if (res.max_skew_residual > cfg.tol)
    res.violations.push_back(Violation{"basis_skew", 0, cfg.seed,
                                       res.max_skew_residual, cfg.tol, {}});
  if (res.max_derivation_violation > cfg.tol)
    res.violations.push_back(Violation{"basis_derivation", 0, cfg.seed,
                                       res.max_derivation_violation, cfg.tol,
                                       {}});
  return res;
}

// ---------------------------------------------------------------------------
// Matrix-model cross-check.

struct CrosscheckRow {
  long sample = 0;
  std::uint64_t seed = 0;
  double u_error = 0.0;
  double t_error = 0.0;
  double s_error = 0.0;
  double flow_r_error = 0.0;
  double flow_d_spectrum_error = 0.0;
  double flow_d_abstract_error = 0.0;
};

struct CrosscheckResult {
  CampaignConfig config;
  double max_u_error = 0.0;
  double max_t_error = 0.0;
  double max_s_error = 0.0;
  double max_flow_r_error = 0.0;
  double max_flow_d_spectrum_error = 0.0;
  double max_flow_d_abstract_error = 0.0;
  std::vector<CrosscheckRow> rows;
  std::vector<Violation> violations;
};

/// Compares every abstract operation against the closed matrix forms on
/// the associative models: compressions against e a e and friends, the
/// symmetric flow against e^{tb/2} a e^{tb/2}, and the skew flow against
/// the unitary conjugation (spectrum preservation plus the generator
/// route).
inline CrosscheckResult run_crosscheck(const CampaignConfig& cfg) {
  if (cfg.kind != Kind::real && cfg.kind != Kind::complex)
    throw ConfigError("crosscheck needs a real or complex matrix model");
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  CrosscheckResult res;
  res.config = cfg;
  res.rows.reserve(static_cast<std::size_t>(cfg.samples));
  for (long s = 0; s < cfg.samples; ++s) {
    const std::uint64_t seed =
        Rng::derive(cfg.seed, static_cast<std::uint64_t>(s));
    Rng rng(seed);
    const Event e = random_event(m, rng);
    const AlgebraElement a = random_element(m, rng);
    const ComplexMatrix em = to_matrix(m, e.element().coords);
    const ComplexMatrix am = to_matrix(m, a.coords);
    const VnCompressions closed = vn_closed_forms(em, am, 1e-8);
    const Compressions c = compressions(e);

    CrosscheckRow row;
    row.sample = s;
    row.seed = seed;
    row.u_error = (to_matrix(m, c.U * a.coords) - closed.U).norm();
    row.t_error = (to_matrix(m, c.T * a.coords) - closed.T).norm();
    row.s_error = (to_matrix(m, c.S * a.coords) - closed.S).norm();

    const AlgebraElement b = random_element(m, rng);
    const double t = rng.uniform(-2.0, 2.0);
    const VnFlows flows = vn_dynamics(to_matrix(m, b.coords), am, t);
    row.flow_r_error =
        (to_matrix(m, exp_superoperator(mult_operator(b), t) * a.coords) -
         flows.flow_R)
            .norm();

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sa(am);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sd(flows.flow_D);
    row.flow_d_spectrum_error =
        (sa.eigenvalues() - sd.eigenvalues()).cwiseAbs().maxCoeff();
    // The commutator rotation has a coordinate generator only over complex
    // entries; for real symmetric matrices it leaves the algebra, so only
    // the spectrum invariance above applies.
    row.flow_d_abstract_error =
        cfg.kind == Kind::complex
            ? (to_matrix(m,
                         exp_superoperator(vn_skew_generator(m, b.coords), t) *
                             a.coords) -
               flows.flow_D)
                  .norm()
            : 0.0;

    res.rows.push_back(row);
    res.max_u_error = std::max(res.max_u_error, row.u_error);
    res.max_t_error = std::max(res.max_t_error, row.t_error);
    res.max_s_error = std::max(res.max_s_error, row.s_error);
    res.max_flow_r_error = std::max(res.max_flow_r_error, row.flow_r_error);
    res.max_flow_d_spectrum_error =
        std::max(res.max_flow_d_spectrum_error, row.flow_d_spectrum_error);
    res.max_flow_d_abstract_error =
        std::max(res.max_flow_d_abstract_error, row.flow_d_abstract_error);

    const std::map<std::string, Eigen::VectorXd> witness{
        {"e", e.element().coords}, {"a", a.coords}, {"b", b.coords}};
    auto flag = [&](const char* name, double value) {
      if (value > cfg.tol)
        res.violations.push_back(
            Violation{name, s, seed, value, cfg.tol, witness});
    };
    flag("compression_u", row.u_error);
    flag("compression_t", row.t_error);
    flag("compression_s", row.s_error);
    flag("flow_r", row.flow_r_error);
    flag("flow_d_spectrum", row.flow_d_spectrum_error);
    flag("flow_d_abstract", row.flow_d_abstract_error);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Scalar kernel checks (test support).

struct OctonionKernelResult {
  long pairs = 0;
  double max_alternativity = 0.0;
  double max_norm_multiplicativity = 0.0;
  double max_conjugation = 0.0;
  std::vector<Violation> violations;
};

/// Property battery on the raw octonion arithmetic: alternativity,
/// multiplicativity of the norm, and x conj(x) = |x|^2.
inline OctonionKernelResult run_octonion_kernel(long pairs,
                                                std::uint64_t seed,
                                                double tol = 1e-12) {
  OctonionKernelResult res;
  res.pairs = pairs;
  for (long s = 0; s < pairs; ++s) {
    const std::uint64_t sample_seed =
        Rng::derive(seed, static_cast<std::uint64_t>(s));
    Rng rng(sample_seed);
    auto draw = [&]() {
      Octonion o;
      double nrm2 = 0.0;
      for (int i = 0; i < 8; ++i) {
        o.c[static_cast<std::size_t>(i)] = rng.normal();
        nrm2 += o.c[static_cast<std::size_t>(i)] * o.c[static_cast<std::size_t>(i)];
      }
      const double nrm = std::sqrt(nrm2);
      for (int i = 0; i < 8; ++i) o.c[static_cast<std::size_t>(i)] /= nrm;
      return o;
    };
    const Octonion x = draw();
    const Octonion y = draw();
    const Octonion left = (x * x) * y - x * (x * y);
    const Octonion right = (x * y) * y - x * (y * y);
    const double alt = std::max(left.norm(), right.norm());
    const double nm = std::abs((x * y).norm() - x.norm() * y.norm());
    const Octonion cx = x * x.conj() - Octonion::real(x.squared_norm());
    const double conj_res = cx.norm();
    res.max_alternativity = std::max(res.max_alternativity, alt);
    res.max_norm_multiplicativity =
        std::max(res.max_norm_multiplicativity, nm);
    res.max_conjugation = std::max(res.max_conjugation, conj_res);
    auto flag = [&](const char* name, double value) {
      if (value > tol)
        res.violations.push_back(
            Violation{name, s, sample_seed, value, tol, {}});
    };
    flag("alternativity", alt);
    flag("norm_multiplicativity", nm);
    flag("conjugation", conj_res);
  }
  return res;
}

}  // namespace ejlab
