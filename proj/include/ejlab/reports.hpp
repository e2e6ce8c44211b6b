#pragma once

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ejlab/campaigns.hpp"

namespace ejlab {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { json, csv, both };

inline ReportFormat format_from_name(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "both") return ReportFormat::both;
  throw ConfigError("unknown format '" + s + "' (expected json|csv|both)");
}

/// Shortest exact decimal for a double; used by the CSV writer so reruns
/// are byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline nlohmann::json config_json(const CampaignConfig& c) {
  return nlohmann::json{{"model", kind_name(c.kind)},
                        {"n", c.n},
                        {"seed", c.seed},
                        {"samples", c.samples},
                        {"tol", c.tol}};
}

inline nlohmann::json violations_json(const std::vector<Violation>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const Violation& v : vs) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [name, coords] : v.witness) w[name] = vector_json(coords);
    a.push_back(nlohmann::json{{"check", v.check},
                               {"sample", v.sample},
                               {"sample_seed", v.sample_seed},
                               {"value", v.value},
                               {"threshold", v.threshold},
                               {"witness", std::move(w)}});
  }
  return a;
}

inline nlohmann::json report_shell(const char* command,
                                   const CampaignConfig& cfg,
                                   nlohmann::json results,
                                   const std::vector<Violation>& violations) {
  return nlohmann::json{{"schema_version", kReportSchemaVersion},
                        {"command", command},
                        {"config", config_json(cfg)},
                        {"results", std::move(results)},
                        {"violations", violations_json(violations)},
                        {"passed", violations.empty()}};
}

}  // namespace detail

// --- JSON ------------------------------------------------------------------

inline nlohmann::json report_json(const I3Result& r) {
  return detail::report_shell(
      "i3", r.config,
      nlohmann::json{{"max_abs_i3", r.max_abs_i3},
                     {"max_t_additivity_residual", r.max_additivity_residual}},
      r.violations);
}

inline nlohmann::json report_json(const BoundsResult& r) {
  return detail::report_shell(
      "bounds", r.config,
      nlohmann::json{{"min_lower_bound_slack", r.min_lower_bound_slack},
                     {"min_upper_bound_slack", r.min_upper_bound_slack},
                     {"max_symmetry_residual", r.max_symmetry_residual},
                     {"min_decomposition_slack", r.min_decomposition_slack},
                     {"max_abs_interference", r.max_abs_interference},
                     {"max_sqrt_clamp", r.max_sqrt_clamp}},
      r.violations);
}

inline nlohmann::json report_json(const OperatorResult& r) {
  return detail::report_shell(
      "identities", r.config,
      nlohmann::json{{"max_u_idempotent", r.max_u_idempotent},
                     {"max_s_involution", r.max_s_involution},
                     {"max_tst_identity", r.max_tst_identity},
                     {"max_u_definition", r.max_u_definition},
                     {"max_u_orthogonality", r.max_u_orthogonality},
                     {"max_t_fixes_subevent", r.max_t_fixes_subevent},
                     {"max_state_invariance", r.max_state_invariance}},
      r.violations);
}

inline nlohmann::json report_json(const ExpIdentityResult& r) {
  return detail::report_shell(
      "identity", r.config,
      nlohmann::json{{"grid", r.grid}, {"max_residual", r.max_residual}},
      r.violations);
}

inline nlohmann::json report_json(const SemigroupResult& r) {
  return detail::report_shell(
      "semigroup", r.config,
      nlohmann::json{
          {"grid", r.grid},
          {"min_cone_margin", r.min_cone_margin},
          {"max_unit_residual", r.max_unit_residual},
          {"max_generator_unit_residual", r.max_generator_unit_residual}},
      r.violations);
}

inline nlohmann::json report_json(const DerivationsResult& r) {
  return detail::report_shell(
      "derivations", r.config,
      nlohmann::json{
          {"max_self_adjoint_worst", r.max_self_adjoint_worst},
          {"max_reconstruction_residual", r.max_reconstruction_residual},
          {"max_skew_part_residual", r.max_skew_part_residual},
          {"max_skew_part_worst", r.max_skew_part_worst},
          {"min_exp_margin", r.min_exp_margin},
          {"derivation_count", r.derivation_count}},
      r.violations);
}

inline nlohmann::json report_json(const TraceStateResult& r) {
  return detail::report_shell(
      "trace-state", r.config,
      nlohmann::json{
          {"density", detail::vector_json(r.density)},
          {"nullspace_dim", r.nullspace_dim},
          {"constraint_residual", r.constraint_residual},
          {"positivity_margin", r.positivity_margin},
          {"validation_residual", r.validation_residual},
          {"distance_to_uniform", r.distance_to_uniform},
          {"singular_values", detail::vector_json(r.singular_values)}},
      r.violations);
}

inline nlohmann::json report_json(const LieResult& r) {
  return detail::report_shell(
      "lie", r.config,
      nlohmann::json{
          {"dimension", r.dimension},
          {"expected_dimension", r.expected_dimension},
          {"closure_residual", r.closure_residual},
          {"singular_gap", r.singular_gap},
          {"max_skew_residual", r.max_skew_residual},
          {"max_derivation_violation", r.max_derivation_violation},
          {"min_exp_margin", r.min_exp_margin},
          {"singular_values", detail::vector_json(r.singular_values)}},
      r.violations);
}

inline nlohmann::json report_json(const CrosscheckResult& r) {
  return detail::report_shell(
      "crosscheck", r.config,
      nlohmann::json{
          {"max_u_error", r.max_u_error},
          {"max_t_error", r.max_t_error},
          {"max_s_error", r.max_s_error},
          {"max_flow_r_error", r.max_flow_r_error},
          {"max_flow_d_spectrum_error", r.max_flow_d_spectrum_error},
          {"max_flow_d_abstract_error", r.max_flow_d_abstract_error}},
      r.violations);
}

// --- CSV -------------------------------------------------------------------

inline std::string report_csv(const I3Result& r) {
  std::string s = "sample,seed,i3,t_additivity_residual\n";
  for (const I3Row& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.i3) + "," + format_double(row.additivity_residual) +
         "\n";
  return s;
}

inline std::string report_csv(const BoundsResult& r) {
  std::string s =
      "sample,seed,interference_term,lower_bound_slack,upper_bound_slack,"
      "symmetry_residual,decomposition_slack\n";
  for (const BoundsRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.interference_term) + "," +
         format_double(row.lower_bound_slack) + "," +
         format_double(row.upper_bound_slack) + "," +
         format_double(row.symmetry_residual) + "," +
         format_double(row.decomposition_slack) + "\n";
  return s;
}

inline std::string report_csv(const OperatorResult& r) {
  std::string s =
      "sample,seed,u_idempotent,s_involution,tst_identity,u_definition,"
      "u_orthogonality,t_fixes_subevent,state_invariance\n";
  for (const OperatorRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.u_idempotent) + "," +
         format_double(row.s_involution) + "," +
         format_double(row.tst_identity) + "," +
         format_double(row.u_definition) + "," +
         format_double(row.u_orthogonality) + "," +
         format_double(row.t_fixes_subevent) + "," +
         format_double(row.state_invariance) + "\n";
  return s;
}

inline std::string report_csv(const ExpIdentityResult& r) {
  std::string s = "sample,seed,t,residual\n";
  for (const ExpIdentityRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.t) + "," + format_double(row.residual) + "\n";
  return s;
}

inline std::string report_csv(const SemigroupResult& r) {
  std::string s = "sample,seed,t,cone_margin,unit_residual\n";
  for (const SemigroupRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.t) + "," + format_double(row.cone_margin) + "," +
         format_double(row.unit_residual) + "\n";
  return s;
}

inline std::string report_csv(const DerivationsResult& r) {
  std::string s =
      "sample,seed,self_adjoint_worst,reconstruction_residual,"
      "skew_part_residual,skew_part_worst,is_derivation\n";
  for (const DerivationRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.self_adjoint_worst) + "," +
         format_double(row.reconstruction_residual) + "," +
         format_double(row.skew_part_residual) + "," +
         format_double(row.skew_part_worst) + "," +
         (row.is_derivation ? "1" : "0") + "\n";
  return s;
}

inline std::string report_csv(const TraceStateResult& r) {
  std::string s = "sample,seed,validation_residual\n";
  for (const TraceValidationRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.residual) + "\n";
  return s;
}

inline std::string report_csv(const LieResult& r) {
  std::string s = "index,singular_value\n";
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
    s += std::to_string(i) + "," + format_double(r.singular_values(i)) + "\n";
  return s;
}

inline std::string report_csv(const CrosscheckResult& r) {
  std::string s =
      "sample,seed,u_error,t_error,s_error,flow_r_error,"
      "flow_d_spectrum_error,flow_d_abstract_error\n";
  for (const CrosscheckRow& row : r.rows)
    s += std::to_string(row.sample) + "," + std::to_string(row.seed) + "," +
         format_double(row.u_error) + "," + format_double(row.t_error) + "," +
         format_double(row.s_error) + "," + format_double(row.flow_r_error) +
         "," + format_double(row.flow_d_spectrum_error) + "," +
         format_double(row.flow_d_abstract_error) + "\n";
  return s;
}

// --- Files -----------------------------------------------------------------

/// Writes <command>_report.json and/or <command>_samples.csv plus a
/// meta.json sidecar.  The report and CSV are byte-identical across runs
/// of the same configuration; the sidecar carries the wall-clock stamp
/// and is excluded from that guarantee.
inline std::string write_report_files(const std::string& outdir,
                                      const std::string& command,
                                      const nlohmann::json& report,
                                      const std::string& csv,
                                      ReportFormat format) {
  namespace fs = std::filesystem;
  const fs::path dir = outdir.empty() ? fs::path(".") : fs::path(outdir);
  fs::create_directories(dir);
  std::string primary;
  if (format == ReportFormat::json || format == ReportFormat::both) {
    const fs::path p = dir / (command + "_report.json");
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << report.dump(2) << "\n";
    primary = p.string();
  }
  if (format == ReportFormat::csv || format == ReportFormat::both) {
    const fs::path p = dir / (command + "_samples.csv");
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << csv;
    if (primary.empty()) primary = p.string();
  }
  {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    nlohmann::json meta{{"written_at_utc", stamp},
                        {"tool", "ejlab"},
                        {"command", command}};
    std::ofstream out(dir / "meta.json");
    if (out) out << meta.dump(2) << "\n";
  }
  return primary;
}

}  // namespace ejlab
