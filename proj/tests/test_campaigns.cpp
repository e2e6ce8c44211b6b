#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ejlab/campaigns.hpp"
#include "ejlab/reports.hpp"

using namespace ejlab;

namespace {

CampaignConfig small(Kind k, int n, long samples, std::uint64_t seed = 9,
                     double tol = 1e-9) {
  CampaignConfig cfg;
  cfg.kind = k;
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.tol = tol;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Campaigns, I3ReportsAreByteDeterministic) {
  const CampaignConfig cfg = small(Kind::quaternion, 3, 40);
  const I3Result a = run_i3(cfg);
  const I3Result b = run_i3(cfg);
  EXPECT_EQ(report_json(a).dump(2), report_json(b).dump(2));
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(a.rows.size(), 40u);
  EXPECT_LE(a.max_abs_i3, 1e-9);
  EXPECT_LE(a.max_additivity_residual, 1e-9);
  EXPECT_TRUE(a.violations.empty());
}

TEST(Campaigns, ViolationRowsReplayBitExactly) {
  // An absurd tolerance forces violations; the recorded per-sample seed
  // must regenerate the identical configuration and value.
  CampaignConfig cfg = small(Kind::complex, 3, 25, 11, 1e-30);
  const I3Result res = run_i3(cfg);
  ASSERT_FALSE(res.violations.empty());
  const AlgebraModel& m = shared_model(cfg.kind, cfg.n);
  int replayed = 0;
  for (const Violation& v : res.violations) {
    if (v.check != "sorkin_i3") continue;
    EXPECT_EQ(v.sample_seed,
              Rng::derive(cfg.seed, static_cast<std::uint64_t>(v.sample)));
    Rng rng(v.sample_seed);
    const std::array<Event, 3> triple = random_orthogonal_triple(m, rng);
    const Event f = random_event(m, rng);
    const State mu = random_state(m, rng);
    EXPECT_EQ(
        (triple[0].element().coords - v.witness.at("e1")).norm(), 0.0);
    EXPECT_EQ((f.element().coords - v.witness.at("f")).norm(), 0.0);
    EXPECT_EQ((mu.density().coords - v.witness.at("state")).norm(), 0.0);
    EXPECT_EQ(sorkin_I3(mu, triple[0], triple[1], triple[2], f), v.value);
    if (++replayed == 5) break;
  }
  EXPECT_GT(replayed, 0);
}

TEST(Campaigns, ReportShellCarriesSchemaAndConfig) {
  const CampaignConfig cfg = small(Kind::real, 3, 5, 42, 1e-8);
  const nlohmann::json j = report_json(run_bounds(cfg));
  EXPECT_EQ(j.at("schema_version").get<int>(), 1);
  EXPECT_EQ(j.at("command").get<std::string>(), "bounds");
  EXPECT_EQ(j.at("config").at("model").get<std::string>(), "real");
  EXPECT_EQ(j.at("config").at("n").get<int>(), 3);
  EXPECT_EQ(j.at("config").at("seed").get<std::uint64_t>(), 42u);
  EXPECT_EQ(j.at("config").at("samples").get<long>(), 5);
  EXPECT_EQ(j.at("config").at("tol").get<double>(), 1e-8);
  EXPECT_TRUE(j.at("violations").is_array());
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_TRUE(j.at("results").contains("max_symmetry_residual"));
}

TEST(Campaigns, CsvHasHeaderAndOneLinePerRow) {
  const CampaignConfig cfg = small(Kind::complex, 3, 12);
  const std::string csv = report_csv(run_i3(cfg));
  std::istringstream in(csv);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "sample,seed,i3,t_additivity_residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

TEST(Campaigns, BoundsHoldOnSmallRun) {
  const BoundsResult r = run_bounds(small(Kind::octonion, 3, 30));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_symmetry_residual, 1e-9);
  EXPECT_LE(r.max_sqrt_clamp, 1e-12);
  EXPECT_EQ(r.rows.size(), 30u);
}

TEST(Campaigns, OperatorIdentitiesHoldOnSmallRun) {
  for (Kind k : {Kind::real, Kind::octonion}) {
    const OperatorResult r = run_operator_identities(small(k, 3, 25));
    EXPECT_TRUE(r.violations.empty());
    EXPECT_LE(r.max_u_idempotent, 1e-9);
    EXPECT_LE(r.max_s_involution, 1e-9);
    EXPECT_LE(r.max_tst_identity, 1e-9);
    EXPECT_LE(r.max_u_definition, 1e-9);
    EXPECT_LE(r.max_u_orthogonality, 1e-9);
    EXPECT_LE(r.max_t_fixes_subevent, 1e-9);
    EXPECT_LE(r.max_state_invariance, 1e-8);
  }
}

TEST(Campaigns, ExpIdentityHoldsOnSmallRun) {
  const ExpIdentityResult r =
      run_exp_identity(small(Kind::complex, 3, 10, 9, 1e-8));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_residual, 1e-8);
  EXPECT_EQ(r.rows.size(), 10u * r.grid.size());
}

TEST(Campaigns, SemigroupFlowsStayPositive) {
  const SemigroupResult r = run_semigroup(small(Kind::quaternion, 3, 10));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_unit_residual, 1e-9);
  EXPECT_LE(r.max_generator_unit_residual, 1e-12);
  EXPECT_EQ(r.rows.size(), 10u * r.grid.size());
}

TEST(Campaigns, DerivationsDecomposeOnSmallRun) {
  for (Kind k : {Kind::complex, Kind::octonion}) {
    const DerivationsResult r = run_derivations(small(k, 3, 8));
    EXPECT_TRUE(r.violations.empty());
    EXPECT_LE(r.max_self_adjoint_worst, 1e-9);
    EXPECT_LE(r.max_reconstruction_residual, 1e-9);
    EXPECT_LE(r.max_skew_part_residual, 1e-9);
    EXPECT_LE(r.max_skew_part_worst, 1e-9);
  }
}

TEST(Campaigns, TraceStateIsUniformDensity) {
  for (Kind k : {Kind::real, Kind::complex}) {
    const TraceStateResult r =
        run_trace_state(small(k, 3, 50, 5, 1e-8));
    EXPECT_TRUE(r.violations.empty());
    EXPECT_EQ(r.nullspace_dim, 1);
    EXPECT_LE(r.distance_to_uniform, 1e-8);
    EXPECT_LE(r.validation_residual, 1e-8);
    EXPECT_GE(r.positivity_margin, -1e-9);
    EXPECT_EQ(r.rows.size(), 50u);
  }
}

TEST(Campaigns, LieExtractionMatchesOracle) {
  const LieResult r = run_lie(small(Kind::complex, 3, 64));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.dimension, 8);
  EXPECT_EQ(r.expected_dimension, 8);
  EXPECT_LE(r.closure_residual, kLieClosureTol);
}

TEST(Campaigns, CrosscheckAgreesWithMatrixForms) {
  const CrosscheckResult c = run_crosscheck(small(Kind::complex, 2, 25, 9, 1e-8));
  EXPECT_TRUE(c.violations.empty());
  EXPECT_LE(c.max_flow_d_abstract_error, 1e-8);
  const CrosscheckResult rr = run_crosscheck(small(Kind::real, 3, 25, 9, 1e-8));
  EXPECT_TRUE(rr.violations.empty());
  EXPECT_EQ(rr.max_flow_d_abstract_error, 0.0);
  EXPECT_LE(rr.max_flow_d_spectrum_error, 1e-8);
  EXPECT_THROW(run_crosscheck(small(Kind::quaternion, 3, 5)), ConfigError);
}

TEST(Campaigns, OctonionKernelPropertyBattery) {
  const OctonionKernelResult r = run_octonion_kernel(500, 77);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_alternativity, 1e-12);
  EXPECT_LE(r.max_norm_multiplicativity, 1e-12);
  EXPECT_LE(r.max_conjugation, 1e-12);
}

TEST(Reports, FilesAreByteIdenticalAcrossRuns) {
  namespace fs = std::filesystem;
  const fs::path dir1 = fs::temp_directory_path() / "ejlab_test_rep1";
  const fs::path dir2 = fs::temp_directory_path() / "ejlab_test_rep2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  const CampaignConfig cfg = small(Kind::complex, 3, 15);
  for (const fs::path& dir : {dir1, dir2}) {
    const I3Result r = run_i3(cfg);
    write_report_files(dir.string(), "i3", report_json(r), report_csv(r),
                       ReportFormat::both);
  }
  EXPECT_EQ(slurp(dir1 / "i3_report.json"), slurp(dir2 / "i3_report.json"));
  EXPECT_EQ(slurp(dir1 / "i3_samples.csv"), slurp(dir2 / "i3_samples.csv"));
  EXPECT_TRUE(fs::exists(dir1 / "meta.json"));
  const nlohmann::json meta =
      nlohmann::json::parse(slurp(dir1 / "meta.json"));
  EXPECT_EQ(meta.at("tool").get<std::string>(), "ejlab");
  EXPECT_TRUE(meta.contains("written_at_utc"));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST(Reports, FormatSelectsFiles) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ejlab_test_fmt";
  fs::remove_all(dir);
  const CampaignConfig cfg = small(Kind::real, 3, 4);
  const I3Result r = run_i3(cfg);
  const std::string primary = write_report_files(
      dir.string(), "i3", report_json(r), report_csv(r), ReportFormat::csv);
  EXPECT_TRUE(fs::exists(dir / "i3_samples.csv"));
  EXPECT_FALSE(fs::exists(dir / "i3_report.json"));
  EXPECT_EQ(fs::path(primary).filename(), "i3_samples.csv");
  EXPECT_EQ(format_from_name("json"), ReportFormat::json);
  EXPECT_EQ(format_from_name("both"), ReportFormat::both);
  EXPECT_THROW(format_from_name("yaml"), ConfigError);
  fs::remove_all(dir);
}

TEST(Reports, ParsedReportRoundTripsThroughText) {
  const CampaignConfig cfg = small(Kind::complex, 3, 6);
  const nlohmann::json j = report_json(run_trace_state(cfg));
  const nlohmann::json back = nlohmann::json::parse(j.dump(2));
  EXPECT_EQ(back, j);
  EXPECT_TRUE(back.at("results").contains("distance_to_uniform"));
  EXPECT_TRUE(back.at("results").contains("density"));
}
