// Command-line front end: one subcommand per campaign, deterministic
// reports on disk, exit code 0 (pass) / 1 (violations or failed run) /
// 2 (configuration error).

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ejlab/ejlab.hpp"

namespace {

struct CliOptions {
  std::string model = "complex";
  int n = 3;
  std::uint64_t seed = 1;
  long samples = 1000;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("--model", o.model,
                  "Scalar kind: real|complex|quaternion|octonion")
      ->check(CLI::IsMember({"real", "complex", "quaternion", "octonion"}))
      ->capture_default_str();
  sub->add_option("--n", o.n, "Hermitian matrix size n")
      ->check(CLI::Range(2, 32))
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
  sub->add_option("--samples", o.samples, "Number of sampled configurations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol", o.tol, "Violation tolerance")
      ->capture_default_str();
  sub->add_option("--out", o.out,
                  "Output directory (default: $EJLAB_OUT or the working "
                  "directory)")
      ->envname("EJLAB_OUT");
  sub->add_option("--format", o.format, "Report format: json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();
}

template <class Result>
int finish(const std::string& command, const Result& r, const CliOptions& o) {
  const nlohmann::json j = ejlab::report_json(r);
  const std::string dir = o.out.empty() ? "." : o.out;
  const std::string path = ejlab::write_report_files(
      dir, command, j, ejlab::report_csv(r), ejlab::format_from_name(o.format));
  const bool ok = r.violations.empty();
  std::printf("%s model=%s n=%d seed=%llu samples=%ld violations=%zu -> %s (%s)\n",
              command.c_str(), o.model.c_str(), o.n,
              static_cast<unsigned long long>(o.seed), o.samples,
              r.violations.size(), ok ? "PASS" : "FAIL", path.c_str());
  return ok ? 0 : 1;
}

int run_command(const std::string& cmd, const CliOptions& o) {
  ejlab::CampaignConfig cfg;
  cfg.kind = ejlab::kind_from_name(o.model);
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.tol = o.tol;
  if (ejlab::model_dim(cfg.kind, cfg.n) > 128)
    throw ejlab::ConfigError(
        "model dimension exceeds 128; pick a smaller n");
  if (cfg.n == 2 && (cmd == "i3" || cmd == "bounds" || cmd == "trace-state"))
    std::fprintf(stderr,
                 "warning: n = 2 admits no three nonzero orthogonal events; "
                 "conditional-probability campaigns degenerate\n");

  if (cmd == "i3") return finish(cmd, ejlab::run_i3(cfg), o);
  if (cmd == "bounds") return finish(cmd, ejlab::run_bounds(cfg), o);
  if (cmd == "lie") return finish(cmd, ejlab::run_lie(cfg), o);
  if (cmd == "trace-state") return finish(cmd, ejlab::run_trace_state(cfg), o);
  if (cmd == "semigroup") return finish(cmd, ejlab::run_semigroup(cfg), o);
  if (cmd == "derivations") return finish(cmd, ejlab::run_derivations(cfg), o);
  if (cmd == "crosscheck") return finish(cmd, ejlab::run_crosscheck(cfg), o);
  if (cmd == "identity") return finish(cmd, ejlab::run_exp_identity(cfg), o);
  throw ejlab::ConfigError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ejlab: a numerical laboratory for Jordan-algebraic quantum models"};
  app.require_subcommand(1);
  CliOptions opts;

  const std::pair<const char*, const char*> commands[] = {
      {"i3", "Third-order interference of orthogonal event triples"},
      {"bounds", "Conditional-probability bound and symmetry battery"},
      {"lie", "Extract and certify the skew derivation Lie algebra"},
      {"trace-state", "Solve for the measurement-invariant state"},
      {"semigroup", "Positivity of two-event relaxation semigroups"},
      {"derivations", "Order-derivation certification and decomposition"},
      {"crosscheck", "Abstract operations vs closed matrix forms"},
      {"identity", "Closed-form exponential of compression differences"},
  };
  for (const auto& [name, desc] : commands)
    add_common(app.add_subcommand(name, desc), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto subs = app.get_subcommands();
  try {
    return run_command(subs.at(0)->get_name(), opts);
  } catch (const ejlab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  }
}
