// specfaith: command-line front end.
//
//   specfaith check    <task_dir> <spec_file>     visible samples, feedback
//   specfaith evaluate <task_dir> <spec_file>     full suite (--scope)
//   specfaith ingest   <ledger_dir> <out_dir>     build a task bundle
//   specfaith analyze  catch|curve|passk ...      test-budget analytics
//   specfaith convert  <ledger_dir> <raw_input> [<raw_output>]
//
// Exit status: 0 success, 1 failing testcases or rejected task, 2 usage or
// I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specfaith/analytics/analytics.hpp"
#include "specfaith/harness/evaluate.hpp"
#include "specfaith/ingest/pipeline.hpp"
#include "specfaith/kernel/literal.hpp"

namespace fs = std::filesystem;
using namespace specfaith;

namespace {

constexpr int kOk = 0;
constexpr int kFailures = 1;
constexpr int kUsage = 2;

struct LimitFlags {
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> iters;
  std::optional<double> timeout_secs;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--limits-steps", steps, "interpreter step budget (default 200000000)");
    cmd->add_option("--limits-iters", iters, "quantifier iteration budget (default 10000000)");
    cmd->add_option("--timeout-secs", timeout_secs, "wall-clock budget per testcase (default 10)");
    cmd->add_option("--seed", seed, "recorded in run metadata");
    cmd->add_option("--workers", workers, "worker threads, 0 = one per core");
  }

  /// Defaults, then SPECFAITH_LIMITS_* variables, then flags.
  Limits resolve() const {
    Limits l = Limits::from_environment();
    if (steps) l.max_steps = *steps;
    if (iters) l.max_quantifier_iterations = *iters;
    if (timeout_secs) {
      l.wall_clock_budget = std::chrono::milliseconds(static_cast<std::int64_t>(*timeout_secs * 1000));
    }
    l.validate();
    return l;
  }

  nlohmann::ordered_json extra() const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["seed"] = seed.value_or(0);
    doc["workers"] = workers;
    return doc;
  }
};

std::string read_spec(const std::string& path) {
  if (!fs::is_regular_file(path)) throw BundleError("spec file not found: " + path);
  return read_file(path);
}

void print_buckets(const EvaluationReport& report) {
  for (Bucket b : kAllBuckets) {
    const auto& s = report.bucket(b);
    std::cout << "  " << bucket_name(b) << ": " << s.passed << "/" << s.total;
    if (auto f = s.fraction()) std::cout << " (" << to_decimal_string(Rational(s.passed, s.total)) << ")";
    std::cout << "\n";
  }
}

int cmd_check(const std::string& task_dir, const std::string& spec_file,
              const std::optional<std::string>& attempts, const LimitFlags& flags) {
  const TaskBundle bundle = load_bundle(task_dir);
  const std::string source = read_spec(spec_file);
  const fs::path root = attempts ? fs::path(*attempts) : fs::path(task_dir) / "attempts";
  const FeedbackDocument doc = sample_feedback(source, bundle, flags.resolve(), root,
                                               SuiteOptions{flags.workers}, flags.extra());
  std::cout << doc.text;
  if (doc.attempt_dir) std::cout << "attempt written to " << doc.attempt_dir->string() << "\n";
  return doc.all_passed() ? kOk : kFailures;
}

std::string evaluation_summary(const EvaluationReport& report) {
  std::ostringstream out;
  out << "task " << report.task_id << " (" << scope_name(report.scope) << "): "
      << (report.overall_pass ? "PASS" : "FAIL") << "\n";
  if (!report.compile_error.empty()) out << "compile error: " << report.compile_error << "\n";
  std::size_t failing = 0;
  for (const auto& r : report.results) failing += r.verdict == Verdict::fail;
  out << failing << " of " << report.results.size() << " testcases failed\n";
  return out.str();
}

int cmd_evaluate(const std::string& task_dir, const std::string& spec_file, const std::string& scope,
                 const std::optional<std::string>& attempts, const std::optional<std::string>& report_path,
                 const LimitFlags& flags) {
  const auto sc = scope_from_name(scope);
  if (!sc) throw CLI::ValidationError("--scope", "expected visible, hidden or all");
  const TaskBundle bundle = load_bundle(task_dir);
  const std::string source = read_spec(spec_file);
  const Limits limits = flags.resolve();
  const EvaluationReport report = evaluate_suite(source, bundle, limits, *sc, SuiteOptions{flags.workers});
  const std::string summary = evaluation_summary(report);
  const fs::path root = attempts ? fs::path(*attempts) : fs::path(task_dir) / "attempts";
  const fs::path dir = allocate_run_dir(root);
  write_attempt(dir, report, summary, limits, flags.extra());
  if (report_path) write_file(*report_path, serialize_report(report));
  std::cout << summary;
  print_buckets(report);
  std::cout << "report written to " << (dir / "report").string() << "\n";
  return report.overall_pass ? kOk : kFailures;
}

int cmd_ingest(const std::string& ledger, const std::string& out_dir, const std::optional<std::uint64_t>& seed) {
  BucketPolicy policy;
  policy.seed = seed;
  const IngestOutcome outcome = ingest_ledger(ledger, policy);
  std::string log;
  for (const auto& line : outcome.log) log += line + "\n";
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "ingest.log", log);
  std::size_t roundtrips = 0, failed = 0;
  for (const auto& line : outcome.log) {
    if (!line.starts_with("roundtrip ")) continue;
    ++roundtrips;
    failed += line.find(": ok") == std::string::npos;
  }
  std::cout << "round-trip: " << roundtrips - failed << " ok, " << failed << " discarded\n";
  if (const auto* rej = std::get_if<RejectedTask>(&outcome.result)) {
    write_file(fs::path(out_dir) / "rejection.txt", rej->reason + "\n");
    std::cout << "task rejected: " << rej->reason << "\n";
    return kFailures;
  }
  const auto& bundle = std::get<TaskBundle>(outcome.result);
  write_bundle(bundle, out_dir);
  std::cout << "bundle " << bundle.task_id << " written to " << out_dir << " (seed " << bundle.seed << ")\n";
  for (Bucket b : kAllBuckets) std::cout << "  " << bucket_name(b) << ": " << bundle.hidden_count(b) << "\n";
  std::cout << "  visible samples: " << bundle.visible.size() << "\n";
  return kOk;
}

std::string both(const Rational& r) { return to_fraction_string(r) + " ≈ " + to_decimal_string(r); }

std::vector<EvaluationReport> collect_reports(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && (name == "report" || e.path().extension() == ".json")) files.push_back(e.path());
      }
    } else if (fs::is_regular_file(p)) {
      files.emplace_back(p);
    } else {
      throw BundleError("no such report path: " + p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<EvaluationReport> out;
  for (const auto& f : files) {
    try {
      out.push_back(report_from_json(nlohmann::json::parse(read_file(f))));
    } catch (const std::exception& e) {
      throw BundleError(f.string() + ": not an evaluation report (" + e.what() + ")");
    }
  }
  if (out.empty()) throw BundleError("no evaluation reports found");
  return out;
}

int cmd_curve(const std::vector<std::string>& paths, const std::vector<std::int64_t>& budgets) {
  const auto reports = collect_reports(paths);
  std::vector<TaskCounts> tasks;
  for (const auto& r : reports) tasks.push_back(task_counts(r));
  const auto mean = expected_pass_curve(tasks, budgets);
  std::cout << "m\texpected_pass@1\n";
  for (const auto& p : mean) std::cout << p.m << "\t" << both(p.expected_pass) << "\n";
  std::cout << "\nper task\n";
  for (const auto& t : tasks) {
    const auto curve = expected_pass_curve(std::span(&t, 1), budgets);
    for (const auto& p : curve) std::cout << t.task_id << "\tm=" << p.m << "\t" << both(p.expected_pass) << "\n";
  }
  return kOk;
}

int cmd_passk(const std::string& path) {
  if (!fs::is_regular_file(path)) throw BundleError("run matrix not found: " + path);
  const PassMetrics m = pass_metrics(parse_run_matrix(read_file(path)));
  std::cout << "pass@1 = " << both(m.pass_at_1) << "\n"
            << "pass@" << m.runs << " = " << both(m.pass_at_k) << "\n"
            << "pass^" << m.runs << " = " << both(m.pass_hat_k) << "\n";
  return kOk;
}

int cmd_convert(const std::string& ledger, const std::string& raw_in, const std::optional<std::string>& raw_out) {
  TaskBundle header = parse_task_meta(read_file(fs::path(ledger) / "task.meta"));
  const auto converter = load_converter(ledger, header.signature, nullptr);
  RawCase c{read_file(raw_in), raw_out ? std::optional(read_file(*raw_out)) : std::nullopt, {}, raw_in};
  const RoundTripResult rt = roundtrip_check(c, *converter);
  std::cout << describe(rt) << "\n";
  if (const auto* ok = std::get_if<RoundTripOk>(&rt)) {
    std::cout << "input: " << print_value_literal(ok->input) << "\n";
    if (ok->output) std::cout << "output: " << print_value_literal(*ok->output) << "\n";
    return kOk;
  }
  return kFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specification faithfulness harness"};
  app.require_subcommand(1);
  LimitFlags flags;

  std::string task_dir, spec_file, scope = "hidden";
  std::optional<std::string> attempts, report_path;
  auto* check = app.add_subcommand("check", "check a specification against the visible samples");
  check->add_option("task_dir", task_dir)->required();
  check->add_option("spec_file", spec_file)->required();
  check->add_option("--attempts", attempts, "attempt directory root (default <task_dir>/attempts)");
  flags.attach(check);

  auto* evaluate = app.add_subcommand("evaluate", "evaluate a specification on the full suite");
  evaluate->add_option("task_dir", task_dir)->required();
  evaluate->add_option("spec_file", spec_file)->required();
  evaluate->add_option("--scope", scope, "visible, hidden or all (default hidden)");
  evaluate->add_option("--attempts", attempts, "attempt directory root (default <task_dir>/attempts)");
  evaluate->add_option("--report", report_path, "also write the report here");
  flags.attach(evaluate);

  std::string ledger, out_dir;
  std::optional<std::uint64_t> ingest_seed;
  auto* ingest = app.add_subcommand("ingest", "build a task bundle from a ledger directory");
  ingest->add_option("ledger_dir", ledger)->required();
  ingest->add_option("out_dir", out_dir)->required();
  ingest->add_option("--seed", ingest_seed, "sampling seed (default: task.meta seed)");

  auto* analyze = app.add_subcommand("analyze", "test-budget analytics");
  analyze->require_subcommand(1);
  std::int64_t T = 0, P = 0, k = 0;
  auto* catch_cmd = analyze->add_subcommand("catch", "probability a k-sample catches a failure");
  catch_cmd->add_option("-T", T, "testcases in the bucket")->required();
  catch_cmd->add_option("-P", P, "testcases passed")->required();
  catch_cmd->add_option("-k", k, "sample size")->required();
  std::vector<std::string> report_paths;
  std::vector<std::int64_t> budgets;
  auto* curve = analyze->add_subcommand("curve", "expected Pass@1 against the per-bucket budget");
  curve->add_option("reports", report_paths, "report files or directories")->required();
  curve->add_option("-m", budgets, "budgets")->required()->delimiter(',');
  std::string matrix_path;
  auto* passk = analyze->add_subcommand("passk", "pass@1, pass@k and pass^k of a run matrix");
  passk->add_option("matrix", matrix_path, "rows = problems, columns = runs, entries 0/1")->required();

  std::string raw_in;
  std::optional<std::string> raw_out;
  auto* convert = app.add_subcommand("convert", "round-trip raw files through a ledger's converter");
  convert->add_option("ledger_dir", ledger)->required();
  convert->add_option("raw_input", raw_in)->required();
  convert->add_option("raw_output", raw_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(task_dir, spec_file, attempts, flags);
    if (*evaluate) return cmd_evaluate(task_dir, spec_file, scope, attempts, report_path, flags);
    if (*ingest) return cmd_ingest(ledger, out_dir, ingest_seed);
    if (*catch_cmd) {
      std::cout << both(catch_probability({T, P, k})) << "\n";
      return kOk;
    }
    if (*curve) return cmd_curve(report_paths, budgets);
    if (*passk) return cmd_passk(matrix_path);
    if (*convert) return cmd_convert(ledger, raw_in, raw_out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
