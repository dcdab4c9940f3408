#pragma once

#include <array>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specfaith/exec/limits.hpp"
#include "specfaith/harness/bundle.hpp"
#include "json.hpp"

namespace specfaith {

/// Result of compiling one module source against one signature.
struct CompileOutcome {
  TypedModulePtr module;  // null on failure
  std::string error;
};

/// parse + typecheck + guard validation, memoized per (source, signature).
/// Safe to call from several threads.
std::shared_ptr<const CompileOutcome> compile_cached(std::string_view source,
                                                     const TaskSignature& signature);
void clear_compile_cache();

/// The per-testcase decision tree: compile, symbolic assert, symbolic
/// assert-not, then execution.
Resolution resolve_testcase(std::string_view module_source, const TaskSignature& signature,
                            const Testcase& testcase, const Limits& limits);

/// Steps two to four of resolve_testcase on an already compiled module.
Resolution resolve_compiled(const TypedModule& module, const Testcase& testcase,
                            const Limits& limits);

/// Step four alone, bypassing the symbolic path.
Resolution resolve_exec_only(const TypedModule& module, const Testcase& testcase,
                             const Limits& limits);

enum class Scope : std::uint8_t { visible, hidden, all };
std::string_view scope_name(Scope s);
std::optional<Scope> scope_from_name(std::string_view name);

struct TestcaseResult {
  std::string id;
  Bucket bucket = Bucket::pre_complete;
  bool visible = false;
  Resolution resolution;
  Verdict verdict = Verdict::fail;
};

struct BucketScore {
  std::size_t passed = 0;
  std::size_t total = 0;
  /// nullopt for an empty bucket.
  std::optional<double> fraction() const;
};

struct EvaluationReport {
  std::string task_id;
  Scope scope = Scope::hidden;
  /// Sorted: visible samples first, then by bucket and id.
  std::vector<TestcaseResult> results;
  std::array<BucketScore, 4> buckets{};
  std::array<std::size_t, 6> histogram{};
  bool overall_pass = false;
  /// Compile error text when the module did not build.
  std::string compile_error;
  std::chrono::milliseconds elapsed{0};

  const BucketScore& bucket(Bucket b) const { return buckets[static_cast<std::size_t>(b)]; }
  std::size_t count(Category c) const { return histogram[static_cast<std::size_t>(c)]; }
};

struct SuiteOptions {
  /// 0 means one worker per hardware thread.
  unsigned workers = 0;
};

/// Resolves every testcase in scope and aggregates verdicts. Throws
/// BundleError when scope is hidden and some hidden bucket is empty.
EvaluationReport evaluate_suite(std::string_view module_source, const TaskBundle& bundle,
                                const Limits& limits, Scope scope, const SuiteOptions& options = {});

/// Stable report document without timing; two identical runs serialize to
/// identical bytes.
nlohmann::ordered_json report_to_json(const EvaluationReport& report);
std::string serialize_report(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& doc);

/// Run configuration and timing, kept apart from the report.
/// Keys of `extra` are appended verbatim.
nlohmann::ordered_json run_metadata(const EvaluationReport& report, const Limits& limits,
                                    std::string_view run_id,
                                    const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

struct FeedbackDocument {
  std::string text;
  EvaluationReport report;
  /// Set when artifacts were written.
  std::optional<std::filesystem::path> attempt_dir;

  bool all_passed() const { return report.overall_pass; }
};

/// Checks the visible samples only and renders feedback for every failing
/// sample. When `attempts_root` is given, writes report,
/// natural_language_feedback.txt and metadata under a fresh
/// attempts_root/<run_id>/.
FeedbackDocument sample_feedback(std::string_view module_source, const TaskBundle& bundle,
                                 const Limits& limits,
                                 const std::optional<std::filesystem::path>& attempts_root = {},
                                 const SuiteOptions& options = {},
                                 const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

std::string render_feedback(const EvaluationReport& report, const TaskBundle& bundle);

/// Creates attempts_root/<n> for the smallest n above every existing
/// numeric run id, starting at 1.
std::filesystem::path allocate_run_dir(const std::filesystem::path& attempts_root);

/// Writes report, natural_language_feedback.txt and metadata into `dir`.
void write_attempt(const std::filesystem::path& dir, const EvaluationReport& report,
                   std::string_view feedback, const Limits& limits,
                   const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

}  // namespace specfaith
