#include "specfaith/harness/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>

#include "specfaith/exec/interpreter.hpp"
#include "specfaith/kernel/errors.hpp"
#include "specfaith/kernel/literal.hpp"
#include "specfaith/symbolic/resolver.hpp"

namespace specfaith {

namespace fs = std::filesystem;

namespace {

std::string signature_key(const TaskSignature& sig) {
  std::string key = sig.input_type + "\x1f" + sig.output_type;
  for (const auto& decl : sig.types) key += "\x1f" + decl->to_source();
  return key;
}

struct CompileCache {
  std::shared_mutex mutex;
  std::map<std::string, std::shared_ptr<const CompileOutcome>, std::less<>> entries;
};

CompileCache& cache() {
  static CompileCache c;
  return c;
}

}  // namespace

std::shared_ptr<const CompileOutcome> compile_cached(std::string_view source,
                                                     const TaskSignature& signature) {
  std::string key = signature_key(signature);
  key += '\x1e';
  key += source;
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.entries.find(key); it != c.entries.end()) return it->second;
  }
  auto outcome = std::make_shared<CompileOutcome>();
  try {
    outcome->module = compile_module(source, signature);
  } catch (const SpecError& e) {
    outcome->error = e.what();
  } catch (const std::exception& e) {
    outcome->error = std::string("compile failed: ") + e.what();
  }
  std::unique_lock lock(c.mutex);
  auto [it, inserted] = c.entries.emplace(std::move(key), std::move(outcome));
  return it->second;
}

void clear_compile_cache() {
  auto& c = cache();
  std::unique_lock lock(c.mutex);
  c.entries.clear();
}

namespace {

Which which_of(Bucket b) { return is_pre(b) ? Which::pre : Which::post; }

std::string_view fn_of(Bucket b) { return is_pre(b) ? "pre_spec" : "post_spec"; }

}  // namespace

Resolution resolve_exec_only(const TypedModule& module, const Testcase& testcase,
                             const Limits& limits) {
  const PredicateResult r =
      eval_predicate(module, which_of(testcase.bucket), testcase.input, testcase.output, limits);
  if (const auto* fault = std::get_if<Fault>(&r)) {
    return {Category::indeterminate_during_exec, fault->to_string()};
  }
  const bool accepted = std::get<bool>(r);
  return {accepted ? Category::accept_via_exec : Category::reject_via_exec,
          std::string(fn_of(testcase.bucket)) + " returned " + (accepted ? "true" : "false")};
}

Resolution resolve_compiled(const TypedModule& module, const Testcase& testcase,
                            const Limits& limits) {
  const Which which = which_of(testcase.bucket);
  const SymbolicOutcome yes =
      try_prove(module, which, testcase.input, testcase.output, Polarity::assert_);
  if (yes.is_proved(true)) {
    return {Category::accept_via_symbolic, std::string(fn_of(testcase.bucket)) + " folded to true"};
  }
  // Folding is deterministic, so the assert-not attempt reaches the same
  // literal or the same obstacle; it is kept as a separate step anyway.
  const SymbolicOutcome no =
      try_prove(module, which, testcase.input, testcase.output, Polarity::assert_not);
  if (no.is_proved(true)) {
    return {Category::reject_via_symbolic, std::string(fn_of(testcase.bucket)) + " folded to false"};
  }
  return resolve_exec_only(module, testcase, limits);
}

Resolution resolve_testcase(std::string_view module_source, const TaskSignature& signature,
                            const Testcase& testcase, const Limits& limits) {
  const auto compiled = compile_cached(module_source, signature);
  if (!compiled->module) return {Category::compile_or_syntax_error, compiled->error};
  return resolve_compiled(*compiled->module, testcase, limits);
}

std::string_view scope_name(Scope s) {
  switch (s) {
    case Scope::visible: return "visible";
    case Scope::hidden: return "hidden";
    case Scope::all: break;
  }
  return "all";
}

std::optional<Scope> scope_from_name(std::string_view name) {
  for (Scope s : {Scope::visible, Scope::hidden, Scope::all}) {
    if (scope_name(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<double> BucketScore::fraction() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(passed) / static_cast<double>(total);
}

EvaluationReport evaluate_suite(std::string_view module_source, const TaskBundle& bundle,
                                const Limits& limits, Scope scope, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (scope == Scope::hidden) {
    for (Bucket b : kAllBuckets) {
      if (bundle.hidden_count(b) == 0) {
        throw BundleError("hidden bucket " + std::string(bucket_name(b)) + " is empty");
      }
    }
  }
  std::vector<std::pair<const Testcase*, bool>> cases;
  if (scope != Scope::hidden) {
    for (const auto& t : bundle.visible) cases.emplace_back(&t, true);
  }
  if (scope != Scope::visible) {
    for (const auto& t : bundle.hidden) cases.emplace_back(&t, false);
  }

  EvaluationReport report;
  report.task_id = bundle.task_id;
  report.scope = scope;
  report.results.resize(cases.size());
  const auto compiled = compile_cached(module_source, bundle.signature);
  report.compile_error = compiled->error;

  auto resolve_one = [&](std::size_t i) {
    const auto& [tc, visible] = cases[i];
    TestcaseResult& out = report.results[i];
    out.id = tc->id;
    out.bucket = tc->bucket;
    out.visible = visible;
    out.resolution = compiled->module
                         ? resolve_compiled(*compiled->module, *tc, limits)
                         : Resolution{Category::compile_or_syntax_error, compiled->error};
    out.verdict = verdict(out.resolution.category, out.bucket);
  };

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(cases.size())));
  if (workers <= 1 || !compiled->module) {
    for (std::size_t i = 0; i < cases.size(); ++i) resolve_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
          try {
            resolve_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::sort(report.results.begin(), report.results.end(),
            [](const TestcaseResult& a, const TestcaseResult& b) {
              if (a.visible != b.visible) return a.visible;
              if (a.bucket != b.bucket) return a.bucket < b.bucket;
              return a.id < b.id;
            });
  report.overall_pass = true;
  for (const auto& r : report.results) {
    BucketScore& score = report.buckets[static_cast<std::size_t>(r.bucket)];
    ++score.total;
    if (r.verdict == Verdict::pass) {
      ++score.passed;
    } else {
      report.overall_pass = false;
    }
    ++report.histogram[static_cast<std::size_t>(r.resolution.category)];
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["task_id"] = report.task_id;
  doc["scope"] = scope_name(report.scope);
  doc["overall_pass"] = report.overall_pass;
  doc["testcase_count"] = report.results.size();
  if (!report.compile_error.empty()) doc["compile_error"] = report.compile_error;
  ordered_json buckets = ordered_json::object();
  for (Bucket b : kAllBuckets) {
    const BucketScore& s = report.bucket(b);
    ordered_json entry;
    entry["passed"] = s.passed;
    entry["total"] = s.total;
    if (auto f = s.fraction()) {
      entry["fraction"] = *f;
    } else {
      entry["fraction"] = nullptr;
    }
    buckets[std::string(bucket_name(b))] = std::move(entry);
  }
  doc["buckets"] = std::move(buckets);
  ordered_json histogram = ordered_json::object();
  for (Category c : kAllCategories) histogram[std::string(category_name(c))] = report.count(c);
  doc["histogram"] = std::move(histogram);
  ordered_json results = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json entry;
    entry["id"] = r.id;
    entry["bucket"] = bucket_name(r.bucket);
    entry["visible"] = r.visible;
    entry["category"] = category_name(r.resolution.category);
    entry["verdict"] = verdict_name(r.verdict);
    entry["detail"] = r.resolution.detail;
    results.push_back(std::move(entry));
  }
  doc["testcases"] = std::move(results);
  return doc;
}

std::string serialize_report(const EvaluationReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

EvaluationReport report_from_json(const nlohmann::json& doc) {
  EvaluationReport report;
  try {
    report.task_id = doc.at("task_id").get<std::string>();
    const auto scope = scope_from_name(doc.at("scope").get<std::string>());
    if (!scope) throw BundleError("report: unknown scope");
    report.scope = *scope;
    report.overall_pass = doc.at("overall_pass").get<bool>();
    if (doc.contains("compile_error")) report.compile_error = doc["compile_error"].get<std::string>();
    for (Bucket b : kAllBuckets) {
      const auto& entry = doc.at("buckets").at(std::string(bucket_name(b)));
      auto& s = report.buckets[static_cast<std::size_t>(b)];
      s.passed = entry.at("passed").get<std::size_t>();
      s.total = entry.at("total").get<std::size_t>();
      if (s.passed > s.total) throw BundleError("report: passed exceeds total");
    }
    for (Category c : kAllCategories) {
      report.histogram[static_cast<std::size_t>(c)] =
          doc.at("histogram").at(std::string(category_name(c))).get<std::size_t>();
    }
    for (const auto& entry : doc.at("testcases")) {
      TestcaseResult r;
      r.id = entry.at("id").get<std::string>();
      const auto bucket = bucket_from_name(entry.at("bucket").get<std::string>());
      if (!bucket) throw BundleError("report: unknown bucket");
      r.bucket = *bucket;
      r.visible = entry.at("visible").get<bool>();
      const std::string cat = entry.at("category").get<std::string>();
      const auto it = std::find_if(kAllCategories.begin(), kAllCategories.end(),
                                   [&](Category c) { return category_name(c) == cat; });
      if (it == kAllCategories.end()) throw BundleError("report: unknown category " + cat);
      r.resolution = {*it, entry.at("detail").get<std::string>()};
      r.verdict = entry.at("verdict").get<std::string>() == "pass" ? Verdict::pass : Verdict::fail;
      report.results.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw BundleError(std::string("report: ") + e.what());
  }
  return report;
}

nlohmann::ordered_json run_metadata(const EvaluationReport& report, const Limits& limits,
                                    std::string_view run_id, const nlohmann::ordered_json& extra) {
  using nlohmann::ordered_json;
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream stamp;
  stamp << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  ordered_json doc;
  doc["run_id"] = run_id;
  doc["task_id"] = report.task_id;
  doc["scope"] = scope_name(report.scope);
  doc["finished_at"] = stamp.str();
  doc["elapsed_ms"] = report.elapsed.count();
  ordered_json l;
  l["max_steps"] = limits.max_steps;
  l["max_quantifier_iterations"] = limits.max_quantifier_iterations;
  l["max_recursion_depth"] = limits.max_recursion_depth;
  l["wall_clock_budget_ms"] = limits.wall_clock_budget.count();
  doc["limits"] = std::move(l);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  return doc;
}

namespace {

std::string failure_headline(Bucket b) {
  switch (b) {
    case Bucket::pre_complete: return "pre_spec rejected valid input";
    case Bucket::pre_sound: return "pre_spec accepted invalid input";
    case Bucket::post_complete: return "post_spec rejected correct output";
    case Bucket::post_sound: break;
  }
  return "post_spec accepted incorrect output";
}

}  // namespace

std::string render_feedback(const EvaluationReport& report, const TaskBundle& bundle) {
  std::ostringstream out;
  if (!report.compile_error.empty()) {
    out << "Specification failed to compile; no sample testcase could be checked.\n"
        << report.compile_error << "\n";
    return out.str();
  }
  if (report.overall_pass) {
    out << "All sample testcases passed.\n";
    return out.str();
  }
  std::size_t failed = 0;
  for (const auto& r : report.results) failed += r.verdict == Verdict::fail ? 1 : 0;
  out << failed << " of " << report.results.size() << " sample testcases failed.\n";
  for (const auto& r : report.results) {
    if (r.verdict == Verdict::pass) continue;
    const auto tc = std::find_if(bundle.visible.begin(), bundle.visible.end(),
                                 [&](const Testcase& t) { return t.id == r.id; });
    out << "\n[FAIL] " << r.id << " (" << bucket_name(r.bucket)
        << "): " << category_name(r.resolution.category) << "\n";
    if (r.resolution.category == Category::indeterminate_during_exec) {
      out << "  evaluation did not finish: " << r.resolution.detail << "\n";
    } else {
      out << "  " << failure_headline(r.bucket) << "\n";
      out << "  detail: " << r.resolution.detail << "\n";
    }
    if (tc != bundle.visible.end()) {
      out << "  for input: " << print_value_literal(tc->input) << "\n";
      if (tc->output) out << "  output: " << print_value_literal(*tc->output) << "\n";
    }
  }
  return out.str();
}

fs::path allocate_run_dir(const fs::path& attempts_root) {
  fs::create_directories(attempts_root);
  unsigned long long next = 1;
  for (const auto& entry : fs::directory_iterator(attempts_root)) {
    const std::string name = entry.path().filename().string();
    if (name.empty() || !std::all_of(name.begin(), name.end(), ::isdigit)) continue;
    try {
      next = std::max(next, std::stoull(name) + 1);
    } catch (const std::out_of_range&) {
    }
  }
  // create_directory reports false when another run won the id.
  while (!fs::create_directory(attempts_root / std::to_string(next))) ++next;
  return attempts_root / std::to_string(next);
}

void write_attempt(const fs::path& dir, const EvaluationReport& report, std::string_view feedback,
                   const Limits& limits, const nlohmann::ordered_json& extra) {
  write_file(dir / "report", serialize_report(report));
  write_file(dir / "natural_language_feedback.txt", feedback);
  write_file(dir / "metadata", run_metadata(report, limits, dir.filename().string(), extra).dump(2) + "\n");
}

FeedbackDocument sample_feedback(std::string_view module_source, const TaskBundle& bundle,
                                 const Limits& limits, const std::optional<fs::path>& attempts_root,
                                 const SuiteOptions& options, const nlohmann::ordered_json& extra) {
  FeedbackDocument doc;
  doc.report = evaluate_suite(module_source, bundle, limits, Scope::visible, options);
  doc.text = render_feedback(doc.report, bundle);
  if (attempts_root) {
    doc.attempt_dir = allocate_run_dir(*attempts_root);
    write_attempt(*doc.attempt_dir, doc.report, doc.text, limits, extra);
  }
  return doc;
}

}  // namespace specfaith
