#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "specfaith/harness/evaluate.hpp"
#include "support.hpp"

namespace specfaith {
namespace {

using testing::fixture_spec;

const TaskBundle& bs_bundle() {
  static const TaskBundle b = load_bundle(testing::fixtures() / "binary_search");
  return b;
}

const Testcase& hidden_case(const std::string& id) {
  for (const auto& t : bs_bundle().hidden) {
    if (t.id == id) return t;
  }
  throw std::logic_error("no testcase " + id);
}

TEST(Verdict, TableHasTwoPassingCategoriesPerBucket) {
  for (Bucket b : kAllBuckets) {
    int passing = 0;
    for (Category c : kAllCategories) {
      const bool accepted = c == Category::accept_via_symbolic || c == Category::accept_via_exec;
      const bool rejected = c == Category::reject_via_symbolic || c == Category::reject_via_exec;
      const bool expect = is_complete(b) ? accepted : rejected;
      EXPECT_EQ(verdict(c, b) == Verdict::pass, expect) << category_name(c) << " " << bucket_name(b);
      passing += verdict(c, b) == Verdict::pass;
    }
    EXPECT_EQ(passing, 2);
  }
}

TEST(Names, RoundTrip) {
  for (Bucket b : kAllBuckets) EXPECT_EQ(bucket_from_name(bucket_name(b)), b);
  EXPECT_FALSE(bucket_from_name("post_exact"));
  EXPECT_EQ(category_name(Category::indeterminate_during_exec), "indeterminate_during_exec");
  for (Scope s : {Scope::visible, Scope::hidden, Scope::all}) EXPECT_EQ(scope_from_name(scope_name(s)), s);
  for (auto p : {Provenance{Provenance::Kind::hack, "477544"}, Provenance{Provenance::Kind::official_test, ""},
                 Provenance{Provenance::Kind::synthetic, ""}}) {
    EXPECT_EQ(Provenance::parse(p.to_string()), p);
  }
}

TEST(Resolve, UnbalancedBraceIsCompileError) {
  const auto r = resolve_testcase("spec fn pre_spec(in1: In1) -> bool { true ", bs_bundle().signature,
                                  hidden_case("tc1"), Limits{});
  EXPECT_EQ(r.category, Category::compile_or_syntax_error);
  EXPECT_FALSE(r.detail.empty());
}

TEST(Resolve, FalsePreOnSoundCaseIsSymbolicReject) {
  const std::string src = testing::module_source("false");
  const auto r = resolve_testcase(src, bs_bundle().signature, hidden_case("tc2"), Limits{});
  EXPECT_EQ(r.category, Category::reject_via_symbolic);
  EXPECT_EQ(verdict(r.category, Bucket::pre_sound), Verdict::pass);
}

TEST(Resolve, LengthOnlyPreAcceptsUnsortedInputSymbolically) {
  const auto r = resolve_testcase(fixture_spec("binary_search", "spec2"), bs_bundle().signature,
                                  hidden_case("tc2"), Limits{});
  EXPECT_EQ(r.category, Category::accept_via_symbolic);
}

TEST(Resolve, FaithfulQuantifiedPreGoesToExecution) {
  const auto r = resolve_testcase(fixture_spec("binary_search", "faithful"), bs_bundle().signature,
                                  hidden_case("tc1"), Limits{});
  EXPECT_EQ(r.category, Category::accept_via_exec);
}

TEST(Resolve, FaultIsIndeterminate) {
  const std::string src = testing::module_source("in1.k / (in1.k - in1.k) == 0");
  const auto r = resolve_testcase(src, bs_bundle().signature, hidden_case("tc1"), Limits{});
  EXPECT_EQ(r.category, Category::indeterminate_during_exec);
  EXPECT_NE(r.detail.find("div"), std::string::npos) << r.detail;
}

struct SuiteCase {
  const char* spec;
  std::array<std::size_t, 4> failed;  // per bucket, hidden scope
};

void PrintTo(const SuiteCase& c, std::ostream* os) { *os << c.spec; }

class DesignatedFailures : public ::testing::TestWithParam<SuiteCase> {};

TEST_P(DesignatedFailures, FailsExactlyTheExpectedBucket) {
  const auto& [spec, failed] = GetParam();
  const auto report = evaluate_suite(fixture_spec("binary_search", spec), bs_bundle(), Limits{},
                                     Scope::hidden, {.workers = 1});
  bool any_failed = false;
  for (Bucket b : kAllBuckets) {
    const auto& s = report.bucket(b);
    EXPECT_EQ(s.total, 1u);
    EXPECT_EQ(s.total - s.passed, failed[static_cast<std::size_t>(b)]) << spec << " " << bucket_name(b);
    any_failed |= s.passed != s.total;
  }
  EXPECT_EQ(report.overall_pass, !any_failed);
}

INSTANTIATE_TEST_SUITE_P(BinarySearch, DesignatedFailures,
                         ::testing::Values(SuiteCase{"faithful", {0, 0, 0, 0}}, SuiteCase{"spec1", {1, 0, 0, 0}},
                                           SuiteCase{"spec2", {0, 1, 0, 0}}, SuiteCase{"spec3", {0, 0, 1, 0}},
                                           SuiteCase{"spec4", {0, 0, 0, 1}}),
                         [](const auto& info) { return std::string(info.param.spec); });

TEST(EvaluateSuite, HistogramSumsToResults) {
  for (const char* spec : {"faithful", "spec1", "spec3"}) {
    for (Scope scope : {Scope::visible, Scope::hidden, Scope::all}) {
      const auto r = evaluate_suite(fixture_spec("binary_search", spec), bs_bundle(), Limits{}, scope);
      std::size_t sum = 0;
      for (auto n : r.histogram) sum += n;
      EXPECT_EQ(sum, r.results.size());
      std::size_t totals = 0;
      for (const auto& b : r.buckets) totals += b.total;
      EXPECT_EQ(totals, r.results.size());
    }
  }
}

TEST(EvaluateSuite, CompileErrorFailsEverything) {
  const auto r = evaluate_suite("spec fn pre_spec(", bs_bundle(), Limits{}, Scope::all);
  EXPECT_FALSE(r.compile_error.empty());
  EXPECT_EQ(r.count(Category::compile_or_syntax_error), r.results.size());
  EXPECT_FALSE(r.overall_pass);
}

TEST(EvaluateSuite, DeterministicAndOrderIndependent) {
  const std::string src = fixture_spec("binary_search", "spec3");
  const std::string first = serialize_report(evaluate_suite(src, bs_bundle(), Limits{}, Scope::all, {.workers = 1}));
  EXPECT_EQ(first, serialize_report(evaluate_suite(src, bs_bundle(), Limits{}, Scope::all, {.workers = 4})));
  TaskBundle shuffled = bs_bundle();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(shuffled.hidden.begin(), shuffled.hidden.end(), rng);
    std::shuffle(shuffled.visible.begin(), shuffled.visible.end(), rng);
    EXPECT_EQ(first, serialize_report(evaluate_suite(src, shuffled, Limits{}, Scope::all)));
  }
}

TEST(EvaluateSuite, ReportJsonRoundTrip) {
  const auto r = evaluate_suite(fixture_spec("binary_search", "spec4"), bs_bundle(), Limits{}, Scope::all);
  const auto back = report_from_json(nlohmann::json::parse(serialize_report(r)));
  EXPECT_EQ(serialize_report(back), serialize_report(r));
  EXPECT_EQ(back.overall_pass, r.overall_pass);
}

// overall_pass holds exactly when every result passes; passing more
// testcases never turns a pass into a fail.
TEST(EvaluateSuite, OverallPassMatchesResults) {
  for (const char* spec : {"faithful", "spec1", "spec2", "spec3", "spec4"}) {
    const auto r = evaluate_suite(fixture_spec("binary_search", spec), bs_bundle(), Limits{}, Scope::all);
    const bool all = std::all_of(r.results.begin(), r.results.end(),
                                 [](const TestcaseResult& t) { return t.verdict == Verdict::pass; });
    EXPECT_EQ(r.overall_pass, all) << spec;
    for (const auto& t : r.results) EXPECT_EQ(t.verdict, verdict(t.resolution.category, t.bucket));
  }
}

TEST(EvaluateSuite, EmptyHiddenBucketIsRejected) {
  TaskBundle b = bs_bundle();
  std::erase_if(b.hidden, [](const Testcase& t) { return t.bucket == Bucket::post_sound; });
  EXPECT_THROW(evaluate_suite("", b, Limits{}, Scope::hidden), BundleError);
  EXPECT_NO_THROW(evaluate_suite(fixture_spec("binary_search", "faithful"), b, Limits{}, Scope::visible));
}

TEST(Bundle, RejectsMalformedBundles) {
  TaskBundle b = bs_bundle();
  b.visible.push_back(hidden_case("tc2"));
  EXPECT_THROW(check_bundle(b), BundleError);

  b = bs_bundle();
  Testcase dup = b.visible.front();
  dup.id = "tc1";
  b.visible = {dup};
  EXPECT_THROW(check_bundle(b), BundleError);

  b = bs_bundle();
  for (auto& t : b.hidden) {
    if (t.bucket == Bucket::post_complete) t.bucket = Bucket::pre_complete;
  }
  EXPECT_THROW(check_bundle(b), BundleError);
}

TEST(Bundle, WriteThenLoadIsIdentity) {
  testing::TempDir dir;
  write_bundle(bs_bundle(), dir.path() / "copy");
  const TaskBundle back = load_bundle(dir.path() / "copy");
  const std::string src = fixture_spec("binary_search", "spec1");
  EXPECT_EQ(serialize_report(evaluate_suite(src, back, Limits{}, Scope::all)),
            serialize_report(evaluate_suite(src, bs_bundle(), Limits{}, Scope::all)));
  EXPECT_THROW(parse_task_meta("seed: 3\n---\n"), BundleError);
  EXPECT_THROW(parse_task_meta("task_id: x\n"), BundleError);
}

TEST(SampleFeedback, FaithfulPassesAndWritesAttempt) {
  testing::TempDir dir;
  const auto fb = sample_feedback(fixture_spec("binary_search", "faithful"), bs_bundle(), Limits{},
                                  dir.path(), {}, {{"seed", 5}});
  EXPECT_TRUE(fb.all_passed());
  EXPECT_EQ(fb.text, "All sample testcases passed.\n");
  ASSERT_TRUE(fb.attempt_dir);
  EXPECT_EQ(fb.attempt_dir->filename(), "1");
  for (const char* f : {"report", "natural_language_feedback.txt", "metadata"}) {
    EXPECT_TRUE(std::filesystem::exists(*fb.attempt_dir / f)) << f;
  }
  const auto meta = nlohmann::json::parse(read_file(*fb.attempt_dir / "metadata"));
  EXPECT_EQ(meta.at("seed"), 5);
  EXPECT_EQ(read_file(*fb.attempt_dir / "natural_language_feedback.txt"), fb.text);
  EXPECT_EQ(allocate_run_dir(dir.path()).filename(), "2");
}

TEST(SampleFeedback, NamesTheFailingSample) {
  const auto fb = sample_feedback(fixture_spec("binary_search", "spec3"), bs_bundle(), Limits{});
  EXPECT_FALSE(fb.all_passed());
  EXPECT_FALSE(fb.attempt_dir);
  EXPECT_NE(fb.text.find("post_spec rejected correct output"), std::string::npos) << fb.text;
  EXPECT_NE(fb.text.find("sample_2"), std::string::npos) << fb.text;
  for (const auto& r : fb.report.results) EXPECT_TRUE(r.visible);
}

TEST(SampleFeedback, CompileError) {
  const auto fb = sample_feedback("spec fn pre_spec(in1: In1) -> bool { true ", bs_bundle(), Limits{});
  EXPECT_NE(fb.text.find("failed to compile"), std::string::npos);
}

}  // namespace
}  // namespace specfaith
