#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "specfaith/ingest/pipeline.hpp"
#include "specfaith/kernel/literal.hpp"
#include "support.hpp"

namespace specfaith {
namespace {

namespace fs = std::filesystem;

fs::path ledger(const std::string& task) { return testing::fixtures() / task / "ledger"; }

const TaskBundle& header_1027c() {
  static const TaskBundle h = parse_task_meta(read_file(ledger("cf1027c") / "task.meta"));
  return h;
}

const Layout& layout_1027c() {
  static const Layout l = Layout::parse(read_file(ledger("cf1027c") / "layout.convspec"), header_1027c().signature);
  return l;
}

RawCase raw(std::string in, std::optional<std::string> out = std::nullopt, std::string origin = "") {
  return RawCase{std::move(in), std::move(out), Provenance{}, std::move(origin)};
}

TEST(RoundTrip, SampleCaseWithoutFinalNewline) {
  const LayoutConverter conv(layout_1027c().with_final_newline(false));
  const auto r = roundtrip_check(raw("1\n4\n1 1 10000 10000"), conv);
  const auto* ok = std::get_if<RoundTripOk>(&r);
  ASSERT_TRUE(ok) << describe(r);
  const Value expected = parse_value_literal("In1 { ns: seq[4], sticks: seq[seq[1, 1, 10000, 10000]] }",
                                             TypeRef::named("In1"), header_1027c().signature.lookup());
  EXPECT_EQ(ok->input, expected);
}

TEST(RoundTrip, CanonicalTextIsOk) {
  const LayoutConverter conv(layout_1027c());
  EXPECT_TRUE(std::holds_alternative<RoundTripOk>(
      roundtrip_check(raw("2\n4\n1 1 2 2\n5\n3 3 3 3 9\n", "1 1 2 2\n3 3 3 3\n"), conv)));
}

TEST(RoundTrip, NonCanonicalSpacingIsMismatch) {
  const LayoutConverter conv(layout_1027c());
  const auto r = roundtrip_check(raw("1\n4\n1  1 2 2\n"), conv);
  ASSERT_TRUE(std::holds_alternative<Mismatch>(r) || std::holds_alternative<ParseFailure>(r)) << describe(r);
}

TEST(RoundTrip, BadTokenIsParseFailure) {
  const LayoutConverter conv(layout_1027c());
  const auto r = roundtrip_check(raw("hello\n4\n1 1 2 2\n"), conv);
  EXPECT_TRUE(std::holds_alternative<ParseFailure>(r)) << describe(r);
}

/// Printer mutant: the layout printer with the trailing newline removed.
class DropFinalNewline : public LayoutConverter {
 public:
  using LayoutConverter::LayoutConverter;
  std::string print_input(const Value& input) const override {
    std::string s = LayoutConverter::print_input(input);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }
};

TEST(RoundTrip, MutantPrinterMismatchesAtFinalByte) {
  const DropFinalNewline conv(layout_1027c());
  const std::string text = "1\n4\n1 1 10000 10000\n";
  const auto r = roundtrip_check(raw(text), conv);
  const auto* m = std::get_if<Mismatch>(&r);
  ASSERT_TRUE(m) << describe(r);
  EXPECT_EQ(m->part, "input");
  // Independent diff: the mutant output is text minus its last byte.
  std::size_t off = 0;
  const std::string mutant = text.substr(0, text.size() - 1);
  while (off < mutant.size() && mutant[off] == text[off]) ++off;
  EXPECT_EQ(m->offset, off);
  EXPECT_EQ(m->offset, text.size() - 1);
}

TEST(RoundTrip, FirstDifference) {
  EXPECT_EQ(first_difference("abc", "abc"), std::nullopt);
  EXPECT_EQ(first_difference("abc", "abd"), 2u);
  EXPECT_EQ(first_difference("ab", "abc"), 2u);
  EXPECT_EQ(first_difference("", "x"), 0u);
}

// Reprinting parsed values a second time gives the same bytes again.
TEST(RoundTrip, Idempotence) {
  const LayoutConverter conv(layout_1027c());
  std::mt19937_64 rng(11);
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int ok_count = 0;
  for (int it = 0; it < 300; ++it) {
    std::string in = std::to_string(roll(1, 3)) + "\n";
    const int t = in[0] - '0';
    for (int i = 0; i < t; ++i) {
      const int n = roll(4, 8);
      in += std::to_string(n) + "\n";
      for (int j = 0; j < n; ++j) in += (j ? " " : "") + std::to_string(roll(1, 10000));
      in += "\n";
    }
    const auto r = roundtrip_check(raw(in), conv);
    const auto* ok = std::get_if<RoundTripOk>(&r);
    ASSERT_TRUE(ok) << describe(r);
    ++ok_count;
    const std::string once = conv.print_input(ok->input);
    const std::string twice = conv.print_input(conv.parse_input(once));
    EXPECT_EQ(once, in);
    EXPECT_EQ(twice, once);
  }
  EXPECT_EQ(ok_count, 300);
}

TEST(Layout, RejectsBadDescriptions) {
  const auto& sig = header_1027c().signature;
  EXPECT_THROW(Layout::parse("input In1\n  line nope\n", sig), LayoutError);
  EXPECT_THROW(Layout::parse("input Nope\n", sig), LayoutError);
  EXPECT_THROW(Layout::parse("  line ns[i]\n", sig), LayoutError);
}

TEST(ExternalConverter, SpeaksValueLiterals) {
  testing::TempDir dir;
  const fs::path script = dir.path() / "conv.py";
  write_file(script, R"py(import os, re, sys
mode = sys.argv[1]
text = sys.stdin.read()
if mode == "parse-input":
    print("In1 { x: %d }" % int(text))
elif mode == "print-input":
    sys.stdout.write(re.search(r"x: (-?\d+)", text).group(1) + "\n")
elif mode == "parse-output":
    x = int(re.search(r"x: (-?\d+)", os.environ["SPECFAITH_INPUT_LITERAL"]).group(1))
    print("Out { y: %d }" % (int(text) - x))
else:
    x = int(re.search(r"x: (-?\d+)", os.environ["SPECFAITH_INPUT_LITERAL"]).group(1))
    sys.stdout.write("%d\n" % (int(re.search(r"y: (-?\d+)", text).group(1)) + x))
)py");
  const TaskSignature sig = TaskSignature::from_source("pub struct In1 { pub x: i64 }\npub struct Out { pub y: i64 }",
                                                       "In1", "Out");
  const ExternalConverter conv("python3 " + script.string(), sig);
  const auto r = roundtrip_check(raw("7\n", "10\n"), conv);
  const auto* ok = std::get_if<RoundTripOk>(&r);
  ASSERT_TRUE(ok) << describe(r);
  EXPECT_EQ(print_value_literal(*ok->output), "Out { y: 3 }");
  EXPECT_THROW(conv.parse_input("zzz"), ConversionError);
}

HackRecord valid_hack(HackRecord::Checker checker, bool answer) {
  HackRecord h;
  h.id = "1";
  h.input = "1\n4\n1 1 2 2\n";
  h.program_output = "1 1 2 2\n";
  h.checker = checker;
  if (answer) h.answer = "2 2 1 1\n";
  return h;
}

TEST(RouteHack, OutcomeTable) {
  HackRecord invalid;
  invalid.id = "2";
  invalid.input = "0\n";
  invalid.validator = HackRecord::Validator::invalid;
  invalid.validator_message = "T must be positive";
  auto r = route_hack(invalid);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first, Bucket::pre_sound);
  EXPECT_FALSE(r[0].second.output);

  r = route_hack(valid_hack(HackRecord::Checker::rejected, false));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].first, Bucket::pre_complete);
  EXPECT_EQ(r[1].first, Bucket::post_sound);
  EXPECT_EQ(r[1].second.output, "1 1 2 2\n");

  r = route_hack(valid_hack(HackRecord::Checker::accepted, true));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].first, Bucket::pre_complete);
  EXPECT_EQ(r[1].first, Bucket::post_complete);
  EXPECT_EQ(r[2].first, Bucket::post_complete);
  EXPECT_EQ(r[2].second.output, "2 2 1 1\n");

  r = route_hack(valid_hack(HackRecord::Checker::rejected, true));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1].first, Bucket::post_sound);
  EXPECT_EQ(r[2].first, Bucket::post_complete);
}

// Every well-formed record routes somewhere; invalid inputs never reach a
// completeness bucket (and carry no answer); each routed case keeps the hack input verbatim.
TEST(RouteHack, Totality) {
  for (int mask = 0; mask < 8; ++mask) {
    HackRecord h;
    h.id = std::to_string(mask);
    h.input = "x y\n";
    if (mask & 1) {
      h.validator = HackRecord::Validator::invalid;
      h.validator_message = "bad";
    } else {
      h.program_output = "out\n";
      h.checker = (mask & 2) ? HackRecord::Checker::accepted : HackRecord::Checker::rejected;
      if (mask & 4) h.answer = "z\n";
    }
    ASSERT_NO_THROW(h.validate()) << mask;
    const auto routed = route_hack(h);
    EXPECT_GE(routed.size(), 1u);
    for (const auto& [b, c] : routed) {
      EXPECT_EQ(c.input, h.input);
      EXPECT_EQ(c.output.has_value(), !is_pre(b));
      if (mask & 1) EXPECT_FALSE(is_complete(b));
    }
  }
}

TEST(HackRecordFormat, ParseFormatRoundTrip) {
  const std::string text = read_file(ledger("cf1027c") / "hacks" / "477544.record");
  const HackRecord h = parse_hack_record(text);
  EXPECT_EQ(h.id, "477544");
  EXPECT_EQ(h.checker, HackRecord::Checker::rejected);
  EXPECT_EQ(h.program_output, "4 4 10 10\n9 9 15 15\n");
  EXPECT_EQ(parse_hack_record(format_hack_record(h)).answer, h.answer);
  EXPECT_EQ(format_hack_record(parse_hack_record(format_hack_record(h))), format_hack_record(h));
}

TEST(HackRecordFormat, MalformedRecords) {
  EXPECT_THROW(parse_hack_record("id: 1\nvalidator: invalid\ninput <<EOF\n0\nEOF\n"), MalformedRecord);
  EXPECT_THROW(parse_hack_record("id: 1\nvalidator: valid\ninput <<EOF\n0\nEOF\n"), MalformedRecord);
  EXPECT_THROW(parse_hack_record("id: 1\nvalidator: valid\nchecker: accepted\ninput <<EOF\n0\n"), MalformedRecord);
  EXPECT_THROW(parse_hack_record("id: 1\nvalidator: maybe\n"), MalformedRecord);
  EXPECT_THROW(parse_hack_record("validator: invalid\nvalidator_message: m\ninput <<EOF\n0\nEOF\n"), MalformedRecord);
}

TEST(HackRecordFormat, Truncation) {
  HackRecord h = valid_hack(HackRecord::Checker::accepted, false);
  EXPECT_FALSE(h.truncated());
  h.input_length = h.input.size() + 10;
  EXPECT_TRUE(h.truncated());
  h.input_length = h.input.size();
  h.output_length = 1;
  EXPECT_TRUE(h.truncated());
}

TEST(Classify, FixtureRules) {
  const auto rules = FilterRuleset::parse(read_file(ledger("cf1027c") / "filter_rules.txt"));
  auto c = classify_rejection("Expected integer, but \"hello\" found", rules);
  EXPECT_EQ(c.cls, InvalidClass::syntactic);
  EXPECT_TRUE(c.matched);
  c = classify_rejection("No rectangle can be formed in the first list of sticks", rules);
  EXPECT_EQ(c.cls, InvalidClass::semantic);
  EXPECT_TRUE(c.matched);
  c = classify_rejection("something nobody anticipated", rules);
  EXPECT_EQ(c.cls, InvalidClass::semantic);
  EXPECT_FALSE(c.matched);
}

TEST(Classify, FirstMatchWins) {
  const auto rules = FilterRuleset::parse("# comment\nsyntactic integer\nsemantic integer\ndefault syntactic\n");
  EXPECT_EQ(classify_rejection("INTEGER expected", rules).cls, InvalidClass::syntactic);
  EXPECT_EQ(classify_rejection("other", rules).cls, InvalidClass::syntactic);
  EXPECT_THROW(FilterRuleset::parse("sometimes x\n"), MalformedRecord);
  EXPECT_THROW(FilterRuleset::parse("syntactic ([\n"), MalformedRecord);
}

TEST(Dedupe, Examples) {
  EXPECT_EQ(dedupe({raw("a\n"), raw("a\n")}).size(), 1u);
  EXPECT_EQ(dedupe({raw("a\n"), raw("a \n")}).size(), 2u);
  EXPECT_EQ(dedupe({raw("a\n", "1\n"), raw("a\n", "2\n")}).size(), 2u);
  const auto kept = dedupe({raw("a\n", std::nullopt, "first"), raw("b\n"), raw("a\n", std::nullopt, "second")});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].origin, "first");
}

TEST(Dedupe, IdempotentSubsequence) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 500; ++it) {
    std::vector<RawCase> xs;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) {
      const int a = std::uniform_int_distribution<int>(0, 3)(rng);
      const int b = std::uniform_int_distribution<int>(0, 2)(rng);
      xs.push_back(raw(std::to_string(a), b ? std::optional(std::to_string(b)) : std::nullopt, std::to_string(i)));
    }
    const auto once = dedupe(xs);
    EXPECT_EQ(dedupe(once), once);
    // Independent count of distinct (input, output) pairs.
    std::set<std::pair<std::string, std::optional<std::string>>> distinct;
    for (const auto& x : xs) distinct.emplace(x.input, x.output);
    EXPECT_EQ(once.size(), distinct.size());
    std::size_t j = 0;
    for (const auto& x : xs) {
      if (j < once.size() && x == once[j]) ++j;
    }
    EXPECT_EQ(j, once.size());
  }
}

TEST(SampleIndices, DistinctDeterministicAndRoughlyUniform) {
  EXPECT_EQ(sample_indices(10, 3, 42), sample_indices(10, 3, 42));
  EXPECT_EQ(sample_indices(5, 9, 1).size(), 5u);
  std::vector<int> hits(10);
  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    const auto idx = sample_indices(10, 3, seed);
    ASSERT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 3u);
    for (auto i : idx) {
      ASSERT_LT(i, 10u);
      ++hits[i];
    }
  }
  // Each index expected 1500 times; allow a 10% band.
  for (int h : hits) {
    EXPECT_GT(h, 1350);
    EXPECT_LT(h, 1650);
  }
}

Testcase make_case(Bucket b, int i) {
  Testcase t;
  t.bucket = b;
  t.id = "c" + std::to_string(i);
  t.raw_input = "1\n4\n1 1 " + std::to_string(i % 9999 + 1) + " " + std::to_string(i % 9999 + 1) + "\n";
  t.input = LayoutConverter(layout_1027c()).parse_input(t.raw_input);
  if (!is_pre(b)) {
    t.raw_output = "1 1 1 1\n";
    t.output = parse_value_literal("Out { rectangles: seq[Rectangle { s1: 1, s2: 1, s3: 1, s4: 1 }] }",
                                   TypeRef::named("Out"), header_1027c().signature.lookup());
  }
  return t;
}

BucketLists sized(std::array<int, 4> n) {
  BucketLists lists;
  for (Bucket b : kAllBuckets) {
    for (int i = 0; i < n[static_cast<std::size_t>(b)]; ++i) lists[static_cast<std::size_t>(b)].push_back(make_case(b, i));
  }
  return lists;
}

TEST(Finalize, MedianSizesAcceptedUnchanged) {
  const auto r = finalize_bundle(header_1027c(), sized({12, 97, 29, 93}), {});
  const auto* b = std::get_if<TaskBundle>(&r);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->hidden_count(Bucket::pre_complete), 12u);
  EXPECT_EQ(b->hidden_count(Bucket::pre_sound), 97u);
  EXPECT_EQ(b->hidden_count(Bucket::post_complete), 29u);
  EXPECT_EQ(b->hidden_count(Bucket::post_sound), 93u);
  EXPECT_EQ(b->visible.size(), 3u);
}

TEST(Finalize, SmallBucketRejected) {
  for (std::size_t which = 0; which < 4; ++which) {
    std::array<int, 4> n{12, 12, 12, 12};
    n[which] = 4;
    const auto r = finalize_bundle(header_1027c(), sized(n), {});
    const auto* rej = std::get_if<RejectedTask>(&r);
    ASSERT_TRUE(rej);
    EXPECT_EQ(static_cast<std::size_t>(rej->bucket), which);
    EXPECT_EQ(rej->count, 4u);
    EXPECT_NE(rej->reason.find("below minimum 5"), std::string::npos);
  }
}

TEST(Finalize, CapIsExactAndDeterministic) {
  BucketPolicy policy;
  policy.seed = 2024;
  const auto first = finalize_bundle(header_1027c(), sized({450, 5, 5, 5}), policy);
  const auto* a = std::get_if<TaskBundle>(&first);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->hidden_count(Bucket::pre_complete), 200u);
  EXPECT_EQ(a->seed, 2024u);

  // Same multiset in a different order gives the same survivors.
  BucketLists shuffled = sized({450, 5, 5, 5});
  std::shuffle(shuffled[0].begin(), shuffled[0].end(), std::mt19937_64(5));
  const auto second = finalize_bundle(header_1027c(), shuffled, policy);
  const auto* b = std::get_if<TaskBundle>(&second);
  ASSERT_TRUE(b);
  auto ids = [](const TaskBundle& t) {
    std::vector<std::string> out;
    for (const auto& c : t.hidden) out.push_back(std::string(bucket_name(c.bucket)) + "/" + c.id);
    for (const auto& c : t.visible) out.push_back("visible/" + c.raw_input);
    return out;
  };
  EXPECT_EQ(ids(*a), ids(*b));

  policy.seed = 2025;
  const auto third = finalize_bundle(header_1027c(), sized({450, 5, 5, 5}), policy);
  EXPECT_NE(ids(*a), ids(std::get<TaskBundle>(third)));
}

TEST(Finalize, VisibleSamplesAreDisjointCompletenessCopies) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BucketPolicy policy;
    policy.seed = seed;
    const auto r = finalize_bundle(header_1027c(), sized({8, 6, 9, 7}), policy);
    const auto& b = std::get<TaskBundle>(r);
    ASSERT_EQ(b.visible.size(), 3u);
    std::set<std::string> hidden_ids;
    for (const auto& t : b.hidden) hidden_ids.insert(t.id);
    for (std::size_t i = 0; i < b.visible.size(); ++i) {
      const auto& v = b.visible[i];
      EXPECT_EQ(v.id, "sample_" + std::to_string(i + 1));
      EXPECT_TRUE(is_complete(v.bucket));
      EXPECT_FALSE(hidden_ids.contains(v.id));
    }
  }
}

TEST(IngestLedger, Codeforces1027C) {
  const auto out = ingest_ledger(ledger("cf1027c"), {});
  const auto* b = std::get_if<TaskBundle>(&out.result);
  ASSERT_TRUE(b);
  EXPECT_TRUE(out.roundtrip_all_ok);
  EXPECT_EQ(b->task_id, "cf1027c");
  EXPECT_EQ(b->seed, 1027u);
  EXPECT_EQ(b->hidden_count(Bucket::pre_complete), 11u);
  EXPECT_EQ(b->hidden_count(Bucket::pre_sound), 6u);
  EXPECT_EQ(b->hidden_count(Bucket::post_complete), 11u);
  EXPECT_EQ(b->hidden_count(Bucket::post_sound), 6u);
  EXPECT_EQ(b->visible.size(), 3u);
  const auto has = [&](std::string_view needle) {
    return std::any_of(out.log.begin(), out.log.end(),
                       [&](const std::string& l) { return l.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("discard hack_900206: syntactic"));
  std::set<std::string> ids;
  for (const auto& t : b->hidden) ids.insert(std::string(bucket_name(t.bucket)) + "/" + t.id);
  EXPECT_TRUE(ids.contains("post_sound/hack_477544"));
  EXPECT_TRUE(ids.contains("post_complete/hack_477544_answer"));
  EXPECT_TRUE(ids.contains("pre_sound/hack_477694"));
  EXPECT_TRUE(ids.contains("pre_complete/official_01"));

  // Same ledger, same bytes.
  testing::TempDir d1, d2;
  write_bundle(*b, d1.path());
  write_bundle(std::get<TaskBundle>(ingest_ledger(ledger("cf1027c"), {}).result), d2.path());
  for (const auto& e : fs::recursive_directory_iterator(d1.path())) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), d1.path());
    EXPECT_EQ(read_file(e.path()), read_file(d2.path() / rel)) << rel;
  }
  EXPECT_NO_THROW(load_bundle(d1.path()));
}

TEST(IngestLedger, Codeforces1051BAndRejection) {
  const auto out = ingest_ledger(ledger("cf1051b"), {});
  const auto* b = std::get_if<TaskBundle>(&out.result);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->hidden_count(Bucket::pre_complete), 10u);
  EXPECT_EQ(b->hidden_count(Bucket::pre_sound), 5u);
  EXPECT_EQ(b->hidden_count(Bucket::post_complete), 10u);
  EXPECT_EQ(b->hidden_count(Bucket::post_sound), 5u);

  BucketPolicy strict;
  strict.min_per_bucket = 6;
  const auto rejected = ingest_ledger(ledger("cf1051b"), strict);
  const auto* rej = std::get_if<RejectedTask>(&rejected.result);
  ASSERT_TRUE(rej);
  EXPECT_EQ(rej->count, 5u);
}

TEST(IngestLedger, MalformedHackRecordThrows) {
  testing::TempDir dir;
  fs::copy(ledger("cf1051b"), dir.path(), fs::copy_options::recursive);
  write_file(dir.path() / "hacks" / "999.record", "id: 999\nvalidator: valid\ninput <<EOF\n1 2\nEOF\n");
  EXPECT_THROW(ingest_ledger(dir.path(), {}), MalformedRecord);
}

}  // namespace
}  // namespace specfaith
