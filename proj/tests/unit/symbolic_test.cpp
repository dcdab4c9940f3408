#include <gtest/gtest.h>

#include "random_modules.hpp"
#include "specfaith/exec/interpreter.hpp"
#include "specfaith/symbolic/resolver.hpp"
#include "support.hpp"

namespace specfaith {
namespace {

using testing::binary_search_signature;
using testing::compile_bs;

Value input(const std::string& arr, int n, long k) {
  return testing::input_literal(binary_search_signature(), "In1 { n: " + std::to_string(n) + ", arr: seq[" + arr +
                                                               "], k: " + std::to_string(k) + " }");
}

bool trace_mentions(const SymbolicOutcome& o, std::string_view needle) {
  for (const auto& line : o.trace) {
    if (line.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(TryProve, LiteralTrue) {
  auto m = compile_bs("true");
  const auto o = try_prove(*m, Which::pre, input("", 0, 0), std::nullopt, Polarity::assert_);
  EXPECT_TRUE(o.is_proved(true));
}

TEST(TryProve, LengthCheckOnUnsortedInput) {
  auto m = compile_module(testing::fixture_spec("binary_search", "spec2"), binary_search_signature());
  const Value tc2 = input("3, 2, 3", 3, 2);
  EXPECT_TRUE(try_prove(*m, Which::pre, tc2, std::nullopt, Polarity::assert_).is_proved(true));
  EXPECT_TRUE(try_prove(*m, Which::pre, tc2, std::nullopt, Polarity::assert_not).is_proved(false));
}

TEST(TryProve, QuantifiedPreIsUnknown) {
  auto m = compile_module(testing::fixture_spec("binary_search", "faithful"), binary_search_signature());
  const auto o = try_prove(*m, Which::pre, input("10, 20, 20, 20, 30", 5, 20), std::nullopt, Polarity::assert_);
  EXPECT_FALSE(o.proved);
  EXPECT_TRUE(trace_mentions(o, "quantifier"));
}

TEST(TryProve, FalseBodyUnderAssertNot) {
  auto m = compile_bs("false");
  const auto o = try_prove(*m, Which::pre, input("", 0, 0), std::nullopt, Polarity::assert_not);
  EXPECT_TRUE(o.is_proved(true));
}

TEST(TryProve, ShortCircuitSkipsQuantifier) {
  auto m = compile_bs("in1.n > 100 && forall |i: i64| 0 <= i < in1.n ==> in1.arr[i] > 0");
  EXPECT_TRUE(try_prove(*m, Which::pre, input("1", 1, 0), std::nullopt, Polarity::assert_).is_proved(false));
}

TEST(TryProve, InlinesHelpers) {
  auto m = compile_bs("is_big(in1.k)", "true", "spec fn is_big(x: i64) -> bool { x > 10 }");
  const auto o = try_prove(*m, Which::pre, input("", 0, 42), std::nullopt, Polarity::assert_);
  EXPECT_TRUE(o.is_proved(true));
  EXPECT_TRUE(trace_mentions(o, "inline"));
}

TEST(TryProve, GivesUpOnRecursionFaultsAndLargeContainers) {
  auto rec = compile_bs("r(3)", "true", "spec fn r(x: i64) -> bool decreases x { if x <= 0 { true } else { r(x - 1) } }");
  EXPECT_FALSE(try_prove(*rec, Which::pre, input("", 0, 0), std::nullopt, Polarity::assert_).proved);

  auto div = compile_bs("in1.k / 0 == 1 || true");
  EXPECT_FALSE(try_prove(*div, Which::pre, input("", 0, 0), std::nullopt, Polarity::assert_).proved);

  auto ovf = compile_bs("in1.k + 1 > 0");
  EXPECT_FALSE(try_prove(*ovf, Which::pre, input("", 0, INT64_MAX), std::nullopt, Polarity::assert_).proved);

  auto len = compile_bs("in1.arr.len() == in1.n");
  std::string big;
  for (int i = 0; i < 65; ++i) big += (i ? ", " : "") + std::to_string(i);
  EXPECT_FALSE(try_prove(*len, Which::pre, input(big, 65, 0), std::nullopt, Polarity::assert_).proved);
  EXPECT_TRUE(try_prove(*len, Which::pre, input("1, 2", 2, 0), std::nullopt, Polarity::assert_).proved);
}

TEST(TryProve, NodeBudget) {
  std::string body = "true";
  for (int i = 0; i < 60; ++i) body = "(" + body + " && in1.k == in1.k)";
  auto m = compile_bs(body);
  FoldOptions tight;
  tight.node_budget = 20;
  EXPECT_FALSE(try_prove(*m, Which::pre, input("", 0, 1), std::nullopt, Polarity::assert_, tight).proved);
  EXPECT_TRUE(try_prove(*m, Which::pre, input("", 0, 1), std::nullopt, Polarity::assert_).proved);
}

TEST(TryProve, PostRequiresOutput) {
  auto m = compile_bs("true");
  EXPECT_THROW(try_prove(*m, Which::post, input("", 0, 0), std::nullopt, Polarity::assert_),
               std::invalid_argument);
}

// Soundness against execution over a random corpus: 500 modules, 4
// testcases each, pre and post, both polarities.
TEST(ResolverSoundness, ProvedAgreesWithExecution) {
  testing::ModuleGen gen(8675309);
  const auto& sig = binary_search_signature();
  Limits limits;
  limits.max_quantifier_iterations = 10'000;
  int proved = 0, checked = 0;
  for (int mi = 0; mi < 500; ++mi) {
    const std::string src = gen.module();
    TypedModulePtr m;
    ASSERT_NO_THROW(m = compile_module(src, sig)) << src;
    for (int t = 0; t < 4; ++t) {
      const Value in = testing::input_literal(sig, gen.input_literal());
      const Value out = testing::output_literal(sig, gen.output_literal());
      for (Which w : {Which::pre, Which::post}) {
        const std::optional<Value> o = w == Which::post ? std::optional(out) : std::nullopt;
        const PredicateResult exec = eval_predicate(*m, w, in, o, limits);
        for (Polarity pol : {Polarity::assert_, Polarity::assert_not}) {
          const SymbolicOutcome s = try_prove(*m, w, in, o, pol);
          ++checked;
          if (!s.proved) continue;
          ++proved;
          ASSERT_FALSE(trace_mentions(s, "unknown")) << src;
          if (const bool* b = std::get_if<bool>(&exec)) {
            const bool predicted = pol == Polarity::assert_ ? s.value : !s.value;
            ASSERT_EQ(*b, predicted) << src << "\ninput " << print_value_literal(in);
          }
        }
      }
    }
  }
  EXPECT_EQ(checked, 500 * 4 * 2 * 2);
  // The corpus must exercise the proving path, not just Unknown.
  EXPECT_GT(proved, checked / 10);
}

}  // namespace
}  // namespace specfaith
