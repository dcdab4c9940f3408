#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "specfaith/harness/evaluate.hpp"

namespace specfaith {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// T testcases in a bucket, P of them passed, k sampled.
struct BucketStats {
  std::int64_t T = 0;
  std::int64_t P = 0;
  std::int64_t k = 0;
};

/// C(n, r); zero when r < 0 or r > n. Throws DomainError for n < 0.
BigInt binomial(std::int64_t n, std::int64_t r);

/// Probability that a uniform k-subset of the bucket contains a failing
/// test: 1 - C(P,k)/C(T,k). Throws DomainError unless 0 <= P <= T and
/// 0 <= k <= T.
Rational catch_probability(const BucketStats& stats);

/// 1 - prod_b (1 - catch_probability(b)), buckets sampled independently.
Rational task_catch_probability(std::span<const BucketStats> buckets);

/// Per-bucket (T, P) of one task's full-suite evaluation.
struct TaskCounts {
  std::string task_id;
  std::vector<std::pair<std::int64_t, std::int64_t>> buckets;
};

TaskCounts task_counts(const EvaluationReport& report);

struct CurvePoint {
  std::int64_t m = 0;
  Rational expected_pass;
};

/// For each budget m: mean over tasks of prod_b C(P_b, k_b)/C(T_b, k_b)
/// with k_b = min(m, T_b). Throws DomainError on an empty task list, a
/// negative budget or inconsistent counts.
std::vector<CurvePoint> expected_pass_curve(std::span<const TaskCounts> tasks,
                                            std::span<const std::int64_t> budgets);

/// Rows are problems, columns independent runs.
using RunMatrix = std::vector<std::vector<bool>>;

struct PassMetrics {
  std::size_t runs = 0;
  Rational pass_at_1;  // mean over runs of the solved fraction
  Rational pass_at_k;  // solved in at least one run
  Rational pass_hat_k; // solved in every run
};

/// Throws DomainError on an empty or ragged matrix.
PassMetrics pass_metrics(const RunMatrix& matrix);

/// Reads a run matrix: one row per line of 0/1 tokens, optionally led by
/// a `label:` token; blank lines and `#` comments are skipped.
RunMatrix parse_run_matrix(std::string_view text);

/// `5/6`, or `1` for integers.
std::string to_fraction_string(const Rational& r);
/// Rounded half away from zero to `digits` fractional digits: `0.833333`.
std::string to_decimal_string(const Rational& r, int digits = 6);

}  // namespace specfaith
