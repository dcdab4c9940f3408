#include "specfaith/analytics/analytics.hpp"

#include <algorithm>
#include <sstream>

namespace specfaith {

namespace mp = boost::multiprecision;

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (n < 0) throw DomainError("binomial with negative n");
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  // acc * (n - i) is always divisible by (i + 1) at this point.
  for (std::int64_t i = 0; i < r; ++i) {
    acc *= n - i;
    acc /= i + 1;
  }
  return acc;
}

namespace {

void check(const BucketStats& s) {
  if (s.T < 0 || s.P < 0 || s.P > s.T || s.k < 0 || s.k > s.T) {
    throw DomainError("bucket stats out of range: T=" + std::to_string(s.T) + " P=" +
                      std::to_string(s.P) + " k=" + std::to_string(s.k));
  }
}

/// C(P,k)/C(T,k): the chance a k-sample sees only passing tests.
Rational all_pass(std::int64_t T, std::int64_t P, std::int64_t k) {
  if (k == 0 || P == T) return 1;
  if (P < k) return 0;
  return Rational(binomial(P, k), binomial(T, k));
}

}  // namespace

Rational catch_probability(const BucketStats& stats) {
  check(stats);
  return 1 - all_pass(stats.T, stats.P, stats.k);
}

Rational task_catch_probability(std::span<const BucketStats> buckets) {
  if (buckets.empty()) throw DomainError("task_catch_probability needs at least one bucket");
  Rational survive = 1;
  for (const auto& b : buckets) survive *= 1 - catch_probability(b);
  return 1 - survive;
}

TaskCounts task_counts(const EvaluationReport& report) {
  TaskCounts out{report.task_id, {}};
  for (Bucket b : kAllBuckets) {
    const auto& s = report.bucket(b);
    out.buckets.emplace_back(static_cast<std::int64_t>(s.total), static_cast<std::int64_t>(s.passed));
  }
  return out;
}

std::vector<CurvePoint> expected_pass_curve(std::span<const TaskCounts> tasks,
                                            std::span<const std::int64_t> budgets) {
  if (tasks.empty()) throw DomainError("expected_pass_curve needs at least one task");
  for (const auto& t : tasks) {
    for (auto [T, P] : t.buckets) check({T, P, 0});
  }
  std::vector<CurvePoint> out;
  for (std::int64_t m : budgets) {
    if (m < 0) throw DomainError("negative budget " + std::to_string(m));
    Rational sum = 0;
    for (const auto& t : tasks) {
      Rational p = 1;
      for (auto [T, P] : t.buckets) p *= all_pass(T, P, std::min(m, T));
      sum += p;
    }
    out.push_back({m, sum / static_cast<std::int64_t>(tasks.size())});
  }
  return out;
}

PassMetrics pass_metrics(const RunMatrix& matrix) {
  if (matrix.empty() || matrix.front().empty()) throw DomainError("empty run matrix");
  const std::size_t runs = matrix.front().size();
  for (const auto& row : matrix) {
    if (row.size() != runs) throw DomainError("run matrix is not rectangular");
  }
  const auto rows = static_cast<std::int64_t>(matrix.size());
  std::int64_t solved_cells = 0, any = 0, all = 0;
  for (const auto& row : matrix) {
    const auto c = std::count(row.begin(), row.end(), true);
    solved_cells += c;
    any += c > 0;
    all += static_cast<std::size_t>(c) == runs;
  }
  PassMetrics m;
  m.runs = runs;
  m.pass_at_1 = Rational(solved_cells, rows * static_cast<std::int64_t>(runs));
  m.pass_at_k = Rational(any, rows);
  m.pass_hat_k = Rational(all, rows);
  return m;
}

RunMatrix parse_run_matrix(std::string_view text) {
  RunMatrix out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::string tok;
    std::vector<bool> row;
    bool first = true;
    while (tokens >> tok) {
      if (tok.starts_with('#')) break;
      if (first && tok.ends_with(':')) {
        first = false;
        continue;
      }
      first = false;
      if (tok == "1" || tok == "true") {
        row.push_back(true);
      } else if (tok == "0" || tok == "false") {
        row.push_back(false);
      } else {
        throw DomainError("run matrix line " + std::to_string(lineno) + ": bad entry `" + tok + "`");
      }
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

std::string to_fraction_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = r < 0;
  const Rational a = negative ? Rational(-r) : r;
  const BigInt num = mp::numerator(a) * scale * 2 + mp::denominator(a);
  const BigInt scaled = num / (mp::denominator(a) * 2);
  std::string whole = BigInt(scaled / scale).str();
  std::string frac = BigInt(scaled % scale).str();
  if (digits == 0) return (negative && scaled != 0 ? "-" : "") + whole;
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return (negative && scaled != 0 ? "-" : "") + whole + "." + frac;
}

}  // namespace specfaith
