#pragma once

#include <chrono>
#include <cstdint>

namespace specfaith {

/// Resource bounds for one top-level evaluation.
struct Limits {
  /// Total quantifier loop iterations, all nesting levels together.
  std::uint64_t max_quantifier_iterations = 10'000'000;
  std::uint64_t max_recursion_depth = 10'000;
  /// Interpreter steps (one per evaluated expression node).
  std::uint64_t max_steps = 200'000'000;
  std::chrono::milliseconds wall_clock_budget{10'000};

  /// Throws std::invalid_argument unless every bound is strictly positive.
  void validate() const;

  /// Applies SPECFAITH_LIMITS_STEPS, SPECFAITH_LIMITS_ITERS,
  /// SPECFAITH_LIMITS_TIMEOUT_SECS and SPECFAITH_LIMITS_RECURSION_DEPTH when set.
  /// Throws std::invalid_argument on a malformed value.
  static Limits from_environment(Limits base);
  static Limits from_environment();
};

}  // namespace specfaith
