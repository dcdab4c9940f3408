#include "specfaith/exec/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specfaith {

void Limits::validate() const {
  if (max_quantifier_iterations == 0 || max_recursion_depth == 0 || max_steps == 0 ||
      wall_clock_budget.count() <= 0) {
    throw std::invalid_argument("limits must be strictly positive");
  }
}

namespace {

std::optional<std::uint64_t> env_count(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  std::string_view text(raw);
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || v == 0) {
    throw std::invalid_argument(std::string(name) + " must be a positive integer, got `" +
                                std::string(text) + "`");
  }
  return v;
}

}  // namespace

Limits Limits::from_environment(Limits base) {
  if (auto v = env_count("SPECFAITH_LIMITS_STEPS")) base.max_steps = *v;
  if (auto v = env_count("SPECFAITH_LIMITS_ITERS")) base.max_quantifier_iterations = *v;
  if (auto v = env_count("SPECFAITH_LIMITS_RECURSION_DEPTH")) base.max_recursion_depth = *v;
  if (auto v = env_count("SPECFAITH_LIMITS_TIMEOUT_SECS")) {
    base.wall_clock_budget = std::chrono::seconds(*v);
  }
  return base;
}

Limits Limits::from_environment() { return from_environment(Limits{}); }

}  // namespace specfaith
