#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "specfaith/kernel/ast.hpp"
#include "specfaith/kernel/errors.hpp"

namespace specfaith {

/// Which part of the bounded-quantifier grammar a quantifier violates.
enum class GuardRule : std::uint8_t {
  missing_bound,
  wrong_operator,
  forward_reference,
  variable_order,
  extra_guard,
  non_integer_variable,
  unbounded_variable,
};

std::string_view guard_rule_name(GuardRule rule);

class GuardError : public SpecError {
 public:
  GuardError(GuardRule rule, std::string variable, const std::string& detail, SourceSpan span)
      : SpecError("GuardError",
                  std::string(guard_rule_name(rule)) + " for `" + variable + "`: " + detail, span),
        rule_(rule),
        variable_(std::move(variable)) {}

  GuardRule rule() const noexcept { return rule_; }
  /// Variable the rule concerns; for forward_reference, the one used early.
  const std::string& variable() const noexcept { return variable_; }

 private:
  GuardRule rule_;
  std::string variable_;
};

/// Checks every quantifier in a type-checked module against the guard
/// grammar. Throws the first GuardError in source order.
void validate_quantifiers(const SpecModule& module);

}  // namespace specfaith
