#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "specfaith/exec/fault.hpp"
#include "specfaith/exec/limits.hpp"
#include "specfaith/kernel/typecheck.hpp"

namespace specfaith {

enum class Which : std::uint8_t { pre, post };

/// Evaluates `fn_name(args...)` under call-by-value semantics. Throws
/// std::invalid_argument if the function is unknown or the arguments do not
/// match its parameters; every runtime failure is returned as a Fault.
EvalResult eval_call(const TypedModule& module, std::string_view fn_name,
                     std::span<const Value> args, const Limits& limits = {});

using PredicateResult = std::variant<bool, Fault>;

/// pre_spec(input) or post_spec(input, output).
PredicateResult eval_predicate(const TypedModule& module, Which which, const Value& input,
                               const std::optional<Value>& output, const Limits& limits = {});

}  // namespace specfaith
