#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "specfaith/exec/fault.hpp"
#include "specfaith/kernel/ast.hpp"

namespace specfaith {

/// Looks up a builtin by its table name, e.g. "seq.subrange" or "set.union".
std::optional<Builtin> builtin_from_name(std::string_view name);

/// Applies a container builtin. Static constructors (`seq.empty`,
/// `multiset.singleton`, ...) ignore `receiver`; `multiset.singleton` takes
/// its element as the single argument. Arguments are assumed well typed.
EvalResult builtin_apply(Builtin op, const Value& receiver, std::span<const Value> args);

/// Name-based entry point; throws std::invalid_argument for unknown names.
EvalResult builtin_apply(std::string_view op_name, const Value& receiver,
                         std::span<const Value> args);

}  // namespace specfaith
