#pragma once

#include <string>
#include <string_view>

#include "specfaith/kernel/value.hpp"

namespace specfaith {

/// Parses `text` in the value-literal grammar as a value of `type`. Named
/// types resolve through `lookup`. Throws LiteralError.
Value parse_value_literal(std::string_view text, const TypeRef& type, const DeclLookup& lookup);

/// Canonical literal text. Sets, maps and multisets are printed in
/// structural order, so equal values print identically.
std::string print_value_literal(const Value& value);

}  // namespace specfaith
