#pragma once

#include <string_view>
#include <vector>

#include "specfaith/kernel/ast.hpp"

namespace specfaith {

/// Parses a specification module. Proof and exec functions, `use`
/// declarations and macro wrappers (`verus! { ... }`) are skipped.
/// Throws SyntaxError or DuplicateDefinition.
SpecModule parse_module(std::string_view source);

/// Parses a sequence of `struct` / `enum` declarations only, as found in a
/// task signature. Throws SyntaxError or DuplicateDefinition.
std::vector<TypeDeclPtr> parse_type_declarations(std::string_view source);

/// Parses a single type expression such as `Seq<Map<i64, bool>>`.
TypeRef parse_type(std::string_view source);

}  // namespace specfaith
