#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specfaith/exec/interpreter.hpp"

namespace specfaith {

enum class Polarity : std::uint8_t { assert_, assert_not };

/// Proved(b) or Unknown, with the folding trace that led there.
struct SymbolicOutcome {
  bool proved = false;
  bool value = false;  // meaningful only when proved
  std::vector<std::string> trace;

  bool is_proved(bool b) const { return proved && value == b; }
};

struct FoldOptions {
  /// Maximum expression nodes visited before giving up.
  std::size_t node_budget = 100'000;
  /// Builtins and equality over containers larger than this are not folded.
  std::size_t container_threshold = 64;
};

/// Ground constant folding of pre_spec(input) / post_spec(input, output).
/// Proved(b) means the predicate folds to a literal; with assert_not, b is
/// negated, so Proved(true) there says the predicate is false. Quantifiers,
/// recursive calls, large containers and anything that could fault give
/// Unknown.
SymbolicOutcome try_prove(const TypedModule& module, Which which, const Value& input,
                          const std::optional<Value>& output, Polarity polarity,
                          const FoldOptions& options = {});

}  // namespace specfaith
