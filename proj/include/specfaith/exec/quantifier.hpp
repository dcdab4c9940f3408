#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "specfaith/exec/fault.hpp"
#include "specfaith/kernel/types.hpp"

namespace specfaith {

/// Inclusive integer interval; empty when lo > hi.
struct IterRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

/// Turns a guard `lower op x op upper` into the inclusive range of x.
/// Strict bounds at the edge of the 64-bit domain yield an empty range.
IterRange guard_range(std::int64_t lower, bool lower_strict, std::int64_t upper, bool upper_strict);

/// Shared iteration counter for one top-level evaluation.
struct IterationBudget {
  std::uint64_t used = 0;
  std::uint64_t limit = 0;
};

/// Computes the range of variable `prefix.size()` given the values of the
/// earlier variables. Bounds are evaluated eagerly; a fault aborts.
using RangeFn = std::function<std::variant<IterRange, Fault>(std::span<const std::int64_t> prefix)>;
/// Visits one complete tuple; returns whether to keep enumerating.
using VisitFn = std::function<std::variant<bool, Fault>(std::span<const std::int64_t> tuple)>;

/// Enumerates, in lexicographic order, every tuple (x_1..x_N) whose
/// components lie in their guard ranges, stopping as soon as `visit`
/// returns false. Each variable's values must lie in `types[k]` (an integer
/// width or char); a value outside it is an overflow fault. Char variables
/// skip surrogate code points. Returns true if enumeration ran to
/// completion, false if `visit` stopped it.
std::variant<bool, Fault> expand_quantifier(std::span<const TypeRef> types, const RangeFn& range,
                                            const VisitFn& visit, IterationBudget& budget,
                                            SourceSpan span = {});

}  // namespace specfaith
