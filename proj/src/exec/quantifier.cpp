#include "specfaith/exec/quantifier.hpp"

#include <limits>
#include <string>
#include <vector>

namespace specfaith {

namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMaxChar = 0x10FFFF;

bool is_surrogate(std::int64_t c) { return c >= 0xD800 && c <= 0xDFFF; }

/// Whether `v` inhabits the bound variable's declared type.
bool representable(const TypeRef& t, std::int64_t v) {
  if (t.kind() == TypeKind::character) return v >= 0 && v <= kMaxChar && !is_surrogate(v);
  return int_range(t.width()).contains(v);
}

class Expander {
 public:
  Expander(std::span<const TypeRef> types, const RangeFn& range, const VisitFn& visit,
           IterationBudget& budget, SourceSpan span)
      : types_(types), range_(range), visit_(visit), budget_(budget), span_(span) {
    tuple_.reserve(types.size());
  }

  /// true = keep going, false = visitor stopped.
  std::variant<bool, Fault> level() {
    const std::size_t k = tuple_.size();
    if (k == types_.size()) return visit_(tuple_);
    auto r = range_(tuple_);
    if (auto* f = std::get_if<Fault>(&r)) return *f;
    const IterRange bounds = std::get<IterRange>(r);
    const TypeRef& type = types_[k];
    const bool is_char = type.kind() == TypeKind::character;
    tuple_.push_back(0);
    for (std::int64_t x = bounds.lo; x <= bounds.hi; ++x) {
      if (is_char && is_surrogate(x)) {
        x = 0xDFFF;  // skip the surrogate block
        continue;
      }
      if (++budget_.used > budget_.limit) {
        return Fault{FaultKind::budget_exhausted, span_,
                     "quantifier iteration budget of " + std::to_string(budget_.limit) +
                         " exhausted"};
      }
      if (!representable(type, x)) {
        return Fault{FaultKind::overflow, span_,
                     "bound variable value " + std::to_string(x) + " does not fit `" +
                         type.to_string() + "`"};
      }
      tuple_[k] = x;
      auto step = level();
      if (auto* f = std::get_if<Fault>(&step)) return *f;
      if (!std::get<bool>(step)) return false;
      if (x == kMax) break;
    }
    tuple_.pop_back();
    return true;
  }

 private:
  std::span<const TypeRef> types_;
  const RangeFn& range_;
  const VisitFn& visit_;
  IterationBudget& budget_;
  SourceSpan span_;
  std::vector<std::int64_t> tuple_;
};

}  // namespace

IterRange guard_range(std::int64_t lower, bool lower_strict, std::int64_t upper,
                      bool upper_strict) {
  if (lower_strict) {
    if (lower == kMax) return {};
    ++lower;
  }
  if (upper_strict) {
    if (upper == kMin) return {};
    --upper;
  }
  return {lower, upper};
}

std::variant<bool, Fault> expand_quantifier(std::span<const TypeRef> types, const RangeFn& range,
                                            const VisitFn& visit, IterationBudget& budget,
                                            SourceSpan span) {
  return Expander(types, range, visit, budget, span).level();
}

}  // namespace specfaith
