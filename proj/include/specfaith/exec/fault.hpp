#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "specfaith/kernel/errors.hpp"
#include "specfaith/kernel/value.hpp"

namespace specfaith {

enum class FaultKind : std::uint8_t {
  overflow,
  div_by_zero,
  out_of_bounds_index,
  unwrap_none,
  budget_exhausted,
  depth_exceeded,
};

std::string_view fault_kind_name(FaultKind kind);

/// A runtime panic of the executable specification. Aborts the whole
/// evaluation; no partial result survives it.
struct Fault {
  FaultKind kind = FaultKind::overflow;
  SourceSpan span;
  std::string detail;

  std::string to_string() const;
  friend bool operator==(const Fault& a, const Fault& b) {
    return a.kind == b.kind && a.span == b.span && a.detail == b.detail;
  }
};

using EvalResult = std::variant<Value, Fault>;

inline bool is_fault(const EvalResult& r) { return std::holds_alternative<Fault>(r); }

}  // namespace specfaith
