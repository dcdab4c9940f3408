#include "specfaith/exec/fault.hpp"

#include <array>

namespace specfaith {

std::string_view fault_kind_name(FaultKind kind) {
  static constexpr std::array<std::string_view, 6> kNames{
      "overflow", "div_by_zero", "out_of_bounds_index", "unwrap_none", "budget_exhausted",
      "depth_exceeded",
  };
  return kNames[static_cast<std::size_t>(kind)];
}

std::string Fault::to_string() const {
  std::string out(fault_kind_name(kind));
  out += " at " + span.to_string();
  if (!detail.empty()) out += ": " + detail;
  return out;
}

}  // namespace specfaith
