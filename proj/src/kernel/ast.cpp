#include "specfaith/kernel/ast.hpp"

#include <array>

namespace specfaith {

std::string_view binary_op_text(BinaryOp op) {
  static constexpr std::array<std::string_view, 14> kText{
      "+", "-", "*", "/", "%", "==", "!=", "<", "<=", ">", ">=", "&&", "||", "==>",
  };
  return kText[static_cast<std::size_t>(op)];
}

std::string_view builtin_name(Builtin b) {
  static constexpr std::array<std::string_view, 44> kNames{
      "seq.len", "seq.index", "seq.subrange", "seq.add", "seq.push", "seq.update",
      "seq.to_multiset", "seq.drop_first", "seq.drop_last", "seq.take", "seq.skip", "seq.first",
      "seq.last", "seq.is_prefix_of", "seq.is_suffix_of", "seq.contains", "seq.index_of",
      "seq.index_of_first", "seq.index_of_last",
      "set.len", "set.contains", "set.insert", "set.remove", "set.union", "set.intersect",
      "set.difference",
      "map.len", "map.index", "map.dom", "map.insert", "map.remove", "map.get",
      "multiset.len", "multiset.count", "multiset.add", "multiset.sub",
      "string.len", "string.index",
      "option.unwrap",
      "seq.empty", "set.empty", "map.empty", "multiset.empty", "multiset.singleton",
  };
  return kNames[static_cast<std::size_t>(b)];
}

const SpecFn* SpecModule::find_fn(std::string_view name) const {
  auto idx = fn_index(name);
  return idx ? &fns[*idx] : nullptr;
}

std::optional<std::size_t> SpecModule::fn_index(std::string_view name) const {
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (fns[i].name == name) return i;
  }
  return std::nullopt;
}

TypeDeclPtr SpecModule::find_type(std::string_view name) const {
  for (const auto& t : types) {
    if (t->name == name) return t;
  }
  return nullptr;
}

}  // namespace specfaith
