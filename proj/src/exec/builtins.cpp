#include "specfaith/exec/builtins.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace specfaith {

namespace {

constexpr std::size_t kBuiltinCount = static_cast<std::size_t>(Builtin::multiset_singleton) + 1;

Fault fault(FaultKind kind, std::string detail) { return Fault{kind, {}, std::move(detail)}; }

Fault out_of_bounds(const std::string& what, std::int64_t i, std::size_t len) {
  return fault(FaultKind::out_of_bounds_index,
               what + " " + std::to_string(i) + " out of bounds for length " + std::to_string(len));
}

bool in_range(std::int64_t i, std::size_t len) {
  return i >= 0 && static_cast<std::uint64_t>(i) < len;
}

EvalResult integer(std::size_t n) { return Value::integer(static_cast<std::int64_t>(n)); }

template <typename Entries>
auto find_key(const Entries& entries, const Value& key) {
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const auto& e, const Value& k) { return e.first < k; });
  return (it != entries.end() && it->first == key) ? it : entries.end();
}

bool set_has(const SetData& s, const Value& x) { return std::binary_search(s.begin(), s.end(), x); }

std::int64_t multiset_count(const MultisetData& m, const Value& x) {
  auto it = find_key(m, x);
  return it == m.end() ? 0 : it->second;
}

EvalResult seq_slice(const SeqData& s, std::size_t lo, std::size_t hi) {
  return Value::seq(SeqData(s.begin() + static_cast<std::ptrdiff_t>(lo),
                            s.begin() + static_cast<std::ptrdiff_t>(hi)));
}

EvalResult apply(Builtin op, const Value& recv, std::span<const Value> args) {
  switch (op) {
    // ---- seq ----
    case Builtin::seq_len: return integer(recv.as_seq().size());
    case Builtin::seq_index: {
      const auto& s = recv.as_seq();
      const std::int64_t i = args[0].as_int();
      if (!in_range(i, s.size())) return out_of_bounds("index", i, s.size());
      return s[static_cast<std::size_t>(i)];
    }
    case Builtin::seq_subrange: {
      const auto& s = recv.as_seq();
      const std::int64_t lo = args[0].as_int();
      const std::int64_t hi = args[1].as_int();
      if (lo < 0 || lo > hi || static_cast<std::uint64_t>(hi) > s.size()) {
        return fault(FaultKind::out_of_bounds_index,
                     "subrange(" + std::to_string(lo) + ", " + std::to_string(hi) +
                         ") out of bounds for length " + std::to_string(s.size()));
      }
      return seq_slice(s, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
    }
    case Builtin::seq_add: {
      SeqData out = recv.as_seq();
      const auto& rhs = args[0].as_seq();
      out.insert(out.end(), rhs.begin(), rhs.end());
      return Value::seq(std::move(out));
    }
    case Builtin::seq_push: {
      SeqData out = recv.as_seq();
      out.push_back(args[0]);
      return Value::seq(std::move(out));
    }
    case Builtin::seq_update: {
      const std::int64_t i = args[0].as_int();
      if (!in_range(i, recv.as_seq().size())) return out_of_bounds("update index", i, recv.as_seq().size());
      SeqData out = recv.as_seq();
      out[static_cast<std::size_t>(i)] = args[1];
      return Value::seq(std::move(out));
    }
    case Builtin::seq_to_multiset: {
      MultisetData entries;
      for (const auto& e : recv.as_seq()) entries.emplace_back(e, 1);
      return Value::multiset(std::move(entries));
    }
    case Builtin::seq_drop_first:
    case Builtin::seq_drop_last: {
      const auto& s = recv.as_seq();
      if (s.empty()) return fault(FaultKind::out_of_bounds_index, std::string(builtin_name(op)) + " on an empty sequence");
      return op == Builtin::seq_drop_first ? seq_slice(s, 1, s.size()) : seq_slice(s, 0, s.size() - 1);
    }
    case Builtin::seq_take:
    case Builtin::seq_skip: {
      const auto& s = recv.as_seq();
      const std::int64_t n = args[0].as_int();
      if (n < 0 || static_cast<std::uint64_t>(n) > s.size()) {
        return out_of_bounds(op == Builtin::seq_take ? "take count" : "skip count", n, s.size());
      }
      const auto k = static_cast<std::size_t>(n);
      return op == Builtin::seq_take ? seq_slice(s, 0, k) : seq_slice(s, k, s.size());
    }
    case Builtin::seq_first:
    case Builtin::seq_last: {
      const auto& s = recv.as_seq();
      if (s.empty()) return fault(FaultKind::out_of_bounds_index, std::string(builtin_name(op)) + " on an empty sequence");
      return op == Builtin::seq_first ? s.front() : s.back();
    }
    case Builtin::seq_is_prefix_of: {
      const auto& a = recv.as_seq();
      const auto& b = args[0].as_seq();
      return Value::boolean(a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin()));
    }
    case Builtin::seq_is_suffix_of: {
      const auto& a = recv.as_seq();
      const auto& b = args[0].as_seq();
      return Value::boolean(a.size() <= b.size() &&
                            std::equal(a.begin(), a.end(), b.end() - static_cast<std::ptrdiff_t>(a.size())));
    }
    case Builtin::seq_contains: {
      const auto& s = recv.as_seq();
      return Value::boolean(std::find(s.begin(), s.end(), args[0]) != s.end());
    }
    case Builtin::seq_index_of: {
      const auto& s = recv.as_seq();
      auto it = std::find(s.begin(), s.end(), args[0]);
      if (it == s.end()) return fault(FaultKind::out_of_bounds_index, "index_of: element not present");
      return integer(static_cast<std::size_t>(it - s.begin()));
    }
    case Builtin::seq_index_of_first: {
      const auto& s = recv.as_seq();
      auto it = std::find(s.begin(), s.end(), args[0]);
      if (it == s.end()) return Value::none();
      return Value::some(Value::integer(it - s.begin()));
    }
    case Builtin::seq_index_of_last: {
      const auto& s = recv.as_seq();
      auto it = std::find(s.rbegin(), s.rend(), args[0]);
      if (it == s.rend()) return Value::none();
      return Value::some(Value::integer(static_cast<std::int64_t>(s.rend() - it) - 1));
    }
    // ---- set ----
    case Builtin::set_len: return integer(recv.as_set().size());
    case Builtin::set_contains: return Value::boolean(set_has(recv.as_set(), args[0]));
    case Builtin::set_insert: {
      std::vector<Value> out = recv.as_set();
      out.push_back(args[0]);
      return Value::set(std::move(out));
    }
    case Builtin::set_remove: {
      std::vector<Value> out;
      for (const auto& e : recv.as_set()) {
        if (!(e == args[0])) out.push_back(e);
      }
      return Value::set(std::move(out));
    }
    case Builtin::set_union:
    case Builtin::set_intersect:
    case Builtin::set_difference: {
      const auto& a = recv.as_set();
      const auto& b = args[0].as_set();
      std::vector<Value> out;
      if (op == Builtin::set_union) {
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      } else if (op == Builtin::set_intersect) {
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      } else {
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      }
      return Value::set(std::move(out));
    }
    // ---- map ----
    case Builtin::map_len: return integer(recv.as_map().size());
    case Builtin::map_index: {
      const auto& m = recv.as_map();
      auto it = find_key(m, args[0]);
      if (it == m.end()) return fault(FaultKind::out_of_bounds_index, "map index: key not present");
      return it->second;
    }
    case Builtin::map_dom: {
      std::vector<Value> keys;
      for (const auto& [k, v] : recv.as_map()) keys.push_back(k);
      return Value::set(std::move(keys));
    }
    case Builtin::map_insert: {
      MapData out = recv.as_map();
      out.emplace_back(args[0], args[1]);  // last binding wins
      return Value::map(std::move(out));
    }
    case Builtin::map_remove: {
      MapData out;
      for (const auto& e : recv.as_map()) {
        if (!(e.first == args[0])) out.push_back(e);
      }
      return Value::map(std::move(out));
    }
    case Builtin::map_get: {
      const auto& m = recv.as_map();
      auto it = find_key(m, args[0]);
      return it == m.end() ? Value::none() : Value::some(it->second);
    }
    // ---- multiset ----
    case Builtin::multiset_len: {
      std::int64_t total = 0;
      for (const auto& e : recv.as_multiset()) {
        if (__builtin_add_overflow(total, e.second, &total)) {
          return fault(FaultKind::overflow, "multiset length overflows");
        }
      }
      return Value::integer(total);
    }
    case Builtin::multiset_count: return Value::integer(multiset_count(recv.as_multiset(), args[0]));
    case Builtin::multiset_add: {
      MultisetData out = recv.as_multiset();
      for (const auto& [e, c] : args[0].as_multiset()) {
        auto it = std::lower_bound(out.begin(), out.end(), e,
                                   [](const auto& x, const Value& k) { return x.first < k; });
        if (it != out.end() && it->first == e) {
          if (__builtin_add_overflow(it->second, c, &it->second)) {
            return fault(FaultKind::overflow, "multiset count overflows");
          }
        } else {
          out.insert(it, {e, c});
        }
      }
      return Value::multiset(std::move(out));
    }
    case Builtin::multiset_sub: {
      MultisetData out;
      const auto& rhs = args[0].as_multiset();
      for (const auto& [e, c] : recv.as_multiset()) {
        const std::int64_t left = c - multiset_count(rhs, e);
        if (left > 0) out.emplace_back(e, left);
      }
      return Value::multiset(std::move(out));
    }
    // ---- string ----
    case Builtin::string_len: return integer(recv.as_string().size());
    case Builtin::string_index: {
      const auto& s = recv.as_string();
      const std::int64_t i = args[0].as_int();
      if (!in_range(i, s.size())) return out_of_bounds("string index", i, s.size());
      return Value::character(s[static_cast<std::size_t>(i)]);
    }
    // ---- option ----
    case Builtin::option_unwrap: {
      const Value* p = recv.option_payload();
      if (!p) return fault(FaultKind::unwrap_none, "unwrap on None");
      return *p;
    }
    // ---- constructors ----
    case Builtin::seq_empty: return Value::seq({});
    case Builtin::set_empty: return Value::set({});
    case Builtin::map_empty: return Value::map({});
    case Builtin::multiset_empty: return Value::multiset({});
    case Builtin::multiset_singleton: return Value::multiset({{args[0], 1}});
  }
  throw std::logic_error("unhandled builtin");
}

}  // namespace

std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kBuiltinCount; ++i) {
    const auto b = static_cast<Builtin>(i);
    if (builtin_name(b) == name) return b;
  }
  return std::nullopt;
}

EvalResult builtin_apply(Builtin op, const Value& receiver, std::span<const Value> args) {
  return apply(op, receiver, args);
}

EvalResult builtin_apply(std::string_view op_name, const Value& receiver,
                         std::span<const Value> args) {
  auto op = builtin_from_name(op_name);
  if (!op) throw std::invalid_argument("unknown builtin `" + std::string(op_name) + "`");
  return apply(*op, receiver, args);
}

}  // namespace specfaith
