#pragma once

#include <compare>
#include <functional>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specfaith/kernel/types.hpp"

namespace specfaith {

class Value;

using SeqData = std::vector<Value>;
/// Sorted by structural order, no duplicates.
using SetData = std::vector<Value>;
/// Sorted by key, unique keys.
using MapData = std::vector<std::pair<Value, Value>>;
/// Sorted by element, every count >= 1.
using MultisetData = std::vector<std::pair<Value, std::int64_t>>;

struct OptionData;
struct RecordData;
struct VariantData;

/// Immutable specification-level runtime value. Containers share their
/// payload; every "update" builds a new value and leaves the receiver intact.
class Value {
 public:
  using Int = std::int64_t;

  enum class Kind : std::uint8_t {
    integer, boolean, character, string, seq, set, map, multiset, option, record, variant,
  };

  Value() : rep_(Int{0}) {}

  static Value integer(Int v);
  static Value boolean(bool v);
  static Value character(char32_t c);
  static Value string(std::u32string s);
  static Value seq(SeqData elems);
  /// Sorts and removes duplicates.
  static Value set(std::vector<Value> elems);
  /// Sorts; on duplicate keys the last binding wins.
  static Value map(MapData entries);
  /// Sorts and merges equal elements; drops non-positive counts.
  static Value multiset(MultisetData entries);
  static Value none();
  static Value some(Value v);
  static Value record(TypeDeclPtr decl, std::vector<Value> fields);
  static Value variant(TypeDeclPtr decl, std::size_t tag, std::vector<Value> fields);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }

  Int as_int() const { return std::get<Int>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  char32_t as_char() const { return std::get<char32_t>(rep_); }
  const std::u32string& as_string() const;
  const SeqData& as_seq() const;
  const SetData& as_set() const;
  const MapData& as_map() const;
  const MultisetData& as_multiset() const;
  /// nullptr for `none`.
  const Value* option_payload() const;
  const RecordData& as_record() const;
  const VariantData& as_variant() const;

  /// Number of direct children, used for folding-size thresholds.
  std::size_t container_size() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  using StringPtr = std::shared_ptr<const std::u32string>;
  struct SeqBox { std::shared_ptr<const SeqData> p; };
  struct SetBox { std::shared_ptr<const SetData> p; };
  struct MapBox { std::shared_ptr<const MapData> p; };
  struct MultisetBox { std::shared_ptr<const MultisetData> p; };
  using OptionPtr = std::shared_ptr<const OptionData>;
  using RecordPtr = std::shared_ptr<const RecordData>;
  using VariantPtr = std::shared_ptr<const VariantData>;

  // Alternative order must match Kind.
  std::variant<Int, bool, char32_t, StringPtr, SeqBox, SetBox, MapBox, MultisetBox, OptionPtr,
               RecordPtr, VariantPtr>
      rep_;
};

struct OptionData {
  std::optional<Value> payload;
};

struct RecordData {
  TypeDeclPtr decl;
  std::vector<Value> fields;
};

struct VariantData {
  TypeDeclPtr decl;
  std::size_t tag = 0;
  std::vector<Value> fields;
};

/// True when `v` inhabits `type`; named types resolve through `lookup`.
/// Integer payloads are checked against the declared width.
using DeclLookup = std::function<TypeDeclPtr(const std::string&)>;
bool well_typed(const Value& v, const TypeRef& type, const DeclLookup& lookup);

}  // namespace specfaith
