#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specfaith/kernel/errors.hpp"

namespace specfaith {

/// Declared width of an integer type. Every width shares one 64-bit signed
/// semantic domain; the width only narrows the admissible range.
enum class IntWidth : std::uint8_t {
  i8, i16, i32, i64, i128, isize,
  u8, u16, u32, u64, u128, usize,
  // Unbounded mathematical integers. Only legal as `as` cast targets.
  int_, nat,
};

struct IntRange {
  std::int64_t lo;
  std::int64_t hi;
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

IntRange int_range(IntWidth width);
std::string_view int_width_name(IntWidth width);
std::optional<IntWidth> int_width_from_name(std::string_view name);
inline bool is_unbounded(IntWidth w) { return w == IntWidth::int_ || w == IntWidth::nat; }

enum class TypeKind : std::uint8_t {
  integer, boolean, character, string, seq, set, map, multiset, option, named,
};

class TypeRef {
 public:
  TypeRef() = default;

  static TypeRef integer(IntWidth width = IntWidth::i64);
  static TypeRef boolean();
  static TypeRef character();
  static TypeRef string();
  static TypeRef seq(TypeRef elem);
  static TypeRef set(TypeRef elem);
  static TypeRef multiset(TypeRef elem);
  static TypeRef option(TypeRef elem);
  static TypeRef map(TypeRef key, TypeRef value);
  static TypeRef named(std::string name);

  TypeKind kind() const { return kind_; }
  IntWidth width() const { return width_; }
  const std::string& name() const { return name_; }
  /// Element type of seq/set/multiset/option; key type of map.
  const TypeRef& elem() const { return args_.at(0); }
  const TypeRef& key() const { return args_.at(0); }
  const TypeRef& mapped() const { return args_.at(1); }

  bool is_integer() const { return kind_ == TypeKind::integer; }
  bool is_primitive() const {
    return kind_ == TypeKind::integer || kind_ == TypeKind::boolean ||
           kind_ == TypeKind::character;
  }

  /// Surface syntax, e.g. `Seq<Map<i64, bool>>`.
  std::string to_string() const;

  /// Exact structural equality, integer widths included.
  friend bool operator==(const TypeRef& a, const TypeRef& b);

 private:
  TypeKind kind_ = TypeKind::boolean;
  IntWidth width_ = IntWidth::i64;
  std::vector<TypeRef> args_;
  std::string name_;
};

/// Equality that treats every integer width as the same type. Used by the
/// type checker: all spec-level integers share 64-bit arithmetic.
bool compatible(const TypeRef& a, const TypeRef& b);

struct FieldDecl {
  std::string name;
  TypeRef type;
  SourceSpan span;
};

struct VariantDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  /// `Tag(T, U)` rather than `Tag { a: T }`; fields are then named "0", "1", ...
  bool tuple_like = false;
  SourceSpan span;
};

/// A user struct (record) or enum (tagged variant) declaration.
struct TypeDecl {
  enum class Kind { record, variant };
  Kind kind = Kind::record;
  std::string name;
  std::vector<FieldDecl> fields;      // records
  std::vector<VariantDecl> variants;  // enums
  SourceSpan span;

  std::optional<std::size_t> field_index(std::string_view field) const;
  std::optional<std::size_t> variant_index(std::string_view tag) const;
  /// Structural comparison of two declarations (names, field names, types).
  bool same_layout(const TypeDecl& other) const;
  std::string to_source() const;
};

using TypeDeclPtr = std::shared_ptr<const TypeDecl>;

}  // namespace specfaith
