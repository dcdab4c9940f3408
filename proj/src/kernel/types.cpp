#include "specfaith/kernel/types.hpp"

#include <array>
#include <limits>

namespace specfaith {

namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

struct WidthInfo {
  IntWidth width;
  std::string_view name;
  IntRange range;
};

// 64-bit and wider types are clipped to the shared semantic domain.
constexpr std::array<WidthInfo, 14> kWidths{{
    {IntWidth::i8, "i8", {-128, 127}},
    {IntWidth::i16, "i16", {-32768, 32767}},
    {IntWidth::i32, "i32", {-2147483648LL, 2147483647LL}},
    {IntWidth::i64, "i64", {kMin, kMax}},
    {IntWidth::i128, "i128", {kMin, kMax}},
    {IntWidth::isize, "isize", {kMin, kMax}},
    {IntWidth::u8, "u8", {0, 255}},
    {IntWidth::u16, "u16", {0, 65535}},
    {IntWidth::u32, "u32", {0, 4294967295LL}},
    {IntWidth::u64, "u64", {0, kMax}},
    {IntWidth::u128, "u128", {0, kMax}},
    {IntWidth::usize, "usize", {0, kMax}},
    {IntWidth::int_, "int", {kMin, kMax}},
    {IntWidth::nat, "nat", {0, kMax}},
}};

}  // namespace

IntRange int_range(IntWidth width) {
  for (const auto& info : kWidths) {
    if (info.width == width) return info.range;
  }
  return {kMin, kMax};
}

std::string_view int_width_name(IntWidth width) {
  for (const auto& info : kWidths) {
    if (info.width == width) return info.name;
  }
  return "i64";
}

std::optional<IntWidth> int_width_from_name(std::string_view name) {
  for (const auto& info : kWidths) {
    if (info.name == name) return info.width;
  }
  return std::nullopt;
}

TypeRef TypeRef::integer(IntWidth width) {
  TypeRef t;
  t.kind_ = TypeKind::integer;
  t.width_ = width;
  return t;
}

TypeRef TypeRef::boolean() {
  TypeRef t;
  t.kind_ = TypeKind::boolean;
  return t;
}

TypeRef TypeRef::character() {
  TypeRef t;
  t.kind_ = TypeKind::character;
  return t;
}

TypeRef TypeRef::string() {
  TypeRef t;
  t.kind_ = TypeKind::string;
  return t;
}

TypeRef TypeRef::seq(TypeRef elem) {
  TypeRef t;
  t.kind_ = TypeKind::seq;
  t.args_.push_back(std::move(elem));
  return t;
}

TypeRef TypeRef::set(TypeRef elem) {
  TypeRef t;
  t.kind_ = TypeKind::set;
  t.args_.push_back(std::move(elem));
  return t;
}

TypeRef TypeRef::multiset(TypeRef elem) {
  TypeRef t;
  t.kind_ = TypeKind::multiset;
  t.args_.push_back(std::move(elem));
  return t;
}

TypeRef TypeRef::option(TypeRef elem) {
  TypeRef t;
  t.kind_ = TypeKind::option;
  t.args_.push_back(std::move(elem));
  return t;
}

TypeRef TypeRef::map(TypeRef key, TypeRef value) {
  TypeRef t;
  t.kind_ = TypeKind::map;
  t.args_.push_back(std::move(key));
  t.args_.push_back(std::move(value));
  return t;
}

TypeRef TypeRef::named(std::string name) {
  TypeRef t;
  t.kind_ = TypeKind::named;
  t.name_ = std::move(name);
  return t;
}

std::string TypeRef::to_string() const {
  switch (kind_) {
    case TypeKind::integer: return std::string(int_width_name(width_));
    case TypeKind::boolean: return "bool";
    case TypeKind::character: return "char";
    case TypeKind::string: return "String";
    case TypeKind::seq: return "Seq<" + elem().to_string() + ">";
    case TypeKind::set: return "Set<" + elem().to_string() + ">";
    case TypeKind::multiset: return "Multiset<" + elem().to_string() + ">";
    case TypeKind::option: return "Option<" + elem().to_string() + ">";
    case TypeKind::map: return "Map<" + key().to_string() + ", " + mapped().to_string() + ">";
    case TypeKind::named: return name_;
  }
  return "?";
}

bool operator==(const TypeRef& a, const TypeRef& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == TypeKind::integer) return a.width_ == b.width_;
  if (a.kind_ == TypeKind::named) return a.name_ == b.name_;
  return a.args_ == b.args_;
}

bool compatible(const TypeRef& a, const TypeRef& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::integer:
    case TypeKind::boolean:
    case TypeKind::character:
    case TypeKind::string: return true;
    case TypeKind::named: return a.name() == b.name();
    case TypeKind::map:
      return compatible(a.key(), b.key()) && compatible(a.mapped(), b.mapped());
    default: return compatible(a.elem(), b.elem());
  }
}

std::optional<std::size_t> TypeDecl::field_index(std::string_view field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> TypeDecl::variant_index(std::string_view tag) const {
  for (std::size_t i = 0; i < variants.size(); ++i) {
    if (variants[i].name == tag) return i;
  }
  return std::nullopt;
}

namespace {

bool same_fields(const std::vector<FieldDecl>& a, const std::vector<FieldDecl>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(a[i].type == b[i].type)) return false;
  }
  return true;
}

std::string fields_source(const std::vector<FieldDecl>& fields, bool tuple_like) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    if (!tuple_like) out += fields[i].name + ": ";
    out += fields[i].type.to_string();
  }
  return out;
}

}  // namespace

bool TypeDecl::same_layout(const TypeDecl& other) const {
  if (kind != other.kind || name != other.name) return false;
  if (kind == Kind::record) return same_fields(fields, other.fields);
  if (variants.size() != other.variants.size()) return false;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const auto& a = variants[i];
    const auto& b = other.variants[i];
    if (a.name != b.name || a.tuple_like != b.tuple_like || !same_fields(a.fields, b.fields)) {
      return false;
    }
  }
  return true;
}

std::string TypeDecl::to_source() const {
  if (kind == Kind::record) {
    return "struct " + name + " { " + fields_source(fields, false) + " }";
  }
  std::string out = "enum " + name + " { ";
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const auto& v = variants[i];
    if (i) out += ", ";
    out += v.name;
    if (v.tuple_like) {
      out += "(" + fields_source(v.fields, true) + ")";
    } else if (!v.fields.empty()) {
      out += " { " + fields_source(v.fields, false) + " }";
    }
  }
  return out + " }";
}

}  // namespace specfaith
