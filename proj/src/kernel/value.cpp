#include "specfaith/kernel/value.hpp"

#include <algorithm>

namespace specfaith {

Value Value::integer(Int v) {
  Value out;
  out.rep_ = v;
  return out;
}

Value Value::boolean(bool v) {
  Value out;
  out.rep_ = v;
  return out;
}

Value Value::character(char32_t c) {
  Value out;
  out.rep_ = c;
  return out;
}

Value Value::string(std::u32string s) {
  Value out;
  out.rep_ = std::make_shared<const std::u32string>(std::move(s));
  return out;
}

Value Value::seq(SeqData elems) {
  Value out;
  out.rep_ = SeqBox{std::make_shared<const SeqData>(std::move(elems))};
  return out;
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Value out;
  out.rep_ = SetBox{std::make_shared<const SetData>(std::move(elems))};
  return out;
}

Value Value::map(MapData entries) {
  // Stable sort keeps insertion order among equal keys so "last wins" holds.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  MapData unique;
  unique.reserve(entries.size());
  for (auto& entry : entries) {
    if (!unique.empty() && unique.back().first == entry.first) {
      unique.back().second = std::move(entry.second);
    } else {
      unique.push_back(std::move(entry));
    }
  }
  Value out;
  out.rep_ = MapBox{std::make_shared<const MapData>(std::move(unique))};
  return out;
}

Value Value::multiset(MultisetData entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  MultisetData merged;
  merged.reserve(entries.size());
  for (auto& entry : entries) {
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second <= 0; });
  Value out;
  out.rep_ = MultisetBox{std::make_shared<const MultisetData>(std::move(merged))};
  return out;
}

Value Value::none() {
  Value out;
  out.rep_ = std::make_shared<const OptionData>();
  return out;
}

Value Value::some(Value v) {
  Value out;
  out.rep_ = std::make_shared<const OptionData>(OptionData{std::move(v)});
  return out;
}

Value Value::record(TypeDeclPtr decl, std::vector<Value> fields) {
  Value out;
  out.rep_ = std::make_shared<const RecordData>(RecordData{std::move(decl), std::move(fields)});
  return out;
}

Value Value::variant(TypeDeclPtr decl, std::size_t tag, std::vector<Value> fields) {
  Value out;
  out.rep_ =
      std::make_shared<const VariantData>(VariantData{std::move(decl), tag, std::move(fields)});
  return out;
}

const std::u32string& Value::as_string() const { return *std::get<StringPtr>(rep_); }
const SeqData& Value::as_seq() const { return *std::get<SeqBox>(rep_).p; }
const SetData& Value::as_set() const { return *std::get<SetBox>(rep_).p; }
const MapData& Value::as_map() const { return *std::get<MapBox>(rep_).p; }
const MultisetData& Value::as_multiset() const { return *std::get<MultisetBox>(rep_).p; }
const RecordData& Value::as_record() const { return *std::get<RecordPtr>(rep_); }
const VariantData& Value::as_variant() const { return *std::get<VariantPtr>(rep_); }

const Value* Value::option_payload() const {
  const auto& data = *std::get<OptionPtr>(rep_);
  return data.payload ? &*data.payload : nullptr;
}

std::size_t Value::container_size() const {
  switch (kind()) {
    case Kind::string: return as_string().size();
    case Kind::seq: return as_seq().size();
    case Kind::set: return as_set().size();
    case Kind::map: return as_map().size();
    case Kind::multiset: return as_multiset().size();
    case Kind::record: return as_record().fields.size();
    case Kind::variant: return as_variant().fields.size();
    default: return 0;
  }
}

namespace {

template <typename Range, typename Cmp>
std::strong_ordering lexicographic(const Range& a, const Range& b, Cmp cmp) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  using K = Value::Kind;
  switch (a.kind()) {
    case K::integer: return a.as_int() <=> b.as_int();
    case K::boolean: return a.as_bool() <=> b.as_bool();
    case K::character: return a.as_char() <=> b.as_char();
    case K::string: return a.as_string() <=> b.as_string();
    case K::seq:
      return lexicographic(a.as_seq(), b.as_seq(), compare_values);
    case K::set:
      return lexicographic(a.as_set(), b.as_set(), compare_values);
    case K::map:
      return lexicographic(a.as_map(), b.as_map(), [](const auto& x, const auto& y) {
        if (auto c = compare_values(x.first, y.first); c != 0) return c;
        return compare_values(x.second, y.second);
      });
    case K::multiset:
      return lexicographic(a.as_multiset(), b.as_multiset(), [](const auto& x, const auto& y) {
        if (auto c = compare_values(x.first, y.first); c != 0) return c;
        return x.second <=> y.second;
      });
    case K::option: {
      const Value* pa = a.option_payload();
      const Value* pb = b.option_payload();
      if (!pa || !pb) return (pa != nullptr) <=> (pb != nullptr);
      return compare_values(*pa, *pb);
    }
    case K::record: {
      const auto& ra = a.as_record();
      const auto& rb = b.as_record();
      if (auto c = ra.decl->name <=> rb.decl->name; c != 0) return c;
      return lexicographic(ra.fields, rb.fields, compare_values);
    }
    case K::variant: {
      const auto& va = a.as_variant();
      const auto& vb = b.as_variant();
      if (auto c = va.decl->name <=> vb.decl->name; c != 0) return c;
      if (auto c = va.tag <=> vb.tag; c != 0) return c;
      return lexicographic(va.fields, vb.fields, compare_values);
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace

bool operator==(const Value& a, const Value& b) { return compare_values(a, b) == 0; }

std::strong_ordering operator<=>(const Value& a, const Value& b) { return compare_values(a, b); }

bool well_typed(const Value& v, const TypeRef& type, const DeclLookup& lookup) {
  using K = Value::Kind;
  switch (type.kind()) {
    case TypeKind::integer:
      return v.kind() == K::integer && int_range(type.width()).contains(v.as_int());
    case TypeKind::boolean: return v.kind() == K::boolean;
    case TypeKind::character: return v.kind() == K::character;
    case TypeKind::string: return v.kind() == K::string;
    case TypeKind::seq:
      if (v.kind() != K::seq) return false;
      return std::all_of(v.as_seq().begin(), v.as_seq().end(),
                         [&](const Value& e) { return well_typed(e, type.elem(), lookup); });
    case TypeKind::set:
      if (v.kind() != K::set) return false;
      return std::all_of(v.as_set().begin(), v.as_set().end(),
                         [&](const Value& e) { return well_typed(e, type.elem(), lookup); });
    case TypeKind::multiset:
      if (v.kind() != K::multiset) return false;
      return std::all_of(v.as_multiset().begin(), v.as_multiset().end(), [&](const auto& e) {
        return e.second >= 1 && well_typed(e.first, type.elem(), lookup);
      });
    case TypeKind::map:
      if (v.kind() != K::map) return false;
      return std::all_of(v.as_map().begin(), v.as_map().end(), [&](const auto& e) {
        return well_typed(e.first, type.key(), lookup) &&
               well_typed(e.second, type.mapped(), lookup);
      });
    case TypeKind::option:
      if (v.kind() != K::option) return false;
      return v.option_payload() == nullptr || well_typed(*v.option_payload(), type.elem(), lookup);
    case TypeKind::named: {
      TypeDeclPtr decl = lookup(type.name());
      if (!decl) return false;
      if (decl->kind == TypeDecl::Kind::record) {
        if (v.kind() != K::record || v.as_record().decl->name != decl->name) return false;
        const auto& fields = v.as_record().fields;
        if (fields.size() != decl->fields.size()) return false;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (!well_typed(fields[i], decl->fields[i].type, lookup)) return false;
        }
        return true;
      }
      if (v.kind() != K::variant || v.as_variant().decl->name != decl->name) return false;
      const auto& var = v.as_variant();
      if (var.tag >= decl->variants.size()) return false;
      const auto& fdecls = decl->variants[var.tag].fields;
      if (fdecls.size() != var.fields.size()) return false;
      for (std::size_t i = 0; i < fdecls.size(); ++i) {
        if (!well_typed(var.fields[i], fdecls[i].type, lookup)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace specfaith
