#include "specfaith/kernel/literal.hpp"

#include <cstdio>
#include <limits>

#include "specfaith/kernel/lexer.hpp"

namespace specfaith {

namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const DeclLookup& lookup) : lookup_(lookup) {
    try {
      toks_ = tokenize(text);
    } catch (const SyntaxError& e) {
      throw LiteralError(e.message(), e.span());
    }
  }

  Value run(const TypeRef& type) {
    Value v = value(type);
    if (peek().kind != TokenKind::end) fail("trailing input after value");
    return v;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw LiteralError(message, peek().span);
  }

  void expect(std::string_view punct) {
    if (!peek().is(punct)) fail("expected `" + std::string(punct) + "`");
    next();
  }

  void keyword(std::string_view word, const TypeRef& type) {
    if (!peek().is_ident(word)) {
      fail("expected a value of type `" + type.to_string() + "` starting with `" +
           std::string(word) + "`");
    }
    next();
  }

  /// Comma-separated items up to `close`; a trailing comma is allowed.
  template <typename F>
  void list(std::string_view close, F item) {
    while (!peek().is(close)) {
      item();
      if (!peek().is(",")) break;
      next();
    }
    expect(close);
  }

  std::int64_t integer(const TypeRef& type) {
    const bool negative = peek().is("-");
    if (negative) next();
    const Token& t = peek();
    if (t.kind != TokenKind::integer) fail("expected an integer");
    if (t.text.find_first_not_of("0123456789_") != std::string::npos) {
      fail("integer literal with a suffix");
    }
    const std::uint64_t limit =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + (negative ? 1 : 0);
    if (t.magnitude_overflow || t.magnitude > limit) {
      fail("integer " + std::string(negative ? "-" : "") + t.text +
           " is out of the 64-bit signed range");
    }
    std::int64_t v = 0;
    if (negative) {
      v = t.magnitude == limit ? std::numeric_limits<std::int64_t>::min()
                               : -static_cast<std::int64_t>(t.magnitude);
    } else {
      v = static_cast<std::int64_t>(t.magnitude);
    }
    if (!int_range(type.width()).contains(v)) {
      fail("integer " + std::to_string(v) + " is out of range for `" + type.to_string() + "`");
    }
    next();
    return v;
  }

  Value value(const TypeRef& type) {
    switch (type.kind()) {
      case TypeKind::integer: return Value::integer(integer(type));
      case TypeKind::boolean:
        if (peek().is_ident("true") || peek().is_ident("false")) {
          return Value::boolean(next().text == "true");
        }
        fail("expected `true` or `false`");
      case TypeKind::character:
        if (peek().kind != TokenKind::char_lit) fail("expected a char literal");
        return Value::character(next().str.at(0));
      case TypeKind::string:
        if (peek().kind != TokenKind::string_lit) fail("expected a string literal");
        return Value::string(next().str);
      case TypeKind::seq: {
        keyword("seq", type);
        expect("[");
        SeqData elems;
        list("]", [&] { elems.push_back(value(type.elem())); });
        return Value::seq(std::move(elems));
      }
      case TypeKind::set: {
        keyword("set", type);
        expect("{");
        std::vector<Value> elems;
        list("}", [&] { elems.push_back(value(type.elem())); });
        Value out = Value::set(elems);
        if (out.as_set().size() != elems.size()) fail("duplicate set element");
        return out;
      }
      case TypeKind::map: {
        keyword("map", type);
        expect("{");
        MapData entries;
        list("}", [&] {
          Value k = value(type.key());
          expect(":");
          entries.emplace_back(std::move(k), value(type.mapped()));
        });
        const std::size_t n = entries.size();
        Value out = Value::map(std::move(entries));
        if (out.as_map().size() != n) fail("duplicate map key");
        return out;
      }
      case TypeKind::multiset: {
        keyword("multiset", type);
        expect("{");
        MultisetData entries;
        list("}", [&] {
          Value e = value(type.elem());
          expect(":");
          const std::int64_t count = integer(TypeRef::integer(IntWidth::i64));
          if (count < 1) fail("multiset counts must be at least 1");
          entries.emplace_back(std::move(e), count);
        });
        const std::size_t n = entries.size();
        Value out = Value::multiset(std::move(entries));
        if (out.as_multiset().size() != n) fail("duplicate multiset element");
        return out;
      }
      case TypeKind::option:
        if (peek().is_ident("none")) {
          next();
          return Value::none();
        }
        keyword("some", type);
        {
          expect("(");
          Value inner = value(type.elem());
          expect(")");
          return Value::some(std::move(inner));
        }
      case TypeKind::named: return named(type);
    }
    fail("unsupported type");
  }

  std::vector<Value> braced_fields(const std::vector<FieldDecl>& decls, const std::string& what) {
    expect("{");
    std::vector<std::optional<Value>> slots(decls.size());
    list("}", [&] {
      if (peek().kind != TokenKind::ident) fail("expected a field name");
      const std::string name = peek().text;
      std::optional<std::size_t> idx;
      for (std::size_t i = 0; i < decls.size(); ++i) {
        if (decls[i].name == name) idx = i;
      }
      if (!idx) fail("`" + what + "` has no field `" + name + "`");
      if (slots[*idx]) fail("field `" + name + "` given twice");
      next();
      expect(":");
      slots[*idx] = value(decls[*idx].type);
    });
    std::vector<Value> out;
    for (std::size_t i = 0; i < decls.size(); ++i) {
      if (!slots[i]) fail("`" + what + "` is missing field `" + decls[i].name + "`");
      out.push_back(std::move(*slots[i]));
    }
    return out;
  }

  Value named(const TypeRef& type) {
    TypeDeclPtr decl = lookup_(type.name());
    if (!decl) fail("unknown type `" + type.name() + "`");
    if (!peek().is_ident(decl->name)) fail("expected a `" + decl->name + "` value");
    next();
    if (decl->kind == TypeDecl::Kind::record) {
      return Value::record(decl, braced_fields(decl->fields, decl->name));
    }
    expect("::");
    if (peek().kind != TokenKind::ident) fail("expected a variant name");
    auto idx = decl->variant_index(peek().text);
    if (!idx) fail("enum `" + decl->name + "` has no variant `" + peek().text + "`");
    next();
    const VariantDecl& v = decl->variants[*idx];
    const std::string what = decl->name + "::" + v.name;
    if (v.tuple_like) {
      expect("(");
      std::vector<Value> fields;
      list(")", [&] {
        if (fields.size() >= v.fields.size()) fail("too many fields for `" + what + "`");
        fields.push_back(value(v.fields[fields.size()].type));
      });
      if (fields.size() != v.fields.size()) fail("too few fields for `" + what + "`");
      return Value::variant(decl, *idx, std::move(fields));
    }
    if (v.fields.empty()) return Value::variant(decl, *idx, {});
    return Value::variant(decl, *idx, braced_fields(v.fields, what));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const DeclLookup& lookup_;
};

void print_char(std::string& out, char32_t c, char32_t quote) {
  switch (c) {
    case U'\n': out += "\\n"; return;
    case U'\t': out += "\\t"; return;
    case U'\r': out += "\\r"; return;
    case U'\0': out += "\\0"; return;
    case U'\\': out += "\\\\"; return;
    default: break;
  }
  if (c == quote) {
    out += '\\';
    out += static_cast<char>(c);
    return;
  }
  if (c < 0x20 || c == 0x7F) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "\\u{%x}", static_cast<unsigned>(c));
    out += buf;
    return;
  }
  append_utf8(out, c);
}

void print(std::string& out, const Value& v);

template <typename Range, typename F>
void join(std::string& out, const Range& items, F each) {
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ", ";
    first = false;
    each(item);
  }
}

void print_fields(std::string& out, const std::vector<FieldDecl>& decls,
                  const std::vector<Value>& fields) {
  if (fields.empty()) {
    out += " {}";
    return;
  }
  out += " { ";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += decls[i].name + ": ";
    print(out, fields[i]);
  }
  out += " }";
}

void print(std::string& out, const Value& v) {
  using K = Value::Kind;
  switch (v.kind()) {
    case K::integer: out += std::to_string(v.as_int()); return;
    case K::boolean: out += v.as_bool() ? "true" : "false"; return;
    case K::character:
      out += '\'';
      print_char(out, v.as_char(), U'\'');
      out += '\'';
      return;
    case K::string:
      out += '"';
      for (char32_t c : v.as_string()) print_char(out, c, U'"');
      out += '"';
      return;
    case K::seq:
      out += "seq[";
      join(out, v.as_seq(), [&](const Value& e) { print(out, e); });
      out += "]";
      return;
    case K::set:
      out += "set{";
      join(out, v.as_set(), [&](const Value& e) { print(out, e); });
      out += "}";
      return;
    case K::map:
      out += "map{";
      join(out, v.as_map(), [&](const auto& e) {
        print(out, e.first);
        out += ": ";
        print(out, e.second);
      });
      out += "}";
      return;
    case K::multiset:
      out += "multiset{";
      join(out, v.as_multiset(), [&](const auto& e) {
        print(out, e.first);
        out += ": " + std::to_string(e.second);
      });
      out += "}";
      return;
    case K::option:
      if (const Value* p = v.option_payload()) {
        out += "some(";
        print(out, *p);
        out += ")";
      } else {
        out += "none";
      }
      return;
    case K::record: {
      const auto& r = v.as_record();
      out += r.decl->name;
      print_fields(out, r.decl->fields, r.fields);
      return;
    }
    case K::variant: {
      const auto& var = v.as_variant();
      const VariantDecl& decl = var.decl->variants[var.tag];
      out += var.decl->name + "::" + decl.name;
      if (decl.tuple_like) {
        out += "(";
        join(out, var.fields, [&](const Value& e) { print(out, e); });
        out += ")";
      } else if (!decl.fields.empty()) {
        print_fields(out, decl.fields, var.fields);
      }
      return;
    }
  }
}

}  // namespace

Value parse_value_literal(std::string_view text, const TypeRef& type, const DeclLookup& lookup) {
  return LiteralParser(text, lookup).run(type);
}

std::string print_value_literal(const Value& value) {
  std::string out;
  print(out, value);
  return out;
}

}  // namespace specfaith
