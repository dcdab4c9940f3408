#include "specfaith/kernel/typecheck.hpp"

#include <functional>
#include <map>
#include <set>

#include "specfaith/kernel/guards.hpp"
#include "specfaith/kernel/parser.hpp"

namespace specfaith {

void annotate_quantifier(Expr& quant);  // guards.cpp

namespace {

using TypeTable = std::map<std::string, TypeDeclPtr, std::less<>>;

TypeDeclPtr find_in(const TypeTable& table, std::string_view name) {
  auto it = table.find(name);
  return it == table.end() ? nullptr : it->second;
}

[[noreturn]] void fail(const std::string& message, SourceSpan span) {
  throw TypeError(message, span);
}

std::string quoted(const TypeRef& t) { return "`" + t.to_string() + "`"; }

/// Set elements and map keys: primitives, strings, records of primitives.
bool keyable(const TypeRef& t, const TypeTable& table) {
  if (t.is_primitive() || t.kind() == TypeKind::string) return true;
  if (t.kind() != TypeKind::named) return false;
  TypeDeclPtr decl = find_in(table, t.name());
  if (!decl || decl->kind != TypeDecl::Kind::record) return false;
  for (const auto& f : decl->fields) {
    if (!f.type.is_primitive()) return false;
  }
  return true;
}

/// Checks that a declared type is well formed. `allow_unbounded` is only
/// set for cast targets.
void check_type(const TypeRef& t, const TypeTable& table, SourceSpan span,
                bool allow_unbounded = false) {
  switch (t.kind()) {
    case TypeKind::integer:
      if (is_unbounded(t.width()) && !allow_unbounded) {
        fail("unbounded integer type " + quoted(t) + " is only allowed as a cast target", span);
      }
      return;
    case TypeKind::named:
      if (!find_in(table, t.name())) fail("unknown type `" + t.name() + "`", span);
      return;
    case TypeKind::set:
    case TypeKind::multiset:
      check_type(t.elem(), table, span);
      if (!keyable(t.elem(), table)) {
        fail("element type " + quoted(t.elem()) +
                 " is not allowed in a set or multiset (primitives, strings and records of "
                 "primitives only)",
             span);
      }
      return;
    case TypeKind::map:
      check_type(t.key(), table, span);
      check_type(t.mapped(), table, span);
      if (!keyable(t.key(), table)) {
        fail("map key type " + quoted(t.key()) +
                 " is not allowed (primitives, strings and records of primitives only)",
             span);
      }
      return;
    case TypeKind::seq:
    case TypeKind::option: check_type(t.elem(), table, span); return;
    default: return;
  }
}

void check_decl(const TypeDecl& decl, const TypeTable& table) {
  for (const auto& f : decl.fields) check_type(f.type, table, f.span);
  for (const auto& v : decl.variants) {
    for (const auto& f : v.fields) check_type(f.type, table, f.span);
  }
}

TypeRef int64() { return TypeRef::integer(IntWidth::i64); }

/// Expressions whose type can only come from context.
bool needs_hint(const Expr& e) {
  switch (e.kind) {
    case ExprKind::none: return true;
    case ExprKind::seq_lit:
    case ExprKind::set_lit: return e.kids.empty();
    case ExprKind::static_call: return e.type_args.empty() && e.name == "empty";
    default: return false;
  }
}

struct Binding {
  std::string name;
  int slot;
  TypeRef type;
};

class Checker {
 public:
  Checker(SpecModule& module, const TypeTable& table) : module_(module), table_(table) {}

  void check_fn(SpecFn& fn) {
    scope_.clear();
    next_slot_ = 0;
    for (const auto& p : fn.params) {
      check_type(p.type, table_, p.span);
      bind(p.name, p.type);
    }
    check_type(fn.ret, table_, fn.span);
    const TypeRef body = infer(*fn.body, fn.ret);
    expect_compatible(body, fn.ret, fn.body->span, "function body");
    fn.num_slots = next_slot_;
  }

  /// Callees of each function, by index.
  std::vector<std::set<std::size_t>> call_graph;
  std::size_t current_fn = 0;

 private:
  int bind(const std::string& name, const TypeRef& type) {
    const int slot = next_slot_++;
    scope_.push_back(Binding{name, slot, type});
    return slot;
  }

  const Binding* lookup_var(std::string_view name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  TypeDeclPtr decl_of(const TypeRef& t) const {
    return t.kind() == TypeKind::named ? find_in(table_, t.name()) : nullptr;
  }

  static void expect_compatible(const TypeRef& got, const TypeRef& want, SourceSpan span,
                                const std::string& what) {
    if (!compatible(got, want)) {
      fail(what + " has type " + quoted(got) + ", expected " + quoted(want), span);
    }
  }

  TypeRef expect_kind(Expr& e, TypeKind kind, const std::string& what,
                      const std::optional<TypeRef>& hint = std::nullopt) {
    const TypeRef t = infer(e, hint);
    if (t.kind() != kind) {
      static const char* kNames[] = {"integer", "bool", "char", "string", "Seq",
                                     "Set",     "Map",  "Multiset", "Option", "user type"};
      fail(what + " must be " + kNames[static_cast<int>(kind)] + ", found " + quoted(t), e.span);
    }
    return t;
  }

  TypeRef keyed(TypeRef t, SourceSpan span) {
    check_type(t, table_, span);
    return t;
  }

  TypeRef infer(Expr& e, const std::optional<TypeRef>& hint = std::nullopt) {
    e.type = infer_inner(e, hint);
    return e.type;
  }

  TypeRef infer_inner(Expr& e, const std::optional<TypeRef>& hint) {
    switch (e.kind) {
      case ExprKind::int_lit: return int64();
      case ExprKind::bool_lit: return TypeRef::boolean();
      case ExprKind::char_lit: return TypeRef::character();
      case ExprKind::str_lit: return TypeRef::string();
      case ExprKind::var: {
        const Binding* b = lookup_var(e.name);
        if (!b) fail("unknown variable `" + e.name + "`", e.span);
        e.slot = b->slot;
        return b->type;
      }
      case ExprKind::field: return infer_field(e);
      case ExprKind::index: return infer_index(e);
      case ExprKind::method: return infer_method(e, hint);
      case ExprKind::call: return infer_call(e);
      case ExprKind::static_call: return infer_static_call(e, hint);
      case ExprKind::unary:
        if (e.uop == UnaryOp::not_) {
          expect_kind(*e.kids[0], TypeKind::boolean, "operand of `!`");
          return TypeRef::boolean();
        }
        expect_kind(*e.kids[0], TypeKind::integer, "operand of unary `-`");
        return int64();
      case ExprKind::binary: return infer_binary(e);
      case ExprKind::chain: {
        TypeRef first = infer(*e.kids[0]);
        if (!first.is_integer() && first.kind() != TypeKind::character) {
          fail("comparison chain operands must be integers or chars", e.kids[0]->span);
        }
        for (std::size_t i = 1; i < e.kids.size(); ++i) {
          expect_compatible(infer(*e.kids[i]), first, e.kids[i]->span, "chain operand");
        }
        return TypeRef::boolean();
      }
      case ExprKind::cast: {
        check_type(e.cast_target, table_, e.span, /*allow_unbounded=*/true);
        const TypeRef src = infer(*e.kids[0]);
        const bool src_ok = src.is_integer() || src.kind() == TypeKind::character ||
                            (src.kind() == TypeKind::boolean && e.cast_target.is_integer());
        const bool dst_ok =
            e.cast_target.is_integer() || e.cast_target.kind() == TypeKind::character;
        if (!src_ok || !dst_ok) {
          fail("cannot cast " + quoted(src) + " to " + quoted(e.cast_target), e.span);
        }
        return e.cast_target;
      }
      case ExprKind::if_: {
        expect_kind(*e.kids[0], TypeKind::boolean, "if condition");
        TypeRef then_t;
        TypeRef else_t;
        if (needs_hint(*e.kids[1]) && !hint) {
          else_t = infer(*e.kids[2]);
          then_t = infer(*e.kids[1], else_t);
        } else {
          then_t = infer(*e.kids[1], hint);
          else_t = infer(*e.kids[2], hint ? hint : std::optional<TypeRef>(then_t));
        }
        expect_compatible(else_t, then_t, e.kids[2]->span, "else branch");
        return then_t;
      }
      case ExprKind::match: return infer_match(e, hint);
      case ExprKind::block: {
        const std::size_t depth = scope_.size();
        for (auto& let : e.lets) {
          if (let.declared) check_type(*let.declared, table_, let.span);
          TypeRef t = infer(*let.value, let.declared);
          if (let.declared) {
            expect_compatible(t, *let.declared, let.value->span, "let value");
            t = *let.declared;
          }
          let.slot = bind(let.name, t);
        }
        TypeRef t = infer(*e.kids[0], hint);
        scope_.resize(depth);
        return t;
      }
      case ExprKind::quant: {
        const std::size_t depth = scope_.size();
        for (auto& v : e.qvars) {
          // Width/kind rules are guard errors, reported by validate_quantifiers.
          if (v.type.kind() == TypeKind::named || v.type.kind() == TypeKind::set ||
              v.type.kind() == TypeKind::multiset || v.type.kind() == TypeKind::map ||
              v.type.kind() == TypeKind::seq || v.type.kind() == TypeKind::option) {
            check_type(v.type, table_, v.span);
          }
          v.slot = bind(v.name, v.type);
        }
        expect_kind(*e.kids[0], TypeKind::boolean, "quantifier body");
        scope_.resize(depth);
        annotate_quantifier(e);
        return TypeRef::boolean();
      }
      case ExprKind::matches: {
        const TypeRef scrutinee = infer(*e.kids[0]);
        Pattern& p = e.pattern;
        for (const auto& [field, binder] : p.bindings) {
          if (binder != "_") {
            fail("bindings in `matches` patterns are not supported; use `match`", p.span);
          }
        }
        const std::size_t depth = scope_.size();
        check_pattern(p, scrutinee);
        scope_.resize(depth);
        return TypeRef::boolean();
      }
      case ExprKind::seq_lit:
      case ExprKind::set_lit: {
        const bool is_seq = e.kind == ExprKind::seq_lit;
        std::optional<TypeRef> elem;
        const TypeKind want = is_seq ? TypeKind::seq : TypeKind::set;
        if (hint && hint->kind() == want) elem = hint->elem();
        if (e.kids.empty()) {
          if (!elem) fail("cannot infer the element type of an empty literal", e.span);
        } else {
          TypeRef first = infer(*e.kids[0], elem);
          if (!elem) elem = first;
          for (auto& k : e.kids) {
            if (k.get() != e.kids[0].get()) {
              expect_compatible(infer(*k, elem), *elem, k->span, "literal element");
            } else {
              expect_compatible(first, *elem, k->span, "literal element");
            }
          }
        }
        return is_seq ? TypeRef::seq(*elem) : keyed(TypeRef::set(*elem), e.span);
      }
      case ExprKind::record_ctor: {
        TypeDeclPtr decl = find_in(table_, e.name);
        if (!decl) fail("unknown type `" + e.name + "`", e.span);
        if (decl->kind != TypeDecl::Kind::record) fail("`" + e.name + "` is not a struct", e.span);
        e.decl = decl;
        check_ctor_fields(e, decl->fields, e.name);
        return TypeRef::named(decl->name);
      }
      case ExprKind::variant_ctor: {
        TypeDeclPtr decl = find_in(table_, e.path);
        if (!decl) fail("unknown type `" + e.path + "`", e.span);
        if (decl->kind != TypeDecl::Kind::variant) fail("`" + e.path + "` is not an enum", e.span);
        auto idx = decl->variant_index(e.name);
        if (!idx) fail("enum `" + e.path + "` has no variant `" + e.name + "`", e.span);
        const VariantDecl& v = decl->variants[*idx];
        const bool braced = !e.tuple_ctor && !e.field_names.empty();
        if (e.tuple_ctor != v.tuple_like && (e.tuple_ctor || braced || !v.fields.empty())) {
          fail("variant `" + e.path + "::" + e.name + "` constructed with the wrong form", e.span);
        }
        e.decl = decl;
        e.index = *idx;
        check_ctor_fields(e, v.fields, e.path + "::" + e.name);
        return TypeRef::named(decl->name);
      }
      case ExprKind::some: {
        std::optional<TypeRef> inner;
        if (hint && hint->kind() == TypeKind::option) inner = hint->elem();
        return TypeRef::option(infer(*e.kids[0], inner));
      }
      case ExprKind::none:
        if (!hint || hint->kind() != TypeKind::option) {
          fail("cannot infer the type of `None`", e.span);
        }
        return *hint;
    }
    fail("unsupported expression", e.span);
  }

  void check_ctor_fields(Expr& e, const std::vector<FieldDecl>& fields, const std::string& what) {
    if (e.kids.size() != fields.size()) {
      fail("`" + what + "` expects " + std::to_string(fields.size()) + " fields, got " +
               std::to_string(e.kids.size()),
           e.span);
    }
    e.ctor_order.assign(fields.size(), 0);
    std::vector<bool> seen(fields.size(), false);
    for (std::size_t k = 0; k < e.kids.size(); ++k) {
      std::optional<std::size_t> idx;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].name == e.field_names[k]) idx = i;
      }
      if (!idx) fail("`" + what + "` has no field `" + e.field_names[k] + "`", e.kids[k]->span);
      seen[*idx] = true;
      e.ctor_order[*idx] = k;
      expect_compatible(infer(*e.kids[k], fields[*idx].type), fields[*idx].type, e.kids[k]->span,
                        "field `" + fields[*idx].name + "`");
    }
  }

  TypeRef infer_field(Expr& e) {
    const TypeRef recv = infer(*e.kids[0]);
    TypeDeclPtr decl = decl_of(recv);
    if (!decl || decl->kind != TypeDecl::Kind::record) {
      fail("field access `." + e.name + "` on non-struct type " + quoted(recv), e.span);
    }
    auto idx = decl->field_index(e.name);
    if (!idx) fail("struct `" + decl->name + "` has no field `" + e.name + "`", e.span);
    e.index = *idx;
    e.decl = decl;
    return decl->fields[*idx].type;
  }

  TypeRef infer_index(Expr& e) {
    const TypeRef recv = infer(*e.kids[0]);
    switch (recv.kind()) {
      case TypeKind::seq:
        expect_kind(*e.kids[1], TypeKind::integer, "sequence index");
        e.builtin = Builtin::seq_index;
        return recv.elem();
      case TypeKind::string:
        expect_kind(*e.kids[1], TypeKind::integer, "string index");
        e.builtin = Builtin::string_index;
        return TypeRef::character();
      case TypeKind::map:
        if (!recv.key().is_primitive()) {
          fail("map indexing requires a primitive key type; use `get`", e.span);
        }
        expect_compatible(infer(*e.kids[1], recv.key()), recv.key(), e.kids[1]->span, "map key");
        e.builtin = Builtin::map_index;
        return recv.mapped();
      default: fail("cannot index into " + quoted(recv), e.span);
    }
  }

  void arity(const Expr& e, std::size_t n) {
    if (e.kids.size() - 1 != n) {
      fail("`" + e.name + "` expects " + std::to_string(n) + " argument(s), got " +
               std::to_string(e.kids.size() - 1),
           e.span);
    }
  }

  TypeRef arg(Expr& e, std::size_t i, const TypeRef& want) {
    Expr& a = *e.kids[i + 1];
    const TypeRef t = infer(a, want);
    expect_compatible(t, want, a.span, "argument " + std::to_string(i + 1) + " of `" + e.name + "`");
    return t;
  }

  TypeRef infer_method(Expr& e, const std::optional<TypeRef>& hint) {
    (void)hint;
    const TypeRef recv = infer(*e.kids[0]);
    const std::string& m = e.name;
    auto unknown = [&]() -> TypeRef {
      fail("no method `" + m + "` on " + quoted(recv), e.span);
    };
    auto set = [&](Builtin b, std::size_t n) {
      e.builtin = b;
      arity(e, n);
    };
    switch (recv.kind()) {
      case TypeKind::seq: {
        const TypeRef& el = recv.elem();
        if (m == "len") { set(Builtin::seq_len, 0); return int64(); }
        if (m == "index") { set(Builtin::seq_index, 1); arg(e, 0, int64()); return el; }
        if (m == "subrange") {
          set(Builtin::seq_subrange, 2);
          arg(e, 0, int64());
          arg(e, 1, int64());
          return recv;
        }
        if (m == "add") { set(Builtin::seq_add, 1); arg(e, 0, recv); return recv; }
        if (m == "push") { set(Builtin::seq_push, 1); arg(e, 0, el); return recv; }
        if (m == "update") {
          set(Builtin::seq_update, 2);
          arg(e, 0, int64());
          arg(e, 1, el);
          return recv;
        }
        if (m == "to_multiset") {
          set(Builtin::seq_to_multiset, 0);
          return keyed(TypeRef::multiset(el), e.span);
        }
        if (m == "drop_first") { set(Builtin::seq_drop_first, 0); return recv; }
        if (m == "drop_last") { set(Builtin::seq_drop_last, 0); return recv; }
        if (m == "take") { set(Builtin::seq_take, 1); arg(e, 0, int64()); return recv; }
        if (m == "skip") { set(Builtin::seq_skip, 1); arg(e, 0, int64()); return recv; }
        if (m == "first") { set(Builtin::seq_first, 0); return el; }
        if (m == "last") { set(Builtin::seq_last, 0); return el; }
        if (m == "is_prefix_of") { set(Builtin::seq_is_prefix_of, 1); arg(e, 0, recv); return TypeRef::boolean(); }
        if (m == "is_suffix_of") { set(Builtin::seq_is_suffix_of, 1); arg(e, 0, recv); return TypeRef::boolean(); }
        if (m == "contains") { set(Builtin::seq_contains, 1); arg(e, 0, el); return TypeRef::boolean(); }
        if (m == "index_of") { set(Builtin::seq_index_of, 1); arg(e, 0, el); return int64(); }
        if (m == "index_of_first") {
          set(Builtin::seq_index_of_first, 1);
          arg(e, 0, el);
          return TypeRef::option(int64());
        }
        if (m == "index_of_last") {
          set(Builtin::seq_index_of_last, 1);
          arg(e, 0, el);
          return TypeRef::option(int64());
        }
        return unknown();
      }
      case TypeKind::set: {
        const TypeRef& el = recv.elem();
        if (m == "len") { set(Builtin::set_len, 0); return int64(); }
        if (m == "contains") { set(Builtin::set_contains, 1); arg(e, 0, el); return TypeRef::boolean(); }
        if (m == "insert") { set(Builtin::set_insert, 1); arg(e, 0, el); return recv; }
        if (m == "remove") { set(Builtin::set_remove, 1); arg(e, 0, el); return recv; }
        if (m == "union") { set(Builtin::set_union, 1); arg(e, 0, recv); return recv; }
        if (m == "intersect") { set(Builtin::set_intersect, 1); arg(e, 0, recv); return recv; }
        if (m == "difference") { set(Builtin::set_difference, 1); arg(e, 0, recv); return recv; }
        return unknown();
      }
      case TypeKind::map: {
        if (m == "len") { set(Builtin::map_len, 0); return int64(); }
        if (m == "index") {
          set(Builtin::map_index, 1);
          if (!recv.key().is_primitive()) {
            fail("map indexing requires a primitive key type; use `get`", e.span);
          }
          arg(e, 0, recv.key());
          return recv.mapped();
        }
        if (m == "dom") { set(Builtin::map_dom, 0); return TypeRef::set(recv.key()); }
        if (m == "insert") {
          set(Builtin::map_insert, 2);
          arg(e, 0, recv.key());
          arg(e, 1, recv.mapped());
          return recv;
        }
        if (m == "remove") { set(Builtin::map_remove, 1); arg(e, 0, recv.key()); return recv; }
        if (m == "get") {
          set(Builtin::map_get, 1);
          arg(e, 0, recv.key());
          return TypeRef::option(recv.mapped());
        }
        return unknown();
      }
      case TypeKind::multiset: {
        if (m == "len") { set(Builtin::multiset_len, 0); return int64(); }
        if (m == "count") { set(Builtin::multiset_count, 1); arg(e, 0, recv.elem()); return int64(); }
        if (m == "add") { set(Builtin::multiset_add, 1); arg(e, 0, recv); return recv; }
        if (m == "sub") { set(Builtin::multiset_sub, 1); arg(e, 0, recv); return recv; }
        return unknown();
      }
      case TypeKind::string: {
        if (m == "len") { set(Builtin::string_len, 0); return int64(); }
        if (m == "index") { set(Builtin::string_index, 1); arg(e, 0, int64()); return TypeRef::character(); }
        return unknown();
      }
      case TypeKind::option:
        if (m == "unwrap") { set(Builtin::option_unwrap, 0); return recv.elem(); }
        return unknown();
      default: return unknown();
    }
  }

  TypeRef infer_static_call(Expr& e, const std::optional<TypeRef>& hint) {
    static const std::map<std::string, TypeKind> kKinds{{"Seq", TypeKind::seq},
                                                        {"Set", TypeKind::set},
                                                        {"Map", TypeKind::map},
                                                        {"Multiset", TypeKind::multiset}};
    const TypeKind kind = kKinds.at(e.path);
    for (const auto& t : e.type_args) check_type(t, table_, e.span);
    const std::size_t want_args = kind == TypeKind::map ? 2 : 1;
    if (!e.type_args.empty() && e.type_args.size() != want_args) {
      fail("`" + e.path + "` takes " + std::to_string(want_args) + " type argument(s)", e.span);
    }
    std::optional<TypeRef> full;
    if (!e.type_args.empty()) {
      switch (kind) {
        case TypeKind::seq: full = TypeRef::seq(e.type_args[0]); break;
        case TypeKind::set: full = TypeRef::set(e.type_args[0]); break;
        case TypeKind::multiset: full = TypeRef::multiset(e.type_args[0]); break;
        default: full = TypeRef::map(e.type_args[0], e.type_args[1]); break;
      }
    } else if (hint && hint->kind() == kind) {
      full = hint;
    }
    if (e.name == "empty") {
      if (!e.kids.empty()) fail("`empty` takes no arguments", e.span);
      if (!full) fail("cannot infer the type of `" + e.path + "::empty()`", e.span);
      switch (kind) {
        case TypeKind::seq: e.builtin = Builtin::seq_empty; break;
        case TypeKind::set: e.builtin = Builtin::set_empty; break;
        case TypeKind::multiset: e.builtin = Builtin::multiset_empty; break;
        default: e.builtin = Builtin::map_empty; break;
      }
      return keyed(*full, e.span);
    }
    if (kind == TypeKind::multiset && e.name == "singleton") {
      if (e.kids.size() != 1) fail("`singleton` takes one argument", e.span);
      e.builtin = Builtin::multiset_singleton;
      std::optional<TypeRef> elem;
      if (full) elem = full->elem();
      const TypeRef t = infer(*e.kids[0], elem);
      if (elem) expect_compatible(t, *elem, e.kids[0]->span, "singleton element");
      return keyed(TypeRef::multiset(elem ? *elem : t), e.span);
    }
    fail("unknown function `" + e.path + "::" + e.name + "`", e.span);
  }

  TypeRef infer_call(Expr& e) {
    auto idx = module_.fn_index(e.name);
    if (!idx) fail("unknown function `" + e.name + "`", e.span);
    const SpecFn& callee = module_.fns[*idx];
    if (e.kids.size() != callee.params.size()) {
      fail("`" + e.name + "` expects " + std::to_string(callee.params.size()) +
               " argument(s), got " + std::to_string(e.kids.size()),
           e.span);
    }
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      const TypeRef& want = callee.params[i].type;
      expect_compatible(infer(*e.kids[i], want), want, e.kids[i]->span,
                        "argument `" + callee.params[i].name + "` of `" + e.name + "`");
    }
    e.index = *idx;
    call_graph[current_fn].insert(*idx);
    return callee.ret;
  }

  TypeRef infer_binary(Expr& e) {
    Expr& lhs = *e.kids[0];
    Expr& rhs = *e.kids[1];
    switch (e.bop) {
      case BinaryOp::add:
      case BinaryOp::sub:
      case BinaryOp::mul:
      case BinaryOp::div:
      case BinaryOp::mod:
        expect_kind(lhs, TypeKind::integer, "left operand of `" + std::string(binary_op_text(e.bop)) + "`");
        expect_kind(rhs, TypeKind::integer, "right operand of `" + std::string(binary_op_text(e.bop)) + "`");
        return int64();
      case BinaryOp::and_:
      case BinaryOp::or_:
      case BinaryOp::implies:
        expect_kind(lhs, TypeKind::boolean, "left operand of `" + std::string(binary_op_text(e.bop)) + "`");
        expect_kind(rhs, TypeKind::boolean, "right operand of `" + std::string(binary_op_text(e.bop)) + "`");
        return TypeRef::boolean();
      case BinaryOp::eq:
      case BinaryOp::ne: {
        TypeRef lt;
        TypeRef rt;
        if (needs_hint(lhs)) {
          rt = infer(rhs);
          lt = infer(lhs, rt);
        } else {
          lt = infer(lhs);
          rt = infer(rhs, lt);
        }
        expect_compatible(rt, lt, rhs.span, "right operand of `" + std::string(binary_op_text(e.bop)) + "`");
        return TypeRef::boolean();
      }
      default: {
        const TypeRef lt = infer(lhs);
        if (!lt.is_integer() && lt.kind() != TypeKind::character) {
          fail("operands of `" + std::string(binary_op_text(e.bop)) +
                   "` must be integers or chars, found " + quoted(lt),
               lhs.span);
        }
        expect_compatible(infer(rhs), lt, rhs.span, "right operand of `" + std::string(binary_op_text(e.bop)) + "`");
        return TypeRef::boolean();
      }
    }
  }

  /// Binds pattern variables into the current scope.
  void check_pattern(Pattern& p, const TypeRef& scrutinee) {
    switch (p.kind) {
      case Pattern::Kind::wildcard: return;
      case Pattern::Kind::binding: p.binder_slot = bind(p.binder, scrutinee); return;
      case Pattern::Kind::none:
      case Pattern::Kind::some:
        if (scrutinee.kind() != TypeKind::option) {
          fail("option pattern against " + quoted(scrutinee), p.span);
        }
        if (p.kind == Pattern::Kind::some && p.binder != "_") {
          p.binder_slot = bind(p.binder, scrutinee.elem());
        }
        return;
      case Pattern::Kind::variant: {
        TypeDeclPtr decl = decl_of(scrutinee);
        if (!decl || decl->kind != TypeDecl::Kind::variant) {
          fail("variant pattern against non-enum type " + quoted(scrutinee), p.span);
        }
        if (!p.type_name.empty() && p.type_name != decl->name) {
          fail("pattern names enum `" + p.type_name + "` but the scrutinee is " + quoted(scrutinee),
               p.span);
        }
        auto idx = decl->variant_index(p.tag);
        if (!idx) fail("enum `" + decl->name + "` has no variant `" + p.tag + "`", p.span);
        const VariantDecl& v = decl->variants[*idx];
        p.decl = decl;
        p.variant_index = *idx;
        p.field_slots.assign(v.fields.size(), -1);
        if (!p.bindings.empty() && p.tuple_like != v.tuple_like) {
          fail("pattern form does not match variant `" + p.tag + "`", p.span);
        }
        std::vector<bool> covered(v.fields.size(), false);
        for (const auto& [field, binder] : p.bindings) {
          std::optional<std::size_t> fi;
          for (std::size_t i = 0; i < v.fields.size(); ++i) {
            if (v.fields[i].name == field) fi = i;
          }
          if (!fi) fail("variant `" + p.tag + "` has no field `" + field + "`", p.span);
          if (covered[*fi]) throw DuplicateDefinition(field, p.span);
          covered[*fi] = true;
          if (binder != "_") p.field_slots[*fi] = bind(binder, v.fields[*fi].type);
        }
        if (!p.has_rest && p.bindings.size() != v.fields.size()) {
          fail("pattern for `" + p.tag + "` does not cover every field; add `..`", p.span);
        }
        return;
      }
    }
  }

  TypeRef infer_match(Expr& e, const std::optional<TypeRef>& hint) {
    const TypeRef scrutinee = infer(*e.kids[0]);
    std::optional<TypeRef> result = hint;
    std::set<std::size_t> tags;
    bool total = false;
    bool some_seen = false;
    bool none_seen = false;
    // Arms that need a hint are typed after the others.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < e.arms.size(); ++i) {
      if (!needs_hint(*e.arms[i].body)) order.push_back(i);
    }
    for (std::size_t i = 0; i < e.arms.size(); ++i) {
      if (needs_hint(*e.arms[i].body)) order.push_back(i);
    }
    for (std::size_t i : order) {
      MatchArm& arm = e.arms[i];
      const std::size_t depth = scope_.size();
      check_pattern(arm.pattern, scrutinee);
      const TypeRef t = infer(*arm.body, result);
      if (result) {
        expect_compatible(t, *result, arm.body->span, "match arm");
      } else {
        result = t;
      }
      scope_.resize(depth);
      switch (arm.pattern.kind) {
        case Pattern::Kind::wildcard:
        case Pattern::Kind::binding: total = true; break;
        case Pattern::Kind::some: some_seen = true; break;
        case Pattern::Kind::none: none_seen = true; break;
        case Pattern::Kind::variant: tags.insert(arm.pattern.variant_index); break;
      }
    }
    if (!total) {
      const bool option_total = some_seen && none_seen;
      TypeDeclPtr decl = decl_of(scrutinee);
      const bool variant_total = decl && decl->kind == TypeDecl::Kind::variant &&
                                 tags.size() == decl->variants.size();
      if (!option_total && !variant_total) fail("non-exhaustive match", e.span);
    }
    return *result;
  }

  SpecModule& module_;
  const TypeTable& table_;
  std::vector<Binding> scope_;
  int next_slot_ = 0;
};

void mark_recursion(SpecModule& module, const std::vector<std::set<std::size_t>>& graph) {
  for (std::size_t start = 0; start < module.fns.size(); ++start) {
    std::vector<bool> seen(module.fns.size(), false);
    std::vector<std::size_t> stack(graph[start].begin(), graph[start].end());
    while (!stack.empty()) {
      const std::size_t f = stack.back();
      stack.pop_back();
      if (f == start) {
        module.fns[start].recursive = true;
        break;
      }
      if (seen[f]) continue;
      seen[f] = true;
      stack.insert(stack.end(), graph[f].begin(), graph[f].end());
    }
  }
}

void check_shape(const SpecModule& module, const TaskSignature& sig, std::size_t& pre,
                 std::size_t& post) {
  auto fn_shape = [&](std::string_view name, std::vector<TypeRef> params) -> std::size_t {
    auto idx = module.fn_index(name);
    if (!idx) throw ShapeError("module does not define `" + std::string(name) + "`", {1, 1});
    const SpecFn& fn = module.fns[*idx];
    bool ok = fn.params.size() == params.size() && fn.ret == TypeRef::boolean();
    for (std::size_t i = 0; ok && i < params.size(); ++i) ok = fn.params[i].type == params[i];
    if (!ok) {
      std::string want = "spec fn " + std::string(name) + "(";
      for (std::size_t i = 0; i < params.size(); ++i) {
        want += (i ? ", " : "") + params[i].to_string();
      }
      throw ShapeError("`" + std::string(name) + "` must have signature `" + want + ") -> bool`",
                       fn.span);
    }
    return *idx;
  };
  pre = fn_shape("pre_spec", {sig.input()});
  post = fn_shape("post_spec", {sig.input(), sig.output()});
}

}  // namespace

TypeDeclPtr TaskSignature::find(std::string_view name) const {
  for (const auto& t : types) {
    if (t->name == name) return t;
  }
  return nullptr;
}

DeclLookup TaskSignature::lookup() const {
  auto table = std::make_shared<TypeTable>();
  for (const auto& t : types) table->emplace(t->name, t);
  return [table](const std::string& name) { return find_in(*table, name); };
}

TaskSignature TaskSignature::from_source(std::string_view declarations, std::string input_type,
                                         std::string output_type) {
  TaskSignature sig;
  sig.types = parse_type_declarations(declarations);
  sig.input_type = std::move(input_type);
  sig.output_type = std::move(output_type);
  TypeTable table;
  for (const auto& t : sig.types) table.emplace(t->name, t);
  for (const auto& t : sig.types) check_decl(*t, table);
  for (const auto& name : {sig.input_type, sig.output_type}) {
    if (!sig.find(name)) throw TypeError("signature does not declare `" + name + "`", {1, 1});
  }
  return sig;
}

TypeDeclPtr TypedModule::find_type(std::string_view name) const {
  for (const auto& t : types_) {
    if (t->name == name) return t;
  }
  return nullptr;
}

DeclLookup TypedModule::lookup() const {
  auto table = std::make_shared<TypeTable>();
  for (const auto& t : types_) table->emplace(t->name, t);
  return [table](const std::string& name) { return find_in(*table, name); };
}

TypedModulePtr typecheck_module(SpecModule module, const TaskSignature& signature) {
  std::shared_ptr<TypedModule> typed(new TypedModule());
  TypeTable table;
  for (const auto& t : signature.types) {
    table.emplace(t->name, t);
    typed->types_.push_back(t);
  }
  for (const auto& t : module.types) {
    if (TypeDeclPtr existing = find_in(table, t->name)) {
      // Skeletons repeat the signature types; they must match exactly.
      if (!existing->same_layout(*t)) {
        throw TypeError("declaration of `" + t->name + "` conflicts with the task signature",
                        t->span);
      }
      continue;
    }
    table.emplace(t->name, t);
    typed->types_.push_back(t);
  }
  for (const auto& t : typed->types_) check_decl(*t, table);

  check_shape(module, signature, typed->pre_index_, typed->post_index_);

  Checker checker(module, table);
  checker.call_graph.assign(module.fns.size(), {});
  for (std::size_t i = 0; i < module.fns.size(); ++i) {
    checker.current_fn = i;
    checker.check_fn(module.fns[i]);
  }
  mark_recursion(module, checker.call_graph);

  typed->module_ = std::move(module);
  typed->signature_ = signature;
  return typed;
}

TypedModulePtr compile_module(std::string_view source, const TaskSignature& signature) {
  TypedModulePtr typed = typecheck_module(parse_module(source), signature);
  validate_quantifiers(typed->module());
  return typed;
}

}  // namespace specfaith
