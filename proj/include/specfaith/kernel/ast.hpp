#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specfaith/kernel/types.hpp"

namespace specfaith {

enum class BinaryOp : std::uint8_t {
  add, sub, mul, div, mod,
  eq, ne, lt, le, gt, ge,
  and_, or_, implies,
};

enum class UnaryOp : std::uint8_t { not_, neg };

std::string_view binary_op_text(BinaryOp op);

/// Resolved container method; the typed counterpart of `recv.method(args)`.
enum class Builtin : std::uint8_t {
  seq_len, seq_index, seq_subrange, seq_add, seq_push, seq_update, seq_to_multiset,
  seq_drop_first, seq_drop_last, seq_take, seq_skip, seq_first, seq_last, seq_is_prefix_of,
  seq_is_suffix_of, seq_contains, seq_index_of, seq_index_of_first, seq_index_of_last,
  set_len, set_contains, set_insert, set_remove, set_union, set_intersect, set_difference,
  map_len, map_index, map_dom, map_insert, map_remove, map_get,
  multiset_len, multiset_count, multiset_add, multiset_sub,
  string_len, string_index,
  option_unwrap,
  // Static constructors: `Seq::empty()`, `Multiset::singleton(x)`, ...
  seq_empty, set_empty, map_empty, multiset_empty, multiset_singleton,
};

std::string_view builtin_name(Builtin b);

enum class ExprKind : std::uint8_t {
  int_lit, bool_lit, char_lit, str_lit,
  var, field, index, method, call, static_call,
  unary, binary, chain, cast,
  if_, match, block, quant, matches,
  seq_lit, set_lit, record_ctor, variant_ctor, some, none,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;
class GuardError;

struct Pattern {
  enum class Kind : std::uint8_t { wildcard, binding, variant, some, none };
  Kind kind = Kind::wildcard;
  std::string type_name;  // enum name for `Enum::Tag`
  std::string tag;
  /// (field name or tuple position, binder name); binder "_" ignores the field.
  std::vector<std::pair<std::string, std::string>> bindings;
  bool tuple_like = false;
  bool has_rest = false;  // `..`
  std::string binder;     // Kind::binding, or payload of Kind::some
  SourceSpan span;

  // Filled by the type checker.
  TypeDeclPtr decl;
  std::size_t variant_index = 0;
  /// Per declared field of the variant: binder slot, or -1.
  std::vector<int> field_slots;
  int binder_slot = -1;
};

struct MatchArm {
  Pattern pattern;
  ExprPtr body;
};

struct QuantVar {
  std::string name;
  TypeRef type;
  SourceSpan span;
  int slot = -1;
};

struct LetBinding {
  std::string name;
  std::optional<TypeRef> declared;
  ExprPtr value;
  SourceSpan span;
  int slot = -1;
};

/// One bound variable's iteration range: lower (<|<=) x (<|<=) upper.
struct GuardBound {
  const Expr* lower = nullptr;
  bool lower_strict = false;
  const Expr* upper = nullptr;
  bool upper_strict = false;
};

/// Decomposition of a well-formed quantifier into guards and body conjuncts.
struct QuantShape {
  std::vector<GuardBound> bounds;
  /// forall: the consequent. exists: the conjuncts after the guards (empty means `true`).
  std::vector<const Expr*> body;
};

struct Expr {
  ExprKind kind = ExprKind::bool_lit;
  SourceSpan span;

  std::int64_t int_value = 0;
  bool bool_value = false;
  char32_t char_value = 0;
  std::u32string str_value;

  /// Variable, field, method, function, or variant-tag name.
  std::string name;
  /// Type qualifier: `Seq` in `Seq::empty()`, the enum in `Enum::Tag`.
  std::string path;
  std::vector<TypeRef> type_args;

  BinaryOp bop = BinaryOp::add;
  UnaryOp uop = UnaryOp::not_;
  /// Chained comparison `a <= b < c`: kids are the operands.
  std::vector<BinaryOp> chain_ops;

  std::vector<ExprPtr> kids;
  std::vector<std::string> field_names;  // braced constructors
  bool tuple_ctor = false;
  TypeRef cast_target;

  bool is_forall = true;
  std::vector<QuantVar> qvars;
  std::vector<MatchArm> arms;
  std::vector<LetBinding> lets;  // block: lets, then kids[0]
  Pattern pattern;               // `e matches P`

  // Annotations written by the type checker.
  TypeRef type;
  int slot = -1;
  std::size_t index = 0;  // field index, function index, or variant index
  Builtin builtin = Builtin::seq_len;
  TypeDeclPtr decl;
  /// Record/variant ctor: for each declared field, the kid providing it.
  std::vector<std::size_t> ctor_order;
  std::shared_ptr<const QuantShape> shape;
  std::shared_ptr<const GuardError> guard_error;
};

struct Param {
  std::string name;
  TypeRef type;
  SourceSpan span;
};

struct SpecFn {
  std::string name;
  std::vector<Param> params;
  TypeRef ret;
  ExprPtr body;
  SourceSpan span;

  // Filled by the type checker.
  int num_slots = 0;
  /// Member of a call-graph cycle (direct or mutual recursion).
  bool recursive = false;
};

/// Parsed (and, once type-checked, annotated) specification module.
struct SpecModule {
  std::vector<TypeDeclPtr> types;
  std::vector<SpecFn> fns;
  /// Items the parser skipped: proof fns, exec fns.
  std::vector<std::string> ignored_items;

  const SpecFn* find_fn(std::string_view name) const;
  std::optional<std::size_t> fn_index(std::string_view name) const;
  TypeDeclPtr find_type(std::string_view name) const;
};

}  // namespace specfaith
