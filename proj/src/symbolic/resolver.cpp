#include "specfaith/symbolic/resolver.hpp"

#include <limits>
#include <stdexcept>

#include "specfaith/exec/builtins.hpp"

namespace specfaith {

namespace {

/// Folding cannot decide; unwinds to try_prove.
struct Undecided {
  std::string reason;
};

[[noreturn]] void give_up(std::string reason, SourceSpan span) {
  throw Undecided{std::move(reason) + " at " + span.to_string()};
}

using Env = std::vector<Value>;

class Folder {
 public:
  Folder(const TypedModule& tm, const FoldOptions& options, std::vector<std::string>& trace)
      : tm_(tm), options_(options), trace_(trace) {}

  Value call(std::size_t fn_index, std::vector<Value> args, SourceSpan span) {
    const SpecFn& fn = tm_.module().fns[fn_index];
    if (fn.recursive) give_up("recursive call to `" + fn.name + "`", span);
    trace_.push_back("inline `" + fn.name + "`");
    Env env(static_cast<std::size_t>(fn.num_slots));
    for (std::size_t i = 0; i < args.size(); ++i) env[i] = std::move(args[i]);
    return fold(*fn.body, env);
  }

 private:
  void small_enough(const Value& v, SourceSpan span, std::string_view what) {
    switch (v.kind()) {
      case Value::Kind::string:
      case Value::Kind::seq:
      case Value::Kind::set:
      case Value::Kind::map:
      case Value::Kind::multiset:
        if (v.container_size() > options_.container_threshold) {
          give_up(std::string(what) + " over a container of size " +
                      std::to_string(v.container_size()) + " exceeds the folding threshold " +
                      std::to_string(options_.container_threshold),
                  span);
        }
        break;
      default: break;
    }
  }

  bool fold_bool(const Expr& e, Env& env) { return fold(e, env).as_bool(); }

  Value fold(const Expr& e, Env& env) {
    if (++nodes_ > options_.node_budget) {
      give_up("node budget of " + std::to_string(options_.node_budget) + " exhausted", e.span);
    }
    switch (e.kind) {
      case ExprKind::int_lit: return Value::integer(e.int_value);
      case ExprKind::bool_lit: return Value::boolean(e.bool_value);
      case ExprKind::char_lit: return Value::character(e.char_value);
      case ExprKind::str_lit: return Value::string(e.str_value);
      case ExprKind::var: return env[static_cast<std::size_t>(e.slot)];
      case ExprKind::field: return fold(*e.kids[0], env).as_record().fields[e.index];
      case ExprKind::index:
      case ExprKind::method:
      case ExprKind::static_call: {
        Value recv;
        std::vector<Value> args;
        std::size_t first = 0;
        if (e.kind != ExprKind::static_call) {
          recv = fold(*e.kids[0], env);
          small_enough(recv, e.span, builtin_name(e.builtin));
          first = 1;
        }
        for (std::size_t i = first; i < e.kids.size(); ++i) {
          args.push_back(fold(*e.kids[i], env));
          small_enough(args.back(), e.span, builtin_name(e.builtin));
        }
        EvalResult r = builtin_apply(e.builtin, recv, args);
        if (auto* f = std::get_if<Fault>(&r)) {
          give_up("potential fault (" + std::string(fault_kind_name(f->kind)) + ") in " +
                      std::string(builtin_name(e.builtin)),
                  e.span);
        }
        return std::get<Value>(std::move(r));
      }
      case ExprKind::call: {
        std::vector<Value> args;
        for (const auto& k : e.kids) args.push_back(fold(*k, env));
        return call(e.index, std::move(args), e.span);
      }
      case ExprKind::unary: {
        if (e.uop == UnaryOp::not_) return Value::boolean(!fold_bool(*e.kids[0], env));
        const std::int64_t v = fold(*e.kids[0], env).as_int();
        if (v == std::numeric_limits<std::int64_t>::min()) {
          give_up("potential fault (overflow) in negation", e.span);
        }
        return Value::integer(-v);
      }
      case ExprKind::binary: return binary(e, env);
      case ExprKind::chain: {
        Value left = fold(*e.kids[0], env);
        for (std::size_t i = 0; i < e.chain_ops.size(); ++i) {
          Value right = fold(*e.kids[i + 1], env);
          if (!compare(e.chain_ops[i], left, right)) return Value::boolean(false);
          left = std::move(right);
        }
        return Value::boolean(true);
      }
      case ExprKind::cast: {
        const Value v = fold(*e.kids[0], env);
        std::int64_t x = 0;
        if (v.kind() == Value::Kind::character) {
          x = static_cast<std::int64_t>(v.as_char());
        } else if (v.kind() == Value::Kind::boolean) {
          x = v.as_bool() ? 1 : 0;
        } else {
          x = v.as_int();
        }
        if (e.cast_target.kind() == TypeKind::character) {
          if (x < 0 || x > 0x10FFFF || (x >= 0xD800 && x <= 0xDFFF)) {
            give_up("potential fault (overflow) in cast to char", e.span);
          }
          return Value::character(static_cast<char32_t>(x));
        }
        if (!int_range(e.cast_target.width()).contains(x)) {
          give_up("potential fault (overflow) in cast to `" + e.cast_target.to_string() + "`",
                  e.span);
        }
        return Value::integer(x);
      }
      case ExprKind::if_:
        return fold_bool(*e.kids[0], env) ? fold(*e.kids[1], env) : fold(*e.kids[2], env);
      case ExprKind::match: {
        const Value scrutinee = fold(*e.kids[0], env);
        for (const auto& arm : e.arms) {
          if (matches(arm.pattern, scrutinee, env)) return fold(*arm.body, env);
        }
        give_up("match without a matching arm", e.span);
      }
      case ExprKind::block:
        for (const auto& let : e.lets) env[static_cast<std::size_t>(let.slot)] = fold(*let.value, env);
        return fold(*e.kids[0], env);
      case ExprKind::quant:
        give_up(std::string(e.is_forall ? "forall" : "exists") + " quantifier is not folded",
                e.span);
      case ExprKind::matches: return Value::boolean(matches(e.pattern, fold(*e.kids[0], env), env));
      case ExprKind::seq_lit:
      case ExprKind::set_lit: {
        std::vector<Value> elems;
        for (const auto& k : e.kids) elems.push_back(fold(*k, env));
        return e.kind == ExprKind::seq_lit ? Value::seq(std::move(elems))
                                           : Value::set(std::move(elems));
      }
      case ExprKind::record_ctor:
      case ExprKind::variant_ctor: {
        std::vector<Value> given;
        for (const auto& k : e.kids) given.push_back(fold(*k, env));
        std::vector<Value> fields;
        for (std::size_t src : e.ctor_order) fields.push_back(given[src]);
        if (e.kind == ExprKind::record_ctor) return Value::record(e.decl, std::move(fields));
        return Value::variant(e.decl, e.index, std::move(fields));
      }
      case ExprKind::some: return Value::some(fold(*e.kids[0], env));
      case ExprKind::none: return Value::none();
    }
    give_up("unsupported expression", e.span);
  }

  static bool compare(BinaryOp op, const Value& a, const Value& b) {
    switch (op) {
      case BinaryOp::eq: return a == b;
      case BinaryOp::ne: return !(a == b);
      case BinaryOp::lt: return a < b;
      case BinaryOp::le: return a <= b;
      case BinaryOp::gt: return a > b;
      default: return a >= b;
    }
  }

  Value binary(const Expr& e, Env& env) {
    switch (e.bop) {
      // Left to right: an undecided left operand leaves the whole node
      // undecided even when the right one would settle it.
      case BinaryOp::and_:
        return Value::boolean(fold_bool(*e.kids[0], env) && fold_bool(*e.kids[1], env));
      case BinaryOp::or_:
        return Value::boolean(fold_bool(*e.kids[0], env) || fold_bool(*e.kids[1], env));
      case BinaryOp::implies:
        return Value::boolean(!fold_bool(*e.kids[0], env) || fold_bool(*e.kids[1], env));
      case BinaryOp::eq:
      case BinaryOp::ne:
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge: {
        const Value a = fold(*e.kids[0], env);
        const Value b = fold(*e.kids[1], env);
        small_enough(a, e.span, "comparison");
        small_enough(b, e.span, "comparison");
        return Value::boolean(compare(e.bop, a, b));
      }
      default: break;
    }
    const std::int64_t a = fold(*e.kids[0], env).as_int();
    const std::int64_t b = fold(*e.kids[1], env).as_int();
    std::int64_t out = 0;
    bool faults = false;
    switch (e.bop) {
      case BinaryOp::add: faults = __builtin_add_overflow(a, b, &out); break;
      case BinaryOp::sub: faults = __builtin_sub_overflow(a, b, &out); break;
      case BinaryOp::mul: faults = __builtin_mul_overflow(a, b, &out); break;
      default:
        faults = b == 0 || (b == -1 && a == std::numeric_limits<std::int64_t>::min());
        if (!faults) out = e.bop == BinaryOp::div ? a / b : a % b;
        break;
    }
    if (faults) {
      give_up("potential fault in `" + std::string(binary_op_text(e.bop)) + "`", e.span);
    }
    return Value::integer(out);
  }

  static bool matches(const Pattern& p, const Value& v, Env& env) {
    switch (p.kind) {
      case Pattern::Kind::wildcard: return true;
      case Pattern::Kind::binding:
        env[static_cast<std::size_t>(p.binder_slot)] = v;
        return true;
      case Pattern::Kind::none: return v.option_payload() == nullptr;
      case Pattern::Kind::some:
        if (!v.option_payload()) return false;
        if (p.binder_slot >= 0) env[static_cast<std::size_t>(p.binder_slot)] = *v.option_payload();
        return true;
      case Pattern::Kind::variant: {
        const auto& var = v.as_variant();
        if (var.tag != p.variant_index) return false;
        for (std::size_t i = 0; i < p.field_slots.size(); ++i) {
          if (p.field_slots[i] >= 0) env[static_cast<std::size_t>(p.field_slots[i])] = var.fields[i];
        }
        return true;
      }
    }
    return false;
  }

  const TypedModule& tm_;
  const FoldOptions& options_;
  std::vector<std::string>& trace_;
  std::size_t nodes_ = 0;
};

}  // namespace

SymbolicOutcome try_prove(const TypedModule& module, Which which, const Value& input,
                          const std::optional<Value>& output, Polarity polarity,
                          const FoldOptions& options) {
  SymbolicOutcome out;
  std::vector<Value> args{input};
  std::size_t fn = module.pre_index();
  if (which == Which::post) {
    if (!output) throw std::invalid_argument("post_spec needs an output value");
    args.push_back(*output);
    fn = module.post_index();
  }
  try {
    Folder folder(module, options, out.trace);
    const bool folded = folder.call(fn, std::move(args), module.module().fns[fn].span).as_bool();
    out.proved = true;
    out.value = polarity == Polarity::assert_ ? folded : !folded;
    out.trace.push_back(std::string("folded to ") + (folded ? "true" : "false"));
  } catch (const Undecided& u) {
    out.trace.push_back("unknown: " + u.reason);
  }
  return out;
}

}  // namespace specfaith
