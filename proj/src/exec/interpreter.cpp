#include "specfaith/exec/interpreter.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfaith/exec/builtins.hpp"
#include "specfaith/exec/quantifier.hpp"
#include "specfaith/util/large_stack.hpp"

namespace specfaith {

namespace {

/// Unwinds the evaluation to the top-level call.
struct FaultSignal {
  Fault fault;
};

[[noreturn]] void raise(FaultKind kind, SourceSpan span, std::string detail) {
  throw FaultSignal{Fault{kind, span, std::move(detail)}};
}

using Frame = std::vector<Value>;
using Clock = std::chrono::steady_clock;

std::int64_t scalar_of(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::character: return static_cast<std::int64_t>(v.as_char());
    case Value::Kind::boolean: return v.as_bool() ? 1 : 0;
    default: return v.as_int();
  }
}

class Machine {
 public:
  Machine(const TypedModule& tm, const Limits& limits)
      : tm_(tm), limits_(limits), deadline_(Clock::now() + limits.wall_clock_budget) {
    budget_.limit = limits.max_quantifier_iterations;
  }

  Value call(std::size_t fn_index, std::vector<Value> args, SourceSpan span) {
    const SpecFn& fn = tm_.module().fns[fn_index];
    if (++depth_ > limits_.max_recursion_depth) {
      raise(FaultKind::depth_exceeded, span,
            "recursion depth limit of " + std::to_string(limits_.max_recursion_depth) +
                " exceeded in `" + fn.name + "`");
    }
    Frame frame(static_cast<std::size_t>(fn.num_slots));
    for (std::size_t i = 0; i < args.size(); ++i) frame[i] = std::move(args[i]);
    Value out = eval(*fn.body, frame);
    --depth_;
    return out;
  }

 private:
  void tick(SourceSpan span) {
    if (++steps_ > limits_.max_steps) {
      raise(FaultKind::budget_exhausted, span,
            "step budget of " + std::to_string(limits_.max_steps) + " exhausted");
    }
    if ((steps_ & 0x3FF) == 0 && Clock::now() > deadline_) {
      raise(FaultKind::budget_exhausted, span, "wall-clock budget exhausted");
    }
  }

  bool eval_bool(const Expr& e, Frame& f) { return eval(e, f).as_bool(); }
  std::int64_t eval_int(const Expr& e, Frame& f) { return eval(e, f).as_int(); }

  Value eval(const Expr& e, Frame& f) {
    tick(e.span);
    switch (e.kind) {
      case ExprKind::int_lit: return Value::integer(e.int_value);
      case ExprKind::bool_lit: return Value::boolean(e.bool_value);
      case ExprKind::char_lit: return Value::character(e.char_value);
      case ExprKind::str_lit: return Value::string(e.str_value);
      case ExprKind::var: return f[static_cast<std::size_t>(e.slot)];
      case ExprKind::field: {
        Value recv = eval(*e.kids[0], f);
        return recv.as_record().fields[e.index];
      }
      case ExprKind::index:
      case ExprKind::method:
      case ExprKind::static_call: return builtin(e, f);
      case ExprKind::call: {
        std::vector<Value> args;
        args.reserve(e.kids.size());
        for (const auto& k : e.kids) args.push_back(eval(*k, f));
        return call(e.index, std::move(args), e.span);
      }
      case ExprKind::unary: {
        if (e.uop == UnaryOp::not_) return Value::boolean(!eval_bool(*e.kids[0], f));
        const std::int64_t v = eval_int(*e.kids[0], f);
        std::int64_t out = 0;
        if (__builtin_sub_overflow(std::int64_t{0}, v, &out)) {
          raise(FaultKind::overflow, e.span, "negation of " + std::to_string(v) + " overflows");
        }
        return Value::integer(out);
      }
      case ExprKind::binary: return binary(e, f);
      case ExprKind::chain: {
        Value left = eval(*e.kids[0], f);
        for (std::size_t i = 0; i < e.chain_ops.size(); ++i) {
          Value right = eval(*e.kids[i + 1], f);
          if (!compare(e.chain_ops[i], left, right)) return Value::boolean(false);
          left = std::move(right);
        }
        return Value::boolean(true);
      }
      case ExprKind::cast: return cast(e, eval(*e.kids[0], f));
      case ExprKind::if_:
        return eval_bool(*e.kids[0], f) ? eval(*e.kids[1], f) : eval(*e.kids[2], f);
      case ExprKind::match: {
        Value scrutinee = eval(*e.kids[0], f);
        for (const auto& arm : e.arms) {
          if (bind_pattern(arm.pattern, scrutinee, f)) return eval(*arm.body, f);
        }
        throw std::logic_error("match fell through every arm");
      }
      case ExprKind::block:
        for (const auto& let : e.lets) {
          f[static_cast<std::size_t>(let.slot)] = eval(*let.value, f);
        }
        return eval(*e.kids[0], f);
      case ExprKind::quant: return Value::boolean(quantifier(e, f));
      case ExprKind::matches: return Value::boolean(bind_pattern(e.pattern, eval(*e.kids[0], f), f));
      case ExprKind::seq_lit:
      case ExprKind::set_lit: {
        std::vector<Value> elems;
        elems.reserve(e.kids.size());
        for (const auto& k : e.kids) elems.push_back(eval(*k, f));
        return e.kind == ExprKind::seq_lit ? Value::seq(std::move(elems))
                                           : Value::set(std::move(elems));
      }
      case ExprKind::record_ctor:
      case ExprKind::variant_ctor: {
        std::vector<Value> given;
        given.reserve(e.kids.size());
        for (const auto& k : e.kids) given.push_back(eval(*k, f));
        std::vector<Value> fields;
        fields.reserve(e.ctor_order.size());
        for (std::size_t src : e.ctor_order) fields.push_back(given[src]);
        if (e.kind == ExprKind::record_ctor) return Value::record(e.decl, std::move(fields));
        return Value::variant(e.decl, e.index, std::move(fields));
      }
      case ExprKind::some: return Value::some(eval(*e.kids[0], f));
      case ExprKind::none: return Value::none();
    }
    throw std::logic_error("unhandled expression kind");
  }

  Value builtin(const Expr& e, Frame& f) {
    Value recv;
    std::vector<Value> args;
    std::size_t first_arg = 0;
    if (e.kind != ExprKind::static_call) {
      recv = eval(*e.kids[0], f);
      first_arg = 1;
    }
    args.reserve(e.kids.size());
    for (std::size_t i = first_arg; i < e.kids.size(); ++i) args.push_back(eval(*e.kids[i], f));
    EvalResult r = builtin_apply(e.builtin, recv, args);
    if (auto* fault = std::get_if<Fault>(&r)) {
      fault->span = e.span;
      throw FaultSignal{std::move(*fault)};
    }
    return std::move(std::get<Value>(r));
  }

  static bool compare(BinaryOp op, const Value& a, const Value& b) {
    switch (op) {
      case BinaryOp::eq: return a == b;
      case BinaryOp::ne: return !(a == b);
      case BinaryOp::lt: return a < b;
      case BinaryOp::le: return a <= b;
      case BinaryOp::gt: return a > b;
      case BinaryOp::ge: return a >= b;
      default: throw std::logic_error("not a comparison");
    }
  }

  Value binary(const Expr& e, Frame& f) {
    switch (e.bop) {
      case BinaryOp::and_:
        return Value::boolean(eval_bool(*e.kids[0], f) && eval_bool(*e.kids[1], f));
      case BinaryOp::or_:
        return Value::boolean(eval_bool(*e.kids[0], f) || eval_bool(*e.kids[1], f));
      case BinaryOp::implies:
        return Value::boolean(!eval_bool(*e.kids[0], f) || eval_bool(*e.kids[1], f));
      case BinaryOp::eq:
      case BinaryOp::ne:
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge: {
        Value a = eval(*e.kids[0], f);
        Value b = eval(*e.kids[1], f);
        return Value::boolean(compare(e.bop, a, b));
      }
      default: break;
    }
    const std::int64_t a = eval_int(*e.kids[0], f);
    const std::int64_t b = eval_int(*e.kids[1], f);
    std::int64_t out = 0;
    bool overflow = false;
    switch (e.bop) {
      case BinaryOp::add: overflow = __builtin_add_overflow(a, b, &out); break;
      case BinaryOp::sub: overflow = __builtin_sub_overflow(a, b, &out); break;
      case BinaryOp::mul: overflow = __builtin_mul_overflow(a, b, &out); break;
      case BinaryOp::div:
      case BinaryOp::mod:
        if (b == 0) raise(FaultKind::div_by_zero, e.span, "division by zero");
        if (b == -1 && a == std::numeric_limits<std::int64_t>::min()) {
          overflow = true;
          break;
        }
        out = e.bop == BinaryOp::div ? a / b : a % b;
        break;
      default: throw std::logic_error("not an arithmetic operator");
    }
    if (overflow) {
      raise(FaultKind::overflow, e.span,
            std::to_string(a) + " " + std::string(binary_op_text(e.bop)) + " " +
                std::to_string(b) + " overflows 64 bits");
    }
    return Value::integer(out);
  }

  static Value cast(const Expr& e, const Value& v) {
    const std::int64_t x = scalar_of(v);
    const TypeRef& target = e.cast_target;
    if (target.kind() == TypeKind::character) {
      if (x < 0 || x > 0x10FFFF || (x >= 0xD800 && x <= 0xDFFF)) {
        raise(FaultKind::overflow, e.span, std::to_string(x) + " is not a valid char");
      }
      return Value::character(static_cast<char32_t>(x));
    }
    if (!int_range(target.width()).contains(x)) {
      raise(FaultKind::overflow, e.span,
            std::to_string(x) + " does not fit `" + target.to_string() + "`");
    }
    return Value::integer(x);
  }

  static bool bind_pattern(const Pattern& p, const Value& v, Frame& f) {
    switch (p.kind) {
      case Pattern::Kind::wildcard: return true;
      case Pattern::Kind::binding:
        f[static_cast<std::size_t>(p.binder_slot)] = v;
        return true;
      case Pattern::Kind::none: return v.option_payload() == nullptr;
      case Pattern::Kind::some: {
        const Value* payload = v.option_payload();
        if (!payload) return false;
        if (p.binder_slot >= 0) f[static_cast<std::size_t>(p.binder_slot)] = *payload;
        return true;
      }
      case Pattern::Kind::variant: {
        const auto& var = v.as_variant();
        if (var.tag != p.variant_index) return false;
        for (std::size_t i = 0; i < p.field_slots.size(); ++i) {
          if (p.field_slots[i] >= 0) f[static_cast<std::size_t>(p.field_slots[i])] = var.fields[i];
        }
        return true;
      }
    }
    return false;
  }

  static Value bound_value(const TypeRef& t, std::int64_t x) {
    if (t.kind() == TypeKind::character) return Value::character(static_cast<char32_t>(x));
    return Value::integer(x);
  }

  bool quantifier(const Expr& e, Frame& f) {
    if (!e.shape) throw std::logic_error("quantifier was not validated");
    const QuantShape& shape = *e.shape;
    std::vector<TypeRef> types;
    types.reserve(e.qvars.size());
    for (const auto& v : e.qvars) types.push_back(v.type);

    auto assign = [&](std::span<const std::int64_t> values) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        f[static_cast<std::size_t>(e.qvars[j].slot)] = bound_value(types[j], values[j]);
      }
    };
    const RangeFn range = [&](std::span<const std::int64_t> prefix)
        -> std::variant<IterRange, Fault> {
      assign(prefix);
      const GuardBound& g = shape.bounds[prefix.size()];
      const std::int64_t lo = scalar_of(eval(*g.lower, f));
      const std::int64_t hi = scalar_of(eval(*g.upper, f));
      return guard_range(lo, g.lower_strict, hi, g.upper_strict);
    };
    const VisitFn visit = [&](std::span<const std::int64_t> tuple) -> std::variant<bool, Fault> {
      assign(tuple);
      if (e.is_forall) return eval_bool(*shape.body[0], f);
      for (const Expr* conjunct : shape.body) {
        if (!eval_bool(*conjunct, f)) return true;  // this witness fails; keep looking
      }
      return false;  // witness found
    };
    auto r = expand_quantifier(types, range, visit, budget_, e.span);
    if (auto* fault = std::get_if<Fault>(&r)) throw FaultSignal{std::move(*fault)};
    const bool completed = std::get<bool>(r);
    return e.is_forall ? completed : !completed;
  }

  const TypedModule& tm_;
  const Limits& limits_;
  Clock::time_point deadline_;
  std::uint64_t steps_ = 0;
  std::uint64_t depth_ = 0;
  IterationBudget budget_;
};

}  // namespace

EvalResult eval_call(const TypedModule& module, std::string_view fn_name,
                     std::span<const Value> args, const Limits& limits) {
  limits.validate();
  auto idx = module.module().fn_index(fn_name);
  if (!idx) throw std::invalid_argument("unknown spec fn `" + std::string(fn_name) + "`");
  const SpecFn& fn = module.module().fns[*idx];
  if (args.size() != fn.params.size()) {
    throw std::invalid_argument("`" + fn.name + "` expects " + std::to_string(fn.params.size()) +
                                " argument(s)");
  }
  const DeclLookup lookup = module.lookup();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!well_typed(args[i], fn.params[i].type, lookup)) {
      throw std::invalid_argument("argument `" + fn.params[i].name + "` is not a well-typed `" +
                                  fn.params[i].type.to_string() + "`");
    }
  }
  std::vector<Value> owned(args.begin(), args.end());
  return with_large_stack([&]() -> EvalResult {
    try {
      Machine m(module, limits);
      return m.call(*idx, std::move(owned), fn.span);
    } catch (FaultSignal& s) {
      return std::move(s.fault);
    }
  });
}

PredicateResult eval_predicate(const TypedModule& module, Which which, const Value& input,
                               const std::optional<Value>& output, const Limits& limits) {
  EvalResult r;
  if (which == Which::pre) {
    const Value args[] = {input};
    r = eval_call(module, "pre_spec", args, limits);
  } else {
    if (!output) throw std::invalid_argument("post_spec needs an output value");
    const Value args[] = {input, *output};
    r = eval_call(module, "post_spec", args, limits);
  }
  if (auto* f = std::get_if<Fault>(&r)) return *f;
  return std::get<Value>(r).as_bool();
}

}  // namespace specfaith
