#include "specfaith/kernel/guards.hpp"

#include <array>
#include <functional>

namespace specfaith {

std::string_view guard_rule_name(GuardRule rule) {
  static constexpr std::array<std::string_view, 7> kNames{
      "missing bound",        "wrong operator",      "forward reference", "variable order",
      "extra guard",          "non-integer variable", "unbounded variable",
  };
  return kNames[static_cast<std::size_t>(rule)];
}

namespace {

void flatten_and(const Expr* e, std::vector<const Expr*>& out) {
  if (e->kind == ExprKind::binary && e->bop == BinaryOp::and_) {
    flatten_and(e->kids[0].get(), out);
    flatten_and(e->kids[1].get(), out);
  } else {
    out.push_back(e);
  }
}

/// First variable among `slots` that `e` mentions, if any.
const QuantVar* mentions(const Expr* e, const std::vector<QuantVar>& vars, std::size_t from) {
  if (e->kind == ExprKind::var) {
    for (std::size_t i = from; i < vars.size(); ++i) {
      if (vars[i].slot == e->slot) return &vars[i];
    }
  }
  for (const auto& k : e->kids) {
    if (const QuantVar* v = mentions(k.get(), vars, from)) return v;
  }
  for (const auto& arm : e->arms) {
    if (const QuantVar* v = mentions(arm.body.get(), vars, from)) return v;
  }
  for (const auto& let : e->lets) {
    if (const QuantVar* v = mentions(let.value.get(), vars, from)) return v;
  }
  return nullptr;
}

std::shared_ptr<const GuardError> error(GuardRule rule, const std::string& var,
                                        const std::string& detail, SourceSpan span) {
  return std::make_shared<const GuardError>(rule, var, detail, span);
}

}  // namespace

/// Computes the guard decomposition of a type-checked quantifier, or records
/// the first guard-grammar violation on it.
void annotate_quantifier(Expr& q) {
  q.shape.reset();
  q.guard_error.reset();
  for (const auto& v : q.qvars) {
    if (v.type.is_integer() && is_unbounded(v.type.width())) {
      q.guard_error = error(GuardRule::unbounded_variable, v.name,
                            "bound variables need a concrete width, not `" +
                                v.type.to_string() + "`",
                            v.span);
      return;
    }
    if (!v.type.is_integer() && v.type.kind() != TypeKind::character) {
      q.guard_error = error(GuardRule::non_integer_variable, v.name,
                            "bound variables must be primitive integers or char, not `" +
                                v.type.to_string() + "`",
                            v.span);
      return;
    }
  }

  const std::size_t n = q.qvars.size();
  const Expr* body = q.kids[0].get();
  std::vector<const Expr*> conjuncts;
  auto shape = std::make_shared<QuantShape>();
  if (q.is_forall) {
    if (body->kind != ExprKind::binary || body->bop != BinaryOp::implies) {
      q.guard_error = error(GuardRule::missing_bound, q.qvars[0].name,
                            "expected `guards ==> body`", body->span);
      return;
    }
    flatten_and(body->kids[0].get(), conjuncts);
    if (conjuncts.size() > n) {
      q.guard_error = error(GuardRule::extra_guard, q.qvars[n - 1].name,
                            "antecedent has more conjuncts than bound variables; move extra "
                            "conditions into the body",
                            conjuncts[n]->span);
      return;
    }
    shape->body.push_back(body->kids[1].get());
  } else {
    flatten_and(body, conjuncts);
    for (std::size_t i = n; i < conjuncts.size(); ++i) shape->body.push_back(conjuncts[i]);
  }
  if (conjuncts.size() < n) {
    const QuantVar& v = q.qvars[conjuncts.size()];
    q.guard_error = error(GuardRule::missing_bound, v.name, "no guard bounds this variable", v.span);
    return;
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Expr* g = conjuncts[k];
    const QuantVar& v = q.qvars[k];
    const bool is_cmp = (g->kind == ExprKind::binary && g->bop >= BinaryOp::eq &&
                         g->bop <= BinaryOp::ge);
    if (g->kind != ExprKind::chain || g->chain_ops.size() != 2) {
      if (is_cmp || g->kind == ExprKind::chain) {
        q.guard_error = error(GuardRule::missing_bound, v.name,
                              "guard must have the form `lower op " + v.name + " op upper`",
                              g->span);
      } else {
        q.guard_error = error(GuardRule::missing_bound, v.name,
                              "expected a guard `lower op " + v.name + " op upper`", g->span);
      }
      return;
    }
    for (BinaryOp op : g->chain_ops) {
      if (op != BinaryOp::lt && op != BinaryOp::le) {
        q.guard_error = error(GuardRule::wrong_operator, v.name,
                              "guard operators must be `<` or `<=`, found `" +
                                  std::string(binary_op_text(op)) + "`",
                              g->span);
        return;
      }
    }
    for (const Expr* bound : {g->kids[0].get(), g->kids[2].get()}) {
      if (const QuantVar* early = mentions(bound, q.qvars, k)) {
        q.guard_error = error(GuardRule::forward_reference, early->name,
                              "`" + early->name + "` is used in the guard of `" + v.name +
                                  "` before it is bound",
                              bound->span);
        return;
      }
    }
    const Expr* mid = g->kids[1].get();
    if (mid->kind != ExprKind::var || mid->slot != v.slot) {
      q.guard_error = error(GuardRule::variable_order, v.name,
                            "guard " + std::to_string(k + 1) + " must bound `" + v.name + "`",
                            mid->span);
      return;
    }
    shape->bounds.push_back(GuardBound{g->kids[0].get(), g->chain_ops[0] == BinaryOp::lt,
                                       g->kids[2].get(), g->chain_ops[1] == BinaryOp::lt});
  }
  q.shape = std::move(shape);
}

void validate_quantifiers(const SpecModule& module) {
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.kind == ExprKind::quant && e.guard_error) throw *e.guard_error;
    for (const auto& let : e.lets) walk(*let.value);
    for (const auto& k : e.kids) walk(*k);
    for (const auto& arm : e.arms) walk(*arm.body);
  };
  for (const auto& fn : module.fns) walk(*fn.body);
}

}  // namespace specfaith
