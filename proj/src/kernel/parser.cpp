#include "specfaith/kernel/parser.hpp"

#include <cctype>
#include <limits>
#include <set>

#include "specfaith/kernel/lexer.hpp"

namespace specfaith {

namespace {

constexpr std::uint64_t kMaxPositive = std::numeric_limits<std::int64_t>::max();

bool is_comparison(const Token& t) {
  return t.is("==") || t.is("!=") || t.is("<") || t.is("<=") || t.is(">") || t.is(">=");
}

BinaryOp comparison_op(const Token& t) {
  if (t.is("==")) return BinaryOp::eq;
  if (t.is("!=")) return BinaryOp::ne;
  if (t.is("<")) return BinaryOp::lt;
  if (t.is("<=")) return BinaryOp::le;
  if (t.is(">")) return BinaryOp::gt;
  return BinaryOp::ge;
}

ExprPtr make(ExprKind kind, SourceSpan span) {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->span = span;
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = make(ExprKind::binary, span);
  e->bop = op;
  e->kids.push_back(std::move(lhs));
  e->kids.push_back(std::move(rhs));
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : toks_(tokenize(source)) {}

  SpecModule module() {
    SpecModule mod;
    std::set<std::string> type_names;
    std::set<std::string> fn_names;
    int wrapper_depth = 0;

    while (!at_end()) {
      if (peek().is("}") && wrapper_depth > 0) {
        next();
        --wrapper_depth;
        continue;
      }
      // `verus! {` and friends are transparent.
      if (peek().kind == TokenKind::ident && peek(1).is("!") && peek(2).is("{")) {
        next();
        next();
        next();
        ++wrapper_depth;
        continue;
      }
      if (peek().is_ident("use")) {
        skip_past(";");
        continue;
      }
      skip_modifiers();
      const Token& t = peek();
      if (t.is_ident("struct") || t.is_ident("enum")) {
        auto decl = type_declaration();
        if (!type_names.insert(decl->name).second) {
          throw DuplicateDefinition(decl->name, decl->span);
        }
        mod.types.push_back(std::move(decl));
      } else if (t.is_ident("spec") && peek(1).is_ident("fn")) {
        next();
        SpecFn fn = spec_fn();
        if (!fn_names.insert(fn.name).second) throw DuplicateDefinition(fn.name, fn.span);
        mod.fns.push_back(std::move(fn));
      } else if (t.is_ident("proof") || t.is_ident("fn") || t.is_ident("exec") ||
                 t.is_ident("impl") || t.is_ident("mod") || t.is_ident("trait") ||
                 t.is_ident("broadcast")) {
        mod.ignored_items.push_back(skip_item());
      } else if (t.is_ident("const") || t.is_ident("static") || t.is_ident("type")) {
        const std::string label = t.text + " " + peek(1).text;
        skip_past(";");
        mod.ignored_items.push_back(label);
      } else {
        throw SyntaxError("unexpected `" + describe(t) + "` at item level", t.span,
                          "`spec fn`, `struct` or `enum`");
      }
    }
    if (wrapper_depth > 0) throw SyntaxError("unclosed macro block", peek().span, "`}`");
    if (mod.fns.empty()) {
      throw SyntaxError("module defines no spec fn", peek().span, "`spec fn`");
    }
    return mod;
  }

  std::vector<TypeDeclPtr> declarations() {
    std::vector<TypeDeclPtr> out;
    std::set<std::string> names;
    while (!at_end()) {
      skip_modifiers();
      if (!peek().is_ident("struct") && !peek().is_ident("enum")) {
        throw SyntaxError("unexpected `" + describe(peek()) + "`", peek().span,
                          "`struct` or `enum`");
      }
      auto decl = type_declaration();
      if (!names.insert(decl->name).second) throw DuplicateDefinition(decl->name, decl->span);
      out.push_back(std::move(decl));
    }
    return out;
  }

  TypeRef standalone_type() {
    TypeRef t = type();
    if (!at_end()) throw SyntaxError("trailing input after type", peek().span);
    return t;
  }

 private:
  // ---- token plumbing ----

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::end; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::end: return "end of input";
      case TokenKind::char_lit: return "char literal";
      case TokenKind::string_lit: return "string literal";
      default: return t.text;
    }
  }

  const Token& expect(std::string_view punct) {
    if (!peek().is(punct)) {
      throw SyntaxError("unexpected `" + describe(peek()) + "`", peek().span,
                        "`" + std::string(punct) + "`");
    }
    return next();
  }

  void expect_ident(std::string_view word) {
    if (!peek().is_ident(word)) {
      throw SyntaxError("unexpected `" + describe(peek()) + "`", peek().span,
                        "`" + std::string(word) + "`");
    }
    next();
  }

  const Token& identifier(std::string_view what = "identifier") {
    if (peek().kind != TokenKind::ident) {
      throw SyntaxError("unexpected `" + describe(peek()) + "`", peek().span, std::string(what));
    }
    return next();
  }

  bool accept(std::string_view punct) {
    if (peek().is(punct)) {
      next();
      return true;
    }
    return false;
  }

  void skip_modifiers() {
    for (;;) {
      if (peek().is_ident("pub")) {
        next();
        if (peek().is("(")) skip_balanced("(", ")");
      } else if (peek().is_ident("open") || peek().is_ident("closed") ||
                 peek().is_ident("uninterp") || peek().is_ident("ghost") ||
                 peek().is_ident("tracked")) {
        next();
      } else {
        return;
      }
    }
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    const SourceSpan start = peek().span;
    expect(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end()) throw SyntaxError("unbalanced `" + std::string(open) + "`", start);
      const Token& t = next();
      if (t.is(open)) ++depth;
      if (t.is(close)) --depth;
    }
  }

  void skip_past(std::string_view punct) {
    const SourceSpan start = peek().span;
    while (!peek().is(punct)) {
      if (at_end()) throw SyntaxError("unterminated item", start, "`" + std::string(punct) + "`");
      if (peek().is("{")) {
        skip_balanced("{", "}");
      } else {
        next();
      }
    }
    next();
  }

  /// Skips an item whose body is a brace block; returns a short label.
  std::string skip_item() {
    std::string label;
    while (peek().kind == TokenKind::ident && !peek(1).is("(") && !peek(1).is("<") &&
           !peek(1).is("{")) {
      label += next().text + " ";
    }
    if (peek().kind == TokenKind::ident) label += peek().text;
    const SourceSpan start = peek().span;
    int parens = 0;
    while (!(parens == 0 && peek().is("{"))) {
      if (at_end()) throw SyntaxError("item without body", start, "`{`");
      if (peek().is("(") || peek().is("[")) ++parens;
      if (peek().is(")") || peek().is("]")) --parens;
      if (parens == 0 && peek().is(";")) {
        next();
        return label;
      }
      next();
    }
    skip_balanced("{", "}");
    return label;
  }

  // ---- declarations ----

  TypeRef type() {
    const Token& t = identifier("type");
    if (auto w = int_width_from_name(t.text)) return TypeRef::integer(*w);
    if (t.text == "bool") return TypeRef::boolean();
    if (t.text == "char") return TypeRef::character();
    if (t.text == "String" || t.text == "string" || t.text == "str") return TypeRef::string();
    auto one_arg = [&](auto factory) {
      expect("<");
      TypeRef elem = type();
      expect(">");
      return factory(std::move(elem));
    };
    if (t.text == "Seq" || t.text == "Vec") return one_arg(TypeRef::seq);
    if (t.text == "Set") return one_arg(TypeRef::set);
    if (t.text == "Multiset") return one_arg(TypeRef::multiset);
    if (t.text == "Option") return one_arg(TypeRef::option);
    if (t.text == "Map") {
      expect("<");
      TypeRef k = type();
      expect(",");
      TypeRef v = type();
      expect(">");
      return TypeRef::map(std::move(k), std::move(v));
    }
    if (peek().is("<")) throw SyntaxError("generic user types are not supported", peek().span);
    return TypeRef::named(t.text);
  }

  std::vector<FieldDecl> braced_fields() {
    std::vector<FieldDecl> fields;
    std::set<std::string> seen;
    expect("{");
    while (!peek().is("}")) {
      skip_modifiers();
      const Token& name = identifier("field name");
      if (!seen.insert(name.text).second) throw DuplicateDefinition(name.text, name.span);
      expect(":");
      fields.push_back(FieldDecl{name.text, type(), name.span});
      if (!accept(",")) break;
    }
    expect("}");
    return fields;
  }

  TypeDeclPtr type_declaration() {
    auto decl = std::make_shared<TypeDecl>();
    const bool is_struct = peek().is_ident("struct");
    next();
    const Token& name = identifier("type name");
    decl->name = name.text;
    decl->span = name.span;
    if (peek().is("<")) throw SyntaxError("generic type declarations are not supported", peek().span);
    if (is_struct) {
      decl->kind = TypeDecl::Kind::record;
      if (accept(";")) return decl;
      decl->fields = braced_fields();
      return decl;
    }
    decl->kind = TypeDecl::Kind::variant;
    expect("{");
    std::set<std::string> tags;
    while (!peek().is("}")) {
      const Token& tag = identifier("variant name");
      if (!tags.insert(tag.text).second) throw DuplicateDefinition(tag.text, tag.span);
      VariantDecl v;
      v.name = tag.text;
      v.span = tag.span;
      if (peek().is("{")) {
        v.fields = braced_fields();
      } else if (accept("(")) {
        v.tuple_like = true;
        while (!peek().is(")")) {
          const SourceSpan span = peek().span;
          v.fields.push_back(FieldDecl{std::to_string(v.fields.size()), type(), span});
          if (!accept(",")) break;
        }
        expect(")");
      }
      decl->variants.push_back(std::move(v));
      if (!accept(",")) break;
    }
    expect("}");
    return decl;
  }

  SpecFn spec_fn() {
    expect_ident("fn");
    SpecFn fn;
    const Token& name = identifier("function name");
    fn.name = name.text;
    fn.span = name.span;
    if (peek().is("<")) throw SyntaxError("generic spec fns are not supported", peek().span);
    expect("(");
    std::set<std::string> seen;
    while (!peek().is(")")) {
      skip_modifiers();
      const Token& p = identifier("parameter name");
      if (!seen.insert(p.text).second) throw DuplicateDefinition(p.text, p.span);
      expect(":");
      fn.params.push_back(Param{p.text, type(), p.span});
      if (!accept(",")) break;
    }
    expect(")");
    expect("->");
    if (accept("(")) {  // named return `-> (r: bool)`
      identifier("return name");
      expect(":");
      fn.ret = type();
      expect(")");
    } else {
      fn.ret = type();
    }
    // Clauses that only matter to a prover.
    while (peek().is_ident("decreases") || peek().is_ident("recommends") ||
           peek().is_ident("when") || peek().is_ident("via")) {
      next();
      do {
        no_struct_ = true;
        (void)expression();
        no_struct_ = false;
      } while (accept(","));
    }
    if (!peek().is("{")) {
      throw SyntaxError("spec fn without body", peek().span, "`{`");
    }
    fn.body = block();
    return fn;
  }

  // ---- expressions ----

  /// Lowest level: optional `&&&` / `|||` bullet lists.
  ExprPtr expression() {
    if (peek().is("&&&") || peek().is("|||")) {
      const std::string bullet = peek().text;
      const SourceSpan span = peek().span;
      const BinaryOp op = bullet == "&&&" ? BinaryOp::and_ : BinaryOp::or_;
      ExprPtr acc;
      while (accept(bullet)) {
        ExprPtr item = implies();
        acc = acc ? make_binary(op, std::move(acc), std::move(item), span) : std::move(item);
      }
      return acc;
    }
    return implies();
  }

  ExprPtr implies() {
    ExprPtr lhs = or_expr();
    if (peek().is("==>")) {
      const SourceSpan span = next().span;
      ExprPtr rhs = implies();  // right-associative
      return make_binary(BinaryOp::implies, std::move(lhs), std::move(rhs), span);
    }
    if (peek().is("<==>")) {
      const SourceSpan span = next().span;
      ExprPtr rhs = implies();
      return make_binary(BinaryOp::eq, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (peek().is("||")) {
      const SourceSpan span = next().span;
      lhs = make_binary(BinaryOp::or_, std::move(lhs), and_expr(), span);
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = comparison();
    while (peek().is("&&")) {
      const SourceSpan span = next().span;
      lhs = make_binary(BinaryOp::and_, std::move(lhs), comparison(), span);
    }
    return lhs;
  }

  ExprPtr comparison() {
    ExprPtr first = additive();
    if (peek().is_ident("matches") || peek().is_ident("is")) {
      const bool is_form = peek().is_ident("is");
      const SourceSpan span = next().span;
      auto e = make(ExprKind::matches, span);
      if (is_form) {
        Pattern p;
        p.kind = Pattern::Kind::variant;
        p.span = peek().span;
        p.tag = identifier("variant name").text;
        p.has_rest = true;
        e->pattern = std::move(p);
      } else {
        e->pattern = pattern();
      }
      e->kids.push_back(std::move(first));
      return e;
    }
    if (!is_comparison(peek())) return first;
    const SourceSpan span = peek().span;
    std::vector<BinaryOp> ops;
    std::vector<ExprPtr> operands;
    operands.push_back(std::move(first));
    while (is_comparison(peek())) {
      ops.push_back(comparison_op(next()));
      operands.push_back(additive());
    }
    if (ops.size() == 1) {
      return make_binary(ops[0], std::move(operands[0]), std::move(operands[1]), span);
    }
    const bool ascending = std::all_of(ops.begin(), ops.end(), [](BinaryOp op) {
      return op == BinaryOp::lt || op == BinaryOp::le;
    });
    const bool descending = std::all_of(ops.begin(), ops.end(), [](BinaryOp op) {
      return op == BinaryOp::gt || op == BinaryOp::ge;
    });
    if (!ascending && !descending) {
      throw SyntaxError("comparison chains must use only `<`/`<=` or only `>`/`>=`", span);
    }
    auto e = make(ExprKind::chain, span);
    e->chain_ops = std::move(ops);
    e->kids = std::move(operands);
    return e;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (peek().is("+") || peek().is("-")) {
      const Token& op = next();
      const BinaryOp bop = op.is("+") ? BinaryOp::add : BinaryOp::sub;
      lhs = make_binary(bop, std::move(lhs), multiplicative(), op.span);
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = cast();
    while (peek().is("*") || peek().is("/") || peek().is("%")) {
      const Token& op = next();
      const BinaryOp bop = op.is("*") ? BinaryOp::mul : op.is("/") ? BinaryOp::div : BinaryOp::mod;
      lhs = make_binary(bop, std::move(lhs), cast(), op.span);
    }
    return lhs;
  }

  ExprPtr cast() {
    ExprPtr e = unary();
    while (peek().is_ident("as")) {
      const SourceSpan span = next().span;
      auto c = make(ExprKind::cast, span);
      c->cast_target = type();
      c->kids.push_back(std::move(e));
      e = std::move(c);
    }
    return e;
  }

  ExprPtr unary() {
    if (peek().is("!")) {
      const SourceSpan span = next().span;
      auto e = make(ExprKind::unary, span);
      e->uop = UnaryOp::not_;
      e->kids.push_back(unary());
      return e;
    }
    if (peek().is("-")) {
      const SourceSpan span = next().span;
      if (peek().kind == TokenKind::integer) {
        ExprPtr lit = integer_literal(/*negative=*/true);
        lit->span = span;
        return postfix(std::move(lit));
      }
      auto e = make(ExprKind::unary, span);
      e->uop = UnaryOp::neg;
      e->kids.push_back(unary());
      return e;
    }
    return postfix(primary());
  }

  std::vector<ExprPtr> call_args() {
    std::vector<ExprPtr> args;
    expect("(");
    const bool saved = no_struct_;
    no_struct_ = false;
    while (!peek().is(")")) {
      args.push_back(expression());
      if (!accept(",")) break;
    }
    no_struct_ = saved;
    expect(")");
    return args;
  }

  ExprPtr postfix(ExprPtr e) {
    for (;;) {
      if (peek().is(".")) {
        const SourceSpan span = next().span;
        const Token& member = peek();
        std::string name;
        if (member.kind == TokenKind::integer) {
          name = member.text;
          next();
        } else {
          name = identifier("field or method name").text;
        }
        if (peek().is("::") && peek(1).is("<")) {  // turbofish on a method
          next();
          next();
          type();
          while (accept(",")) type();
          expect(">");
        }
        if (peek().is("(")) {
          auto m = make(ExprKind::method, span);
          m->name = std::move(name);
          m->kids.push_back(std::move(e));
          for (auto& a : call_args()) m->kids.push_back(std::move(a));
          e = std::move(m);
        } else {
          auto f = make(ExprKind::field, span);
          f->name = std::move(name);
          f->kids.push_back(std::move(e));
          e = std::move(f);
        }
      } else if (peek().is("[")) {
        const SourceSpan span = next().span;
        const bool saved = no_struct_;
        no_struct_ = false;
        auto idx = make(ExprKind::index, span);
        idx->kids.push_back(std::move(e));
        idx->kids.push_back(expression());
        no_struct_ = saved;
        expect("]");
        e = std::move(idx);
      } else {
        return e;
      }
    }
  }

  ExprPtr integer_literal(bool negative) {
    const Token& t = next();
    auto e = make(ExprKind::int_lit, t.span);
    const std::uint64_t limit = negative ? kMaxPositive + 1 : kMaxPositive;
    if (t.magnitude_overflow || t.magnitude > limit) {
      throw SyntaxError("integer literal out of 64-bit signed range", t.span);
    }
    if (negative) {
      e->int_value = t.magnitude == kMaxPositive + 1 ? std::numeric_limits<std::int64_t>::min()
                                                     : -static_cast<std::int64_t>(t.magnitude);
    } else {
      e->int_value = static_cast<std::int64_t>(t.magnitude);
    }
    // Suffixed literal `7u8` becomes a cast so the width is range-checked.
    std::size_t digits_end = 0;
    while (digits_end < t.text.size() &&
           (std::isdigit(static_cast<unsigned char>(t.text[digits_end])) || t.text[digits_end] == '_')) {
      ++digits_end;
    }
    if (digits_end < t.text.size()) {
      const std::string suffix = t.text.substr(digits_end);
      auto width = int_width_from_name(suffix);
      if (!width) throw SyntaxError("unknown integer suffix `" + suffix + "`", t.span);
      auto c = make(ExprKind::cast, t.span);
      c->cast_target = TypeRef::integer(*width);
      c->kids.push_back(std::move(e));
      return c;
    }
    return e;
  }

  ExprPtr block() {
    const SourceSpan span = expect("{").span;
    const bool saved = no_struct_;
    no_struct_ = false;
    std::vector<LetBinding> lets;
    while (peek().is_ident("let")) {
      next();
      LetBinding let;
      const Token& name = identifier("binding name");
      let.name = name.text;
      let.span = name.span;
      if (accept(":")) let.declared = type();
      expect("=");
      let.value = expression();
      expect(";");
      lets.push_back(std::move(let));
    }
    ExprPtr body = expression();
    expect("}");
    no_struct_ = saved;
    if (lets.empty()) return body;
    auto e = make(ExprKind::block, span);
    e->lets = std::move(lets);
    e->kids.push_back(std::move(body));
    return e;
  }

  ExprPtr if_expression() {
    const SourceSpan span = next().span;
    auto e = make(ExprKind::if_, span);
    no_struct_ = true;
    e->kids.push_back(expression());
    no_struct_ = false;
    e->kids.push_back(block());
    expect_ident("else");
    if (peek().is_ident("if")) {
      e->kids.push_back(if_expression());
    } else {
      e->kids.push_back(block());
    }
    return e;
  }

  Pattern pattern() {
    Pattern p;
    p.span = peek().span;
    const Token& head = identifier("pattern");
    if (head.text == "_") return p;
    if (head.text == "None") {
      p.kind = Pattern::Kind::none;
      return p;
    }
    if (head.text == "Some") {
      p.kind = Pattern::Kind::some;
      expect("(");
      p.binder = identifier("binding").text;
      expect(")");
      return p;
    }
    if (!peek().is("::")) {
      if (peek().is("(") || peek().is("{")) {
        throw SyntaxError("variant patterns must be qualified as `Enum::Tag`", head.span, "`::`");
      }
      p.kind = Pattern::Kind::binding;
      p.binder = head.text;
      return p;
    }
    next();
    p.kind = Pattern::Kind::variant;
    p.type_name = head.text;
    p.tag = identifier("variant name").text;
    if (accept("(")) {
      p.tuple_like = true;
      std::size_t position = 0;
      while (!peek().is(")")) {
        if (accept("..")) {
          p.has_rest = true;
          break;
        }
        p.bindings.emplace_back(std::to_string(position++), identifier("binding").text);
        if (!accept(",")) break;
      }
      expect(")");
    } else if (peek().is("{")) {
      next();
      while (!peek().is("}")) {
        if (accept("..")) {
          p.has_rest = true;
          break;
        }
        const Token& field = identifier("field name");
        std::string binder = field.text;
        if (accept(":")) binder = identifier("binding").text;
        p.bindings.emplace_back(field.text, std::move(binder));
        if (!accept(",")) break;
      }
      expect("}");
    } else {
      p.has_rest = true;  // bare `Enum::Tag` ignores any payload
    }
    return p;
  }

  ExprPtr match_expression() {
    const SourceSpan span = next().span;
    auto e = make(ExprKind::match, span);
    no_struct_ = true;
    e->kids.push_back(expression());
    no_struct_ = false;
    expect("{");
    while (!peek().is("}")) {
      MatchArm arm;
      arm.pattern = pattern();
      expect("=>");
      const bool braced = peek().is("{");
      arm.body = expression();
      e->arms.push_back(std::move(arm));
      if (!accept(",") && !braced) break;
    }
    expect("}");
    if (e->arms.empty()) throw SyntaxError("match without arms", span);
    return e;
  }

  ExprPtr quantifier() {
    const Token& kw = next();
    auto e = make(ExprKind::quant, kw.span);
    e->is_forall = kw.text == "forall";
    if (accept("||")) {
      throw SyntaxError("quantifier binds no variables", kw.span, "`|x: T|`");
    }
    expect("|");
    std::set<std::string> seen;
    while (!peek().is("|")) {
      const Token& v = identifier("bound variable");
      if (!seen.insert(v.text).second) throw DuplicateDefinition(v.text, v.span);
      expect(":");
      e->qvars.push_back(QuantVar{v.text, type(), v.span, -1});
      if (!accept(",")) break;
    }
    expect("|");
    if (e->qvars.empty()) throw SyntaxError("quantifier binds no variables", kw.span);
    const bool saved = no_struct_;
    no_struct_ = false;
    e->kids.push_back(implies());
    no_struct_ = saved;
    return e;
  }

  ExprPtr braced_ctor(ExprPtr e) {
    expect("{");
    const bool saved = no_struct_;
    no_struct_ = false;
    std::set<std::string> seen;
    while (!peek().is("}")) {
      const Token& field = identifier("field name");
      if (!seen.insert(field.text).second) throw DuplicateDefinition(field.text, field.span);
      e->field_names.push_back(field.text);
      if (accept(":")) {
        e->kids.push_back(expression());
      } else {  // shorthand `Point { x, y }`
        auto v = make(ExprKind::var, field.span);
        v->name = field.text;
        e->kids.push_back(std::move(v));
      }
      if (!accept(",")) break;
    }
    no_struct_ = saved;
    expect("}");
    return e;
  }

  ExprPtr container_literal(ExprKind kind) {
    const SourceSpan span = next().span;
    expect("!");
    expect("[");
    auto e = make(kind, span);
    const bool saved = no_struct_;
    no_struct_ = false;
    while (!peek().is("]")) {
      e->kids.push_back(expression());
      if (!accept(",")) break;
    }
    no_struct_ = saved;
    expect("]");
    return e;
  }

  ExprPtr path_expression() {
    const Token& head = next();
    const SourceSpan span = head.span;
    next();  // ::
    std::vector<TypeRef> type_args;
    if (accept("<")) {
      type_args.push_back(type());
      while (accept(",")) type_args.push_back(type());
      expect(">");
      expect("::");
    }
    const Token& tail = identifier("path segment");
    static const std::set<std::string> kContainers{"Seq", "Set", "Map", "Multiset"};
    if (kContainers.count(head.text) != 0) {
      auto e = make(ExprKind::static_call, span);
      e->path = head.text;
      e->name = tail.text;
      e->type_args = std::move(type_args);
      e->kids = call_args();
      return e;
    }
    if (!type_args.empty()) throw SyntaxError("unexpected type arguments", span);
    auto e = make(ExprKind::variant_ctor, span);
    e->path = head.text;
    e->name = tail.text;
    if (peek().is("(")) {
      e->tuple_ctor = true;
      e->kids = call_args();
      for (std::size_t i = 0; i < e->kids.size(); ++i) e->field_names.push_back(std::to_string(i));
    } else if (peek().is("{") && !no_struct_) {
      e = braced_ctor(std::move(e));
    }
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::integer: return integer_literal(false);
      case TokenKind::char_lit: {
        auto e = make(ExprKind::char_lit, t.span);
        e->char_value = t.str.at(0);
        next();
        return e;
      }
      case TokenKind::string_lit: {
        auto e = make(ExprKind::str_lit, t.span);
        e->str_value = t.str;
        next();
        return e;
      }
      case TokenKind::end:
        throw SyntaxError("unexpected end of input", t.span, "expression");
      default: break;
    }
    if (t.is("(")) {
      next();
      const bool saved = no_struct_;
      no_struct_ = false;
      ExprPtr inner = expression();
      no_struct_ = saved;
      expect(")");
      return inner;
    }
    if (t.is("{")) return block();
    if (t.kind != TokenKind::ident) {
      throw SyntaxError("unexpected `" + describe(t) + "`", t.span, "expression");
    }
    if (t.text == "true" || t.text == "false") {
      auto e = make(ExprKind::bool_lit, t.span);
      e->bool_value = t.text == "true";
      next();
      return e;
    }
    if (t.text == "if") return if_expression();
    if (t.text == "match") return match_expression();
    if (t.text == "forall" || t.text == "exists") return quantifier();
    if (t.text == "seq" && peek(1).is("!")) return container_literal(ExprKind::seq_lit);
    if (t.text == "set" && peek(1).is("!")) return container_literal(ExprKind::set_lit);
    if (t.text == "None") {
      next();
      return make(ExprKind::none, t.span);
    }
    if (t.text == "Some") {
      next();
      auto e = make(ExprKind::some, t.span);
      auto args = call_args();
      if (args.size() != 1) throw SyntaxError("`Some` takes one argument", t.span);
      e->kids.push_back(std::move(args[0]));
      return e;
    }
    if (peek(1).is("::")) return path_expression();
    next();
    if (peek().is("(")) {
      auto e = make(ExprKind::call, t.span);
      e->name = t.text;
      e->kids = call_args();
      return e;
    }
    if (peek().is("{") && !no_struct_ && std::isupper(static_cast<unsigned char>(t.text[0]))) {
      auto e = make(ExprKind::record_ctor, t.span);
      e->name = t.text;
      return braced_ctor(std::move(e));
    }
    auto e = make(ExprKind::var, t.span);
    e->name = t.text;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  /// Struct literals are not allowed directly in `if` / `match` heads.
  bool no_struct_ = false;
};

}  // namespace

SpecModule parse_module(std::string_view source) { return Parser(source).module(); }

std::vector<TypeDeclPtr> parse_type_declarations(std::string_view source) {
  return Parser(source).declarations();
}

TypeRef parse_type(std::string_view source) { return Parser(source).standalone_type(); }

}  // namespace specfaith
