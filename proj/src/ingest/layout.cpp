#include "specfaith/ingest/layout.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "specfaith/kernel/lexer.hpp"

namespace specfaith {

namespace {

struct SourceLine {
  int number = 0;
  int indent = 0;
  std::vector<std::string> words;
};

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<SourceLine> source_lines(std::string_view text) {
  std::vector<SourceLine> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    int indent = 0;
    while (static_cast<std::size_t>(indent) < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) {
      ++indent;
    }
    const std::string_view rest = raw.substr(static_cast<std::size_t>(indent));
    if (!rest.empty() && !rest.starts_with("//") && rest.find_first_not_of(" \t\r") != std::string_view::npos) {
      out.push_back({number, indent, split_words(rest)});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool is_scalar(const TypeRef& t) {
  return t.is_integer() || t.kind() == TypeKind::boolean || t.kind() == TypeKind::character ||
         t.kind() == TypeKind::string;
}

class LayoutParser {
 public:
  LayoutParser(const TaskSignature& sig, std::vector<SourceLine> lines)
      : sig_(sig), lines_(std::move(lines)) {}

  void parse(Layout::Section& input, std::optional<Layout::Section>& output) {
    bool seen_input = false;
    while (pos_ < lines_.size()) {
      const SourceLine& head = lines_[pos_];
      if (head.indent != 0) throw LayoutError("expected a section header", head.number);
      if (head.words.size() < 2 || (head.words[0] != "input" && head.words[0] != "output")) {
        throw LayoutError("expected `input <Type>` or `output <Type>`", head.number);
      }
      Layout::Section section;
      section.type_name = head.words[1];
      for (std::size_t i = 2; i < head.words.size(); ++i) {
        if (head.words[i] == "final_newline=yes") {
          section.final_newline = true;
        } else if (head.words[i] == "final_newline=no") {
          section.final_newline = false;
        } else {
          throw LayoutError("unknown section option `" + head.words[i] + "`", head.number);
        }
      }
      const bool is_input = head.words[0] == "input";
      const std::string expected = is_input ? sig_.input_type : sig_.output_type;
      if (section.type_name != expected) {
        throw LayoutError("section type `" + section.type_name + "` is not the task's " +
                              (is_input ? "input" : "output") + " type `" + expected + "`",
                          head.number);
      }
      if ((is_input && seen_input) || (!is_input && output)) {
        throw LayoutError("duplicate section", head.number);
      }
      ++pos_;
      root_ = TypeRef::named(section.type_name);
      vars_.clear();
      section.body = block(0, head.number);
      if (is_input) {
        input = std::move(section);
        seen_input = true;
      } else {
        output = std::move(section);
      }
    }
    if (!seen_input) throw LayoutError("missing input section", 1);
  }

 private:
  std::vector<Layout::Stmt> block(int parent_indent, int header_line) {
    std::vector<Layout::Stmt> out;
    if (pos_ >= lines_.size() || lines_[pos_].indent <= parent_indent) {
      throw LayoutError("empty block", header_line);
    }
    const int indent = lines_[pos_].indent;
    while (pos_ < lines_.size() && lines_[pos_].indent > parent_indent) {
      if (lines_[pos_].indent != indent) throw LayoutError("inconsistent indentation", lines_[pos_].number);
      out.push_back(stmt(indent));
    }
    return out;
  }

  Layout::Stmt stmt(int indent) {
    const SourceLine& l = lines_[pos_++];
    Layout::Stmt s;
    s.source_line = l.number;
    if (l.words[0] == "line") {
      s.kind = Layout::Stmt::Kind::line;
      for (std::size_t i = 1; i < l.words.size(); ++i) s.items.push_back(item(l.words[i], l.number));
      return s;
    }
    if (l.words[0] == "for") {
      const bool eof = l.words.size() == 6 && l.words[4] == "until" && l.words[5] == "eof";
      if (!(l.words.size() == 4 || eof) || l.words[2] != "in" || !is_ident(l.words[1])) {
        throw LayoutError("expected `for <var> in <path> [until eof]`", l.number);
      }
      s.kind = Layout::Stmt::Kind::loop;
      s.var = l.words[1];
      s.until_eof = eof;
      s.over = path(l.words[3], l.number);
      if (s.over.type.kind() != TypeKind::seq) {
        throw LayoutError("`" + s.over.text + "` is not a sequence", l.number);
      }
      if (vars_.contains(s.var)) throw LayoutError("loop variable `" + s.var + "` shadows another", l.number);
      vars_.insert({s.var, s.over.text});
      s.body = block(indent, l.number);
      vars_.erase(s.var);
      return s;
    }
    throw LayoutError("unknown statement `" + l.words[0] + "`", l.number);
  }

  Layout::Item item(const std::string& word, int line) {
    Layout::Item it;
    std::string_view w = word;
    if (w.starts_with('#')) {
      it.kind = Layout::Item::Kind::length;
      it.path = path(w.substr(1), line);
      if (it.path.type.kind() != TypeKind::seq) throw LayoutError("`#` needs a sequence", line);
      return it;
    }
    if (const auto colon = w.find(':'); colon != std::string_view::npos) {
      const std::string_view tokens = w.substr(colon + 1);
      const auto bar = tokens.find('|');
      if (bar == std::string_view::npos || bar == 0 || bar + 1 == tokens.size()) {
        throw LayoutError("expected `path:TRUE|FALSE`", line);
      }
      it.kind = Layout::Item::Kind::flag;
      it.path = path(w.substr(0, colon), line);
      it.true_token = std::string(tokens.substr(0, bar));
      it.false_token = std::string(tokens.substr(bar + 1));
      if (it.true_token == it.false_token) throw LayoutError("flag tokens must differ", line);
      if (it.path.type.kind() != TypeKind::boolean) throw LayoutError("flag item needs a bool", line);
      return it;
    }
    auto seq_suffix = [&](std::string_view suffix) -> bool {
      if (!w.ends_with(suffix)) return false;
      it.path = path(w.substr(0, w.size() - suffix.size()), line);
      if (it.path.type.kind() != TypeKind::seq) {
        throw LayoutError("`" + it.path.text + "` is not a sequence", line);
      }
      return true;
    };
    if (seq_suffix("[..]")) {
      it.kind = Layout::Item::Kind::rest;
      if (!is_scalar(it.path.type.elem())) throw LayoutError("sequence elements must be scalars", line);
      return it;
    }
    if (seq_suffix("[chars]")) {
      it.kind = Layout::Item::Kind::chars;
      if (it.path.type.elem().kind() != TypeKind::character) {
        throw LayoutError("`[chars]` needs a Seq<char>", line);
      }
      return it;
    }
    if (const auto open = w.rfind("[.."); open != std::string_view::npos && w.ends_with(']')) {
      const std::string_view count = w.substr(open + 3, w.size() - open - 4);
      it.kind = Layout::Item::Kind::exact;
      it.path = path(w.substr(0, open), line);
      if (it.path.type.kind() != TypeKind::seq || !is_scalar(it.path.type.elem())) {
        throw LayoutError("`[..n]` needs a sequence of scalars", line);
      }
      std::int64_t n = 0;
      const auto [p, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
      if (ec == std::errc() && p == count.data() + count.size()) {
        if (n < 0) throw LayoutError("negative count", line);
        it.count_const = n;
      } else {
        it.count_path = path(count, line);
        if (!it.count_path->type.is_integer()) throw LayoutError("count must be an integer", line);
      }
      return it;
    }
    it.path = path(w, line);
    if (is_scalar(it.path.type)) {
      it.kind = Layout::Item::Kind::scalar;
      return it;
    }
    if (auto decl = named_record(it.path.type)) {
      for (const auto& f : decl->fields) {
        if (!is_scalar(f.type) || f.type.kind() == TypeKind::boolean) {
          throw LayoutError("record item `" + it.path.text + "` needs non-bool scalar fields", line);
        }
      }
      it.kind = Layout::Item::Kind::record;
      return it;
    }
    throw LayoutError("`" + it.path.text + "` has unsupported type " + it.path.type.to_string(), line);
  }

  TypeDeclPtr named_record(const TypeRef& t) const {
    if (t.kind() != TypeKind::named) return nullptr;
    auto decl = sig_.find(t.name());
    return decl && decl->kind == TypeDecl::Kind::record ? decl : nullptr;
  }

  Layout::Path path(std::string_view text, int line) {
    Layout::Path p;
    p.text = std::string(text);
    TypeRef t = root_;
    std::size_t i = 0;
    bool first = true;
    while (i < text.size()) {
      if (first || text[i] == '.') {
        if (!first) ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != '.' && text[j] != '[') ++j;
        const std::string_view name = text.substr(i, j - i);
        auto decl = named_record(t);
        if (!decl) throw LayoutError("`" + p.text + "`: field access on " + t.to_string(), line);
        const auto idx = decl->field_index(name);
        if (!idx) throw LayoutError("`" + std::string(name) + "` is not a field of " + decl->name, line);
        p.steps.push_back({Layout::Step::Kind::field, *idx, {}, 0});
        t = decl->fields[*idx].type;
        i = j;
        first = false;
      } else if (text[i] == '[') {
        const std::size_t close = text.find(']', i);
        if (close == std::string_view::npos) throw LayoutError("unclosed `[` in `" + p.text + "`", line);
        const std::string_view inner = text.substr(i + 1, close - i - 1);
        if (t.kind() != TypeKind::seq) throw LayoutError("`" + p.text + "`: indexing a non-sequence", line);
        Layout::Step step;
        std::int64_t n = 0;
        const auto [q, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), n);
        if (ec == std::errc() && q == inner.data() + inner.size() && n >= 0) {
          step.kind = Layout::Step::Kind::const_index;
          step.index = n;
        } else if (vars_.contains(std::string(inner))) {
          step.kind = Layout::Step::Kind::var_index;
          step.var = std::string(inner);
        } else {
          throw LayoutError("`" + std::string(inner) + "` is not a loop variable", line);
        }
        p.steps.push_back(std::move(step));
        t = t.elem();
        i = close + 1;
      } else {
        throw LayoutError("malformed path `" + p.text + "`", line);
      }
    }
    if (p.steps.empty()) throw LayoutError("empty path", line);
    p.type = t;
    return p;
  }

  const TaskSignature& sig_;
  std::vector<SourceLine> lines_;
  std::size_t pos_ = 0;
  TypeRef root_;
  std::map<std::string, std::string> vars_;
};

/// Partially read value.
struct Draft {
  TypeRef type;
  std::optional<Value> scalar;
  std::vector<Draft> kids;
  std::optional<std::int64_t> declared_length;
  std::string where;
};

using Vars = std::map<std::string, std::int64_t, std::less<>>;

class Reader {
 public:
  Reader(const TaskSignature& sig, std::string_view raw) : sig_(sig) {
    if (raw.ends_with('\n')) raw.remove_suffix(1);
    if (!raw.empty()) {
      std::size_t pos = 0;
      while (true) {
        const std::size_t nl = raw.find('\n', pos);
        lines_.push_back(raw.substr(pos, nl == std::string_view::npos ? raw.npos : nl - pos));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
      }
    }
  }

  Value run(const Layout::Section& section) {
    root_ = fresh(TypeRef::named(section.type_name), section.type_name);
    exec(section.body);
    if (line_ < lines_.size()) {
      throw ConversionError("line " + std::to_string(line_ + 1) + ": unexpected trailing content");
    }
    return finish(root_);
  }

 private:
  Draft fresh(const TypeRef& t, std::string where) {
    Draft d;
    d.type = t;
    d.where = std::move(where);
    if (t.kind() == TypeKind::named) {
      auto decl = sig_.find(t.name());
      for (const auto& f : decl->fields) d.kids.push_back(fresh(f.type, d.where + "." + f.name));
    }
    return d;
  }

  void exec(const std::vector<Layout::Stmt>& body) {
    for (const auto& s : body) {
      if (s.kind == Layout::Stmt::Kind::line) {
        read_line(s);
        continue;
      }
      std::int64_t i = 0;
      if (s.until_eof) {
        while (line_ < lines_.size()) {
          vars_[s.var] = i++;
          exec(s.body);
        }
      } else {
        Draft& over = at(s.over, true);
        const std::int64_t n =
            over.declared_length.value_or(static_cast<std::int64_t>(over.kids.size()));
        for (; i < n; ++i) {
          vars_[s.var] = i;
          exec(s.body);
        }
      }
      vars_.erase(s.var);
    }
  }

  void read_line(const Layout::Stmt& s) {
    if (line_ >= lines_.size()) {
      throw ConversionError("line " + std::to_string(line_ + 1) + ": unexpected end of input");
    }
    const std::string lineno = "line " + std::to_string(line_ + 1);
    tokens_ = split_words(lines_[line_++]);
    next_ = 0;
    for (const auto& item : s.items) read_item(item, lineno);
    if (next_ < tokens_.size()) {
      throw ConversionError(lineno + ": unexpected token `" + tokens_[next_] + "`");
    }
  }

  const std::string& take(const std::string& lineno, const std::string& what) {
    if (next_ >= tokens_.size()) throw ConversionError(lineno + ": missing token for " + what);
    return tokens_[next_++];
  }

  Value scalar(const TypeRef& t, const std::string& tok, const std::string& lineno) {
    switch (t.kind()) {
      case TypeKind::integer: {
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) {
          throw ConversionError(lineno + ": `" + tok + "` is not an integer");
        }
        if (!int_range(t.width()).contains(v)) {
          throw ConversionError(lineno + ": " + tok + " is out of range for " + t.to_string());
        }
        return Value::integer(v);
      }
      case TypeKind::character: {
        std::u32string s;
        for (const auto& cp : to_utf32(tok)) s.push_back(cp);
        if (s.size() != 1) throw ConversionError(lineno + ": `" + tok + "` is not one character");
        return Value::character(s[0]);
      }
      case TypeKind::string: return Value::string(to_utf32(tok));
      case TypeKind::boolean:
        if (tok == "true") return Value::boolean(true);
        if (tok == "false") return Value::boolean(false);
        throw ConversionError(lineno + ": `" + tok + "` is not a boolean");
      default: break;
    }
    throw ConversionError(lineno + ": unsupported scalar type");
  }

  void read_item(const Layout::Item& item, const std::string& lineno) {
    using K = Layout::Item::Kind;
    switch (item.kind) {
      case K::length: {
        Draft& d = at(item.path, true);
        const Value n = scalar(TypeRef::integer(IntWidth::usize), take(lineno, "#" + item.path.text), lineno);
        d.declared_length = n.as_int();
        return;
      }
      case K::scalar: {
        Draft& d = at(item.path, true);
        d.scalar = scalar(d.type, take(lineno, item.path.text), lineno);
        return;
      }
      case K::flag: {
        Draft& d = at(item.path, true);
        const std::string& tok = take(lineno, item.path.text);
        if (tok == item.true_token) {
          d.scalar = Value::boolean(true);
        } else if (tok == item.false_token) {
          d.scalar = Value::boolean(false);
        } else {
          throw ConversionError(lineno + ": expected `" + item.true_token + "` or `" +
                                item.false_token + "`, found `" + tok + "`");
        }
        return;
      }
      case K::record: {
        Draft& d = at(item.path, true);
        for (auto& kid : d.kids) kid.scalar = scalar(kid.type, take(lineno, kid.where), lineno);
        return;
      }
      case K::rest:
      case K::exact:
      case K::chars: {
        Draft& d = at(item.path, true);
        d.kids.clear();
        const TypeRef& elem = d.type.elem();
        auto push = [&](Value v) {
          Draft e;
          e.type = elem;
          e.scalar = std::move(v);
          e.where = d.where + "[" + std::to_string(d.kids.size()) + "]";
          d.kids.push_back(std::move(e));
        };
        if (item.kind == K::chars) {
          for (char32_t c : to_utf32(take(lineno, item.path.text))) push(Value::character(c));
        } else if (item.kind == K::rest) {
          while (next_ < tokens_.size()) push(scalar(elem, tokens_[next_++], lineno));
        } else {
          std::int64_t n = item.count_const;
          if (item.count_path) {
            Draft& c = at(*item.count_path, false);
            if (!c.scalar) throw ConversionError(lineno + ": count `" + item.count_path->text + "` not read yet");
            n = c.scalar->as_int();
          }
          if (n < 0) throw ConversionError(lineno + ": negative count for " + item.path.text);
          for (std::int64_t k = 0; k < n; ++k) {
            if (next_ >= tokens_.size()) {
              throw ConversionError(lineno + ": expected " + std::to_string(n) + " tokens for " +
                                    item.path.text + ", found " + std::to_string(k));
            }
            push(scalar(elem, tokens_[next_++], lineno));
          }
        }
        return;
      }
    }
  }

  /// Resolves a path, growing sequences by one element when `create` is set.
  Draft& at(const Layout::Path& p, bool create) {
    Draft* d = &root_;
    for (const auto& step : p.steps) {
      if (step.kind == Layout::Step::Kind::field) {
        d = &d->kids[step.field];
        continue;
      }
      const std::int64_t idx = step.kind == Layout::Step::Kind::const_index ? step.index : vars_.at(step.var);
      const auto size = static_cast<std::int64_t>(d->kids.size());
      if (idx == size && create) {
        d->kids.push_back(fresh(d->type.elem(), d->where + "[" + std::to_string(idx) + "]"));
      } else if (idx > size || idx < 0 || (idx == size && !create)) {
        throw ConversionError("`" + p.text + "`: element " + std::to_string(idx) + " of " + d->where +
                              " read out of order");
      }
      d = &d->kids[static_cast<std::size_t>(idx)];
    }
    return *d;
  }

  Value finish(const Draft& d) {
    if (d.declared_length && *d.declared_length != static_cast<std::int64_t>(d.kids.size())) {
      throw ConversionError("declared length " + std::to_string(*d.declared_length) + " of " + d.where +
                            " but " + std::to_string(d.kids.size()) + " elements were read");
    }
    switch (d.type.kind()) {
      case TypeKind::seq: {
        SeqData elems;
        for (const auto& k : d.kids) elems.push_back(finish(k));
        return Value::seq(std::move(elems));
      }
      case TypeKind::named: {
        std::vector<Value> fields;
        for (const auto& k : d.kids) fields.push_back(finish(k));
        return Value::record(sig_.find(d.type.name()), std::move(fields));
      }
      default:
        if (!d.scalar) throw ConversionError(d.where + " was never read");
        return *d.scalar;
    }
  }

  static std::u32string to_utf32(std::string_view s) {
    std::u32string out;
    std::size_t i = 0;
    while (i < s.size()) {
      const auto c = static_cast<unsigned char>(s[i]);
      int len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
      if (len == 0 || i + static_cast<std::size_t>(len) > s.size()) throw ConversionError("invalid UTF-8");
      char32_t cp = len == 1 ? c : c & (0x7F >> len);
      for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
      out.push_back(cp);
      i += static_cast<std::size_t>(len);
    }
    return out;
  }

  const TaskSignature& sig_;
  std::vector<std::string_view> lines_;
  std::size_t line_ = 0;
  std::vector<std::string> tokens_;
  std::size_t next_ = 0;
  Draft root_;
  Vars vars_;
};

class Printer {
 public:
  std::string run(const Layout::Section& section, const Value& root) {
    root_ = &root;
    exec(section.body);
    std::string out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) out += '\n';
      out += lines_[i];
    }
    if (section.final_newline && !lines_.empty()) out += '\n';
    return out;
  }

 private:
  void exec(const std::vector<Layout::Stmt>& body) {
    for (const auto& s : body) {
      if (s.kind == Layout::Stmt::Kind::line) {
        std::vector<std::string> toks;
        for (const auto& item : s.items) emit(item, toks);
        std::string line;
        for (std::size_t i = 0; i < toks.size(); ++i) {
          if (i) line += ' ';
          line += toks[i];
        }
        lines_.push_back(std::move(line));
        continue;
      }
      const auto n = static_cast<std::int64_t>(at(s.over).as_seq().size());
      for (std::int64_t i = 0; i < n; ++i) {
        vars_[s.var] = i;
        exec(s.body);
      }
      vars_.erase(s.var);
    }
  }

  static std::string scalar(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::integer: return std::to_string(v.as_int());
      case Value::Kind::boolean: return v.as_bool() ? "true" : "false";
      case Value::Kind::character: {
        std::string s;
        append_utf8(s, v.as_char());
        return s;
      }
      case Value::Kind::string: return to_utf8(v.as_string());
      default: break;
    }
    throw ConversionError("cannot print a non-scalar value as a token");
  }

  void emit(const Layout::Item& item, std::vector<std::string>& toks) {
    using K = Layout::Item::Kind;
    const Value& v = at(item.path);
    switch (item.kind) {
      case K::length: toks.push_back(std::to_string(v.as_seq().size())); return;
      case K::scalar: toks.push_back(scalar(v)); return;
      case K::flag: toks.push_back(v.as_bool() ? item.true_token : item.false_token); return;
      case K::record:
        for (const auto& f : v.as_record().fields) toks.push_back(scalar(f));
        return;
      case K::chars: {
        std::string s;
        for (const auto& c : v.as_seq()) append_utf8(s, c.as_char());
        toks.push_back(std::move(s));
        return;
      }
      case K::rest:
      case K::exact:
        for (const auto& e : v.as_seq()) toks.push_back(scalar(e));
        return;
    }
  }

  const Value& at(const Layout::Path& p) {
    const Value* v = root_;
    for (const auto& step : p.steps) {
      if (step.kind == Layout::Step::Kind::field) {
        v = &v->as_record().fields.at(step.field);
        continue;
      }
      const std::int64_t idx =
          step.kind == Layout::Step::Kind::const_index ? step.index : vars_.at(step.var);
      const auto& seq = v->as_seq();
      if (idx < 0 || idx >= static_cast<std::int64_t>(seq.size())) {
        throw ConversionError("`" + p.text + "`: index " + std::to_string(idx) + " out of range");
      }
      v = &seq[static_cast<std::size_t>(idx)];
    }
    return *v;
  }

  const Value* root_ = nullptr;
  Vars vars_;
  std::vector<std::string> lines_;
};

}  // namespace

Layout Layout::parse(std::string_view text, const TaskSignature& signature) {
  Layout layout;
  layout.signature_ = signature;
  LayoutParser parser(layout.signature_, source_lines(text));
  parser.parse(layout.input_, layout.output_);
  return layout;
}

Value Layout::read(const Section& section, std::string_view raw) const {
  Reader reader(signature_, raw);
  return reader.run(section);
}

std::string Layout::print(const Section& section, const Value& value) const {
  if (!well_typed(value, TypeRef::named(section.type_name), signature_.lookup())) {
    throw ConversionError("value is not a " + section.type_name);
  }
  Printer printer;
  return printer.run(section, value);
}

Value Layout::read_input(std::string_view raw) const { return read(input_, raw); }

Value Layout::read_output(std::string_view raw) const {
  if (!output_) throw ConversionError("layout has no output section");
  return read(*output_, raw);
}

std::string Layout::print_input(const Value& input) const { return print(input_, input); }

std::string Layout::print_output(const Value& output) const {
  if (!output_) throw ConversionError("layout has no output section");
  return print(*output_, output);
}

Layout Layout::with_final_newline(bool on) const {
  Layout copy = *this;
  copy.input_.final_newline = on;
  if (copy.output_) copy.output_->final_newline = on;
  return copy;
}

}  // namespace specfaith
