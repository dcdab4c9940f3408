#include "specfaith/ingest/hacks.hpp"

#include <set>
#include <sstream>

namespace specfaith {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_length(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw MalformedRecord(key + ": `" + value + "` is not a length");
  }
}

}  // namespace

void HackRecord::validate() const {
  if (id.empty()) throw MalformedRecord("record without an id");
  if (validator == Validator::invalid) {
    if (validator_message.empty()) throw MalformedRecord("hack " + id + ": invalid without a message");
    if (program_output || checker) {
      throw MalformedRecord("hack " + id + ": invalid input cannot carry a program output or checker verdict");
    }
    if (answer) throw MalformedRecord("hack " + id + ": invalid input cannot carry an answer");
  } else {
    if (!program_output) throw MalformedRecord("hack " + id + ": valid record lacks program_output");
    if (!checker) throw MalformedRecord("hack " + id + ": valid record lacks a checker verdict");
  }
}

bool HackRecord::truncated() const {
  auto off = [](const std::optional<std::size_t>& declared, const std::optional<std::string>& text) {
    return declared && (!text || text->size() != *declared);
  };
  return off(input_length, input) || off(output_length, program_output) || off(answer_length, answer);
}

HackRecord parse_hack_record(std::string_view text) {
  HackRecord r;
  std::set<std::string> seen;
  bool has_validator = false;
  bool has_input = false;
  std::size_t pos = 0;
  int line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    return true;
  };
  std::string_view line;
  while (next_line(line)) {
    const std::string where = "line " + std::to_string(line_no);
    if (trim(line).empty() || trim(line).starts_with('#')) continue;
    std::string key;
    if (const auto heredoc = line.find("<<"); heredoc != std::string_view::npos &&
                                              line.find(':') == std::string_view::npos) {
      key = trim(line.substr(0, heredoc));
      std::istringstream spec{std::string(line.substr(heredoc + 2))};
      std::string tag;
      std::string flag;
      spec >> tag >> flag;
      if (tag.empty() || (!flag.empty() && flag != "noeol")) {
        throw MalformedRecord(where + ": expected `" + key + " <<TAG [noeol]`");
      }
      std::string body;
      bool closed = false;
      std::string_view inner;
      while (next_line(inner)) {
        if (inner == tag) {
          closed = true;
          break;
        }
        body += inner;
        body += '\n';
      }
      if (!closed) throw MalformedRecord(where + ": heredoc `" + tag + "` is not closed");
      if (flag == "noeol" && !body.empty()) body.pop_back();
      if (!seen.insert(key).second) throw MalformedRecord(where + ": duplicate `" + key + "`");
      if (key == "input") {
        r.input = std::move(body);
        has_input = true;
      } else if (key == "program_output") {
        r.program_output = std::move(body);
      } else if (key == "answer") {
        r.answer = std::move(body);
      } else {
        throw MalformedRecord(where + ": unknown block `" + key + "`");
      }
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw MalformedRecord(where + ": expected `key: value`");
    key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (!seen.insert(key).second) throw MalformedRecord(where + ": duplicate `" + key + "`");
    if (key == "id") {
      r.id = value;
    } else if (key == "validator") {
      if (value == "valid") {
        r.validator = HackRecord::Validator::valid;
      } else if (value == "invalid") {
        r.validator = HackRecord::Validator::invalid;
      } else {
        throw MalformedRecord(where + ": validator must be valid or invalid");
      }
      has_validator = true;
    } else if (key == "validator_message") {
      r.validator_message = value;
    } else if (key == "checker") {
      if (value == "accepted") {
        r.checker = HackRecord::Checker::accepted;
      } else if (value == "rejected") {
        r.checker = HackRecord::Checker::rejected;
      } else {
        throw MalformedRecord(where + ": checker must be accepted or rejected");
      }
    } else if (key == "input_length") {
      r.input_length = parse_length(value, key);
    } else if (key == "output_length") {
      r.output_length = parse_length(value, key);
    } else if (key == "answer_length") {
      r.answer_length = parse_length(value, key);
    } else {
      throw MalformedRecord(where + ": unknown key `" + key + "`");
    }
  }
  if (!has_validator) throw MalformedRecord("record lacks a validator verdict");
  if (!has_input) throw MalformedRecord("record lacks an input block");
  r.validate();
  return r;
}

namespace {

void heredoc(std::ostringstream& out, std::string_view key, const std::string& body) {
  std::string tag = "EOF";
  while (("\n" + body).find("\n" + tag + "\n") != std::string::npos ||
         body.ends_with("\n" + tag) || body == tag) {
    tag += "_";
  }
  const bool eol = body.empty() || body.back() == '\n';
  out << key << " <<" << tag << (eol ? "" : " noeol") << "\n" << body << (eol ? "" : "\n") << tag << "\n";
}

}  // namespace

std::string format_hack_record(const HackRecord& r) {
  r.validate();
  std::ostringstream out;
  out << "id: " << r.id << "\n";
  out << "validator: " << (r.validator == HackRecord::Validator::valid ? "valid" : "invalid") << "\n";
  if (r.validator == HackRecord::Validator::invalid) out << "validator_message: " << r.validator_message << "\n";
  if (r.checker) {
    out << "checker: " << (*r.checker == HackRecord::Checker::accepted ? "accepted" : "rejected") << "\n";
  }
  if (r.input_length) out << "input_length: " << *r.input_length << "\n";
  if (r.output_length) out << "output_length: " << *r.output_length << "\n";
  if (r.answer_length) out << "answer_length: " << *r.answer_length << "\n";
  heredoc(out, "input", r.input);
  if (r.program_output) heredoc(out, "program_output", *r.program_output);
  if (r.answer) heredoc(out, "answer", *r.answer);
  return out.str();
}

std::vector<std::pair<Bucket, RawCase>> route_hack(const HackRecord& r) {
  r.validate();
  const Provenance prov{Provenance::Kind::hack, r.id};
  std::vector<std::pair<Bucket, RawCase>> out;
  if (r.validator == HackRecord::Validator::invalid) {
    out.emplace_back(Bucket::pre_sound, RawCase{r.input, std::nullopt, prov, "hack " + r.id + " (invalid input)"});
    return out;
  }
  out.emplace_back(Bucket::pre_complete, RawCase{r.input, std::nullopt, prov, "hack " + r.id + " (valid input)"});
  const Bucket post =
      *r.checker == HackRecord::Checker::accepted ? Bucket::post_complete : Bucket::post_sound;
  out.emplace_back(post, RawCase{r.input, r.program_output, prov, "hack " + r.id + " (program output)"});
  if (r.answer) {
    out.emplace_back(Bucket::post_complete, RawCase{r.input, r.answer, prov, "hack " + r.id + " (answer)"});
  }
  return out;
}

std::string_view invalid_class_name(InvalidClass c) {
  return c == InvalidClass::syntactic ? "syntactic" : "semantic";
}

FilterRuleset FilterRuleset::parse(std::string_view text) {
  FilterRuleset set;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    const auto space = t.find_first_of(" \t");
    const std::string head = t.substr(0, space);
    const std::string rest = space == std::string::npos ? std::string() : trim(t.substr(space));
    auto cls_of = [&](const std::string& s) {
      if (s == "syntactic") return InvalidClass::syntactic;
      if (s == "semantic") return InvalidClass::semantic;
      throw MalformedRecord("filter rules line " + std::to_string(n) + ": unknown class `" + s + "`");
    };
    if (head == "default") {
      set.default_class = cls_of(rest);
      continue;
    }
    const InvalidClass cls = cls_of(head);
    if (rest.empty()) throw MalformedRecord("filter rules line " + std::to_string(n) + ": missing pattern");
    try {
      set.rules.push_back({rest, std::regex(rest, std::regex::ECMAScript | std::regex::icase), cls});
    } catch (const std::regex_error& e) {
      throw MalformedRecord("filter rules line " + std::to_string(n) + ": bad regex: " + e.what());
    }
  }
  return set;
}

Classification classify_rejection(std::string_view message, const FilterRuleset& rules) {
  const std::string msg(message);
  for (const auto& rule : rules.rules) {
    if (std::regex_search(msg, rule.regex)) return {rule.cls, true, rule.pattern};
  }
  return {rules.default_class, false, {}};
}

std::vector<RawCase> dedupe(const std::vector<RawCase>& cases) {
  std::set<std::pair<std::string, std::optional<std::string>>> seen;
  std::vector<RawCase> out;
  for (const auto& c : cases) {
    if (seen.emplace(c.input, c.output).second) out.push_back(c);
  }
  return out;
}

}  // namespace specfaith
