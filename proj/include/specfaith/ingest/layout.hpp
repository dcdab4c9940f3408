#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "specfaith/kernel/typecheck.hpp"

namespace specfaith {

/// Malformed layout description.
class LayoutError : public std::runtime_error {
 public:
  LayoutError(const std::string& message, int line)
      : std::runtime_error("layout line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raw text that a converter cannot map to or from values.
class ConversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declarative description of how a contest-style text file maps onto a
/// record type. Text is a sequence of lines, each a sequence of tokens
/// separated by single spaces.
///
///   input In1                       section header; `final_newline=no` optional
///     line #ns                      token = length of ns
///     for i in ns                   loop over ns; `until eof` reads to the end
///       line ns[i]                  one scalar token
///       line sticks[i][..]          rest of the line as a sequence
///   output Out
///     for i in rectangles until eof
///       line rectangles[i]          record of scalars, one token per field
///
/// Other items: `arr[..n]` (exactly n tokens), `s[chars]` (one token as a
/// character sequence), `flag:YES|NO` (boolean token pair). Lines starting
/// with `//` are comments. See docs/grammar.md.
class Layout {
 public:
  struct Step {
    enum class Kind : std::uint8_t { field, var_index, const_index };
    Kind kind = Kind::field;
    std::size_t field = 0;
    std::string var;
    std::int64_t index = 0;
  };
  struct Path {
    std::vector<Step> steps;
    TypeRef type;
    std::string text;
  };
  struct Item {
    enum class Kind : std::uint8_t { scalar, record, length, rest, exact, chars, flag };
    Kind kind = Kind::scalar;
    Path path;
    std::optional<Path> count_path;
    std::int64_t count_const = 0;
    std::string true_token;
    std::string false_token;
  };
  struct Stmt {
    enum class Kind : std::uint8_t { line, loop };
    Kind kind = Kind::line;
    std::vector<Item> items;
    std::string var;
    Path over;
    bool until_eof = false;
    std::vector<Stmt> body;
    int source_line = 0;
  };
  struct Section {
    std::string type_name;
    bool final_newline = true;
    std::vector<Stmt> body;
  };

  /// Parses and type-checks against `signature`. Throws LayoutError.
  static Layout parse(std::string_view text, const TaskSignature& signature);

  /// Throw ConversionError.
  Value read_input(std::string_view raw) const;
  Value read_output(std::string_view raw) const;
  std::string print_input(const Value& input) const;
  std::string print_output(const Value& output) const;

  bool has_output() const { return output_.has_value(); }
  const Section& input_section() const { return input_; }
  const std::optional<Section>& output_section() const { return output_; }
  /// Same layout with the final newline of every section switched.
  Layout with_final_newline(bool on) const;

 private:
  Value read(const Section& section, std::string_view raw) const;
  std::string print(const Section& section, const Value& value) const;

  TaskSignature signature_;
  Section input_;
  std::optional<Section> output_;
};

}  // namespace specfaith
