#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "specfaith/harness/testcase.hpp"
#include "specfaith/ingest/layout.hpp"

namespace specfaith {

/// A testcase as received: bytes are never normalized.
struct RawCase {
  std::string input;
  std::optional<std::string> output;
  Provenance provenance;
  /// Free-form origin note, e.g. "hack 477559 (program output)".
  std::string origin;

  friend bool operator==(const RawCase&, const RawCase&) = default;
};

/// Parser R and printer P for one task. Every method throws
/// ConversionError on failure.
class ConverterPair {
 public:
  virtual ~ConverterPair() = default;
  virtual Value parse_input(std::string_view raw) const = 0;
  virtual Value parse_output(std::string_view raw, const Value& input) const = 0;
  virtual std::string print_input(const Value& input) const = 0;
  virtual std::string print_output(const Value& input, const Value& output) const = 0;
};

class LayoutConverter : public ConverterPair {
 public:
  explicit LayoutConverter(Layout layout) : layout_(std::move(layout)) {}
  Value parse_input(std::string_view raw) const override { return layout_.read_input(raw); }
  Value parse_output(std::string_view raw, const Value&) const override {
    return layout_.read_output(raw);
  }
  std::string print_input(const Value& input) const override { return layout_.print_input(input); }
  std::string print_output(const Value&, const Value& output) const override {
    return layout_.print_output(output);
  }
  const Layout& layout() const { return layout_; }

 private:
  Layout layout_;
};

/// Runs `<command> <mode>` through /bin/sh for every conversion. Modes are
/// parse-input, parse-output, print-input and print-output; parse modes
/// read raw text on stdin and write a value literal, print modes the
/// reverse. Output modes also get the input literal in the
/// SPECFAITH_INPUT_LITERAL environment variable.
class ExternalConverter : public ConverterPair {
 public:
  ExternalConverter(std::string command, TaskSignature signature)
      : command_(std::move(command)), signature_(std::move(signature)) {}
  Value parse_input(std::string_view raw) const override;
  Value parse_output(std::string_view raw, const Value& input) const override;
  std::string print_input(const Value& input) const override;
  std::string print_output(const Value& input, const Value& output) const override;

 private:
  std::string run(std::string_view mode, std::string_view stdin_text,
                  const std::optional<Value>& input) const;
  std::string command_;
  TaskSignature signature_;
};

struct RoundTripOk {
  Value input;
  std::optional<Value> output;
};

struct Mismatch {
  /// "input" or "output".
  std::string part;
  std::size_t offset = 0;
  std::string expected;
  std::string actual;
};

struct ParseFailure {
  std::string detail;
};

using RoundTripResult = std::variant<RoundTripOk, Mismatch, ParseFailure>;

/// Index of the first differing byte; the shorter length when one text is
/// a prefix of the other; nullopt when equal.
std::optional<std::size_t> first_difference(std::string_view a, std::string_view b);

/// Parses, reprints and compares byte for byte: P(R(t)) == t.
RoundTripResult roundtrip_check(const RawCase& raw, const ConverterPair& pair);

std::string describe(const RoundTripResult& result);

}  // namespace specfaith
