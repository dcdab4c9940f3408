#pragma once

#include <stdexcept>
#include <string>

namespace specfaith {

/// 1-based line/column position in a source or literal text.
struct SourceSpan {
  int line = 1;
  int column = 1;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Base class for every diagnostic raised while building a module or a value.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string kind, const std::string& message, SourceSpan span)
      : std::runtime_error(kind + " at " + span.to_string() + ": " + message),
        kind_(std::move(kind)),
        message_(message),
        span_(span) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  SourceSpan span() const noexcept { return span_; }

 private:
  std::string kind_;
  std::string message_;
  SourceSpan span_;
};

class SyntaxError : public SpecError {
 public:
  SyntaxError(const std::string& message, SourceSpan span, std::string expected = {})
      : SpecError("SyntaxError",
                  expected.empty() ? message : message + " (expected " + expected + ")", span),
        expected_(std::move(expected)) {}

  /// Hint naming the token class the parser was looking for; may be empty.
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::string expected_;
};

class DuplicateDefinition : public SpecError {
 public:
  DuplicateDefinition(const std::string& name, SourceSpan span)
      : SpecError("DuplicateDefinition", "`" + name + "` is defined more than once", span),
        name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class TypeError : public SpecError {
 public:
  TypeError(const std::string& message, SourceSpan span) : SpecError("TypeError", message, span) {}
};

/// pre_spec / post_spec missing or mis-signed against the task signature.
class ShapeError : public SpecError {
 public:
  ShapeError(const std::string& message, SourceSpan span) : SpecError("ShapeError", message, span) {}
};

class LiteralError : public SpecError {
 public:
  LiteralError(const std::string& message, SourceSpan span)
      : SpecError("LiteralError", message, span) {}
};

}  // namespace specfaith
