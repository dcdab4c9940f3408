#pragma once

#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specfaith/ingest/converter.hpp"

namespace specfaith {

class MalformedRecord : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One contest hack with its validator and checker verdicts.
struct HackRecord {
  enum class Validator : std::uint8_t { valid, invalid };
  enum class Checker : std::uint8_t { accepted, rejected };

  std::string id;
  std::string input;
  Validator validator = Validator::valid;
  std::string validator_message;  // invalid only
  std::optional<std::string> program_output;
  std::optional<Checker> checker;
  std::optional<std::string> answer;  // ground truth, when known
  /// Byte lengths announced by the source; a mismatch marks truncation.
  std::optional<std::size_t> input_length;
  std::optional<std::size_t> output_length;
  std::optional<std::size_t> answer_length;

  /// Throws MalformedRecord when the verdict fields are inconsistent.
  void validate() const;
  /// True when a declared length disagrees with the text actually present.
  bool truncated() const;
};

/// Reads the `.record` format:
///
///   id: 477559
///   validator: valid            (or: invalid)
///   validator_message: ...      (invalid only)
///   checker: rejected           (or: accepted; valid only)
///   input_length: 24            (optional, also output_length, answer_length)
///   input <<EOF                 heredoc; every body line ends in a newline
///   ...
///   EOF
///   program_output <<EOF noeol  `noeol` drops the final newline
///   ...
///   EOF
///   answer <<EOF ... EOF        (optional)
///
/// Throws MalformedRecord.
HackRecord parse_hack_record(std::string_view text);
std::string format_hack_record(const HackRecord& record);

/// Bucket assignments for one hack: invalid -> pre_sound; valid -> input to
/// pre_complete plus (input, program output) to post_sound or
/// post_complete by checker verdict; a ground-truth answer adds
/// (input, answer) to post_complete.
std::vector<std::pair<Bucket, RawCase>> route_hack(const HackRecord& record);

enum class InvalidClass : std::uint8_t { syntactic, semantic };
std::string_view invalid_class_name(InvalidClass c);

struct FilterRule {
  std::string pattern;
  std::regex regex;
  InvalidClass cls = InvalidClass::semantic;
};

/// Ordered, first match wins. Text format, one rule per line:
///   syntactic <ECMAScript regex>
///   semantic  <ECMAScript regex>
///   default   semantic|syntactic
/// Matching is case-insensitive; `#` starts a comment line.
struct FilterRuleset {
  std::vector<FilterRule> rules;
  InvalidClass default_class = InvalidClass::semantic;

  /// Throws MalformedRecord on a bad line or regex.
  static FilterRuleset parse(std::string_view text);
};

struct Classification {
  InvalidClass cls = InvalidClass::semantic;
  /// False when the default applied; such cases deserve manual review.
  bool matched = false;
  std::string rule;
};

Classification classify_rejection(std::string_view message, const FilterRuleset& rules);

/// Keeps the first case per byte-identical (input, output) pair, in order.
std::vector<RawCase> dedupe(const std::vector<RawCase>& cases);

}  // namespace specfaith
