#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "specfaith/kernel/value.hpp"

namespace specfaith {

enum class Bucket : std::uint8_t { pre_complete, pre_sound, post_complete, post_sound };

inline constexpr std::array<Bucket, 4> kAllBuckets{Bucket::pre_complete, Bucket::pre_sound,
                                                   Bucket::post_complete, Bucket::post_sound};

std::string_view bucket_name(Bucket b);
std::optional<Bucket> bucket_from_name(std::string_view name);
constexpr bool is_pre(Bucket b) { return b == Bucket::pre_complete || b == Bucket::pre_sound; }
constexpr bool is_complete(Bucket b) {
  return b == Bucket::pre_complete || b == Bucket::post_complete;
}

struct Provenance {
  enum class Kind : std::uint8_t { official_test, hack, synthetic };
  Kind kind = Kind::synthetic;
  std::string hack_id;  // only for Kind::hack

  std::string to_string() const;
  /// Inverse of to_string(); nullopt on anything else.
  static std::optional<Provenance> parse(std::string_view text);
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Testcase {
  std::string id;
  Bucket bucket = Bucket::pre_complete;
  std::string raw_input;
  std::optional<std::string> raw_output;  // post buckets only
  Value input;
  std::optional<Value> output;  // post buckets only
  Provenance provenance;
};

enum class Category : std::uint8_t {
  compile_or_syntax_error,
  accept_via_symbolic,
  reject_via_symbolic,
  accept_via_exec,
  reject_via_exec,
  indeterminate_during_exec,
};

inline constexpr std::array<Category, 6> kAllCategories{
    Category::compile_or_syntax_error, Category::accept_via_symbolic,
    Category::reject_via_symbolic,     Category::accept_via_exec,
    Category::reject_via_exec,         Category::indeterminate_during_exec,
};

std::string_view category_name(Category c);

struct Resolution {
  Category category = Category::compile_or_syntax_error;
  /// Compile error text, fault description or symbolic trace summary.
  std::string detail;
};

enum class Verdict : std::uint8_t { pass, fail };

std::string_view verdict_name(Verdict v);

/// Complete buckets pass on accepts, sound buckets on rejects; compile errors
/// and indeterminate results always fail.
Verdict verdict(Category category, Bucket bucket);

}  // namespace specfaith
