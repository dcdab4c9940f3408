#include "specfaith/harness/testcase.hpp"

namespace specfaith {

namespace {
constexpr std::array<std::string_view, 4> kBucketNames{"pre_complete", "pre_sound",
                                                       "post_complete", "post_sound"};
constexpr std::array<std::string_view, 6> kCategoryNames{
    "compile_or_syntax_error", "accept_via_symbolic", "reject_via_symbolic",
    "accept_via_exec",         "reject_via_exec",     "indeterminate_during_exec",
};
}  // namespace

std::string_view bucket_name(Bucket b) { return kBucketNames[static_cast<std::size_t>(b)]; }

std::optional<Bucket> bucket_from_name(std::string_view name) {
  for (Bucket b : kAllBuckets) {
    if (bucket_name(b) == name) return b;
  }
  return std::nullopt;
}

std::string_view category_name(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::string_view verdict_name(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

std::string Provenance::to_string() const {
  switch (kind) {
    case Kind::official_test: return "official_test";
    case Kind::hack: return "hack " + hack_id;
    case Kind::synthetic: break;
  }
  return "synthetic";
}

std::optional<Provenance> Provenance::parse(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }
  if (text == "official_test") return Provenance{Kind::official_test, {}};
  if (text == "synthetic") return Provenance{Kind::synthetic, {}};
  if (text.starts_with("hack ") && text.size() > 5) {
    return Provenance{Kind::hack, std::string(text.substr(5))};
  }
  return std::nullopt;
}

Verdict verdict(Category category, Bucket bucket) {
  const bool accepted =
      category == Category::accept_via_symbolic || category == Category::accept_via_exec;
  const bool rejected =
      category == Category::reject_via_symbolic || category == Category::reject_via_exec;
  if (is_complete(bucket)) return accepted ? Verdict::pass : Verdict::fail;
  return rejected ? Verdict::pass : Verdict::fail;
}

}  // namespace specfaith
