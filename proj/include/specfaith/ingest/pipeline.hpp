#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specfaith/harness/bundle.hpp"
#include "specfaith/ingest/hacks.hpp"

namespace specfaith {

struct BucketPolicy {
  std::size_t min_per_bucket = 5;
  std::size_t cap = 200;
  std::size_t visible_samples = 3;
  /// Unset: use the seed recorded in the task header.
  std::optional<std::uint64_t> seed;
};

struct RejectedTask {
  Bucket bucket = Bucket::pre_complete;
  std::size_t count = 0;
  std::string reason;
};

using BucketLists = std::array<std::vector<Testcase>, 4>;

/// k distinct indices of [0, n), uniformly chosen by a partial
/// Fisher-Yates shuffle driven by mt19937_64(seed). The result depends only
/// on (n, k, seed).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Caps a bucket at `cap` cases. Cases are put in canonical (raw input, raw
/// output, id) order first, so the survivors depend only on the multiset
/// of cases and the seed. Survivors come back sorted by id.
std::vector<Testcase> cap_bucket(std::vector<Testcase> cases, std::size_t cap, std::uint64_t seed);

/// Applies the size policy and picks visible samples. `header` supplies
/// task id, signature, statement and converter; its testcase lists are
/// replaced. Visible samples are copies of completeness cases, renamed
/// sample_1, sample_2, ...
std::variant<TaskBundle, RejectedTask> finalize_bundle(TaskBundle header, BucketLists buckets,
                                                       const BucketPolicy& policy);

class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestOutcome {
  std::variant<TaskBundle, RejectedTask> result;
  /// One line per pipeline event: round-trip results, discards, reviews.
  std::vector<std::string> log;
  bool roundtrip_all_ok = true;
};

/// Loads the converter named by a ledger: layout.convspec, or converter.cmd
/// holding an external command line.
std::unique_ptr<ConverterPair> load_converter(const std::filesystem::path& ledger_dir,
                                              const TaskSignature& signature, std::string* reference);

/// Runs the whole pipeline over a ledger directory:
///   task.meta, problem_statement.md, official/<id>.in|.out,
///   hacks/<id>.record, filter_rules.txt, layout.convspec | converter.cmd
/// Throws LedgerError (or MalformedRecord) on malformed input.
IngestOutcome ingest_ledger(const std::filesystem::path& ledger_dir, const BucketPolicy& policy);

}  // namespace specfaith
