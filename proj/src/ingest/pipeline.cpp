#include "specfaith/ingest/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "specfaith/kernel/errors.hpp"

namespace specfaith {

namespace fs = std::filesystem;

namespace {

/// Uniform integer in [0, bound) by rejection, independent of the
/// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t bucket_seed(std::uint64_t seed, std::size_t salt) {
  return seed ^ ((salt + 1) * 0x9E3779B97F4A7C15ULL);
}

bool canonical_less(const Testcase& a, const Testcase& b) {
  if (a.raw_input != b.raw_input) return a.raw_input < b.raw_input;
  if (a.raw_output != b.raw_output) return a.raw_output < b.raw_output;
  return a.id < b.id;
}

}  // namespace

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::vector<Testcase> cap_bucket(std::vector<Testcase> cases, std::size_t cap, std::uint64_t seed) {
  std::sort(cases.begin(), cases.end(), canonical_less);
  if (cases.size() > cap) {
    std::vector<Testcase> kept;
    for (std::size_t i : sample_indices(cases.size(), cap, seed)) kept.push_back(std::move(cases[i]));
    cases = std::move(kept);
  }
  std::sort(cases.begin(), cases.end(),
            [](const Testcase& a, const Testcase& b) { return a.id < b.id; });
  return cases;
}

std::variant<TaskBundle, RejectedTask> finalize_bundle(TaskBundle header, BucketLists buckets,
                                                       const BucketPolicy& policy) {
  for (Bucket b : kAllBuckets) {
    const auto& list = buckets[static_cast<std::size_t>(b)];
    if (list.size() < policy.min_per_bucket) {
      return RejectedTask{b, list.size(),
                          "bucket " + std::string(bucket_name(b)) + " below minimum " +
                              std::to_string(policy.min_per_bucket) + " (" +
                              std::to_string(list.size()) + " cases)"};
    }
  }
  header.hidden.clear();
  header.visible.clear();
  header.seed = policy.seed.value_or(header.seed);
  const std::uint64_t seed = header.seed;
  for (Bucket b : kAllBuckets) {
    const auto i = static_cast<std::size_t>(b);
    for (auto& t : cap_bucket(std::move(buckets[i]), policy.cap, bucket_seed(seed, i))) {
      t.bucket = b;
      header.hidden.push_back(std::move(t));
    }
  }

  std::vector<const Testcase*> pool;
  for (const auto& t : header.hidden) {
    if (is_complete(t.bucket)) pool.push_back(&t);
  }
  std::vector<const Testcase*> chosen;
  for (std::size_t i : sample_indices(pool.size(), policy.visible_samples, bucket_seed(seed, 99))) {
    chosen.push_back(pool[i]);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Testcase* a, const Testcase* b) {
    return a->bucket != b->bucket ? a->bucket < b->bucket : a->id < b->id;
  });
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    Testcase sample = *chosen[i];
    sample.id = "sample_" + std::to_string(i + 1);
    header.visible.push_back(std::move(sample));
  }
  check_bundle(header);
  return header;
}

std::unique_ptr<ConverterPair> load_converter(const fs::path& ledger_dir, const TaskSignature& signature,
                                              std::string* reference) {
  if (fs::exists(ledger_dir / "layout.convspec")) {
    if (reference) *reference = "layout.convspec";
    try {
      return std::make_unique<LayoutConverter>(
          Layout::parse(read_file(ledger_dir / "layout.convspec"), signature));
    } catch (const LayoutError& e) {
      throw LedgerError(std::string("layout.convspec: ") + e.what());
    }
  }
  if (fs::exists(ledger_dir / "converter.cmd")) {
    std::string cmd = read_file(ledger_dir / "converter.cmd");
    while (!cmd.empty() && (cmd.back() == '\n' || cmd.back() == '\r')) cmd.pop_back();
    if (cmd.empty()) throw LedgerError("converter.cmd is empty");
    if (reference) *reference = "exec:" + cmd;
    return std::make_unique<ExternalConverter>(cmd, signature);
  }
  throw LedgerError("ledger has neither layout.convspec nor converter.cmd");
}

namespace {

std::vector<fs::path> sorted_files(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Pending {
  std::string id;
  RawCase raw;
};

}  // namespace

IngestOutcome ingest_ledger(const fs::path& ledger_dir, const BucketPolicy& policy_in) {
  if (!fs::is_directory(ledger_dir)) throw LedgerError("not a ledger directory: " + ledger_dir.string());
  IngestOutcome outcome{RejectedTask{}, {}, true};
  auto& log = outcome.log;

  if (!fs::exists(ledger_dir / "task.meta")) throw LedgerError("ledger lacks task.meta");
  TaskBundle header;
  try {
    header = parse_task_meta(read_file(ledger_dir / "task.meta"));
  } catch (const BundleError& e) {
    throw LedgerError(e.what());
  }
  if (fs::exists(ledger_dir / "problem_statement.md")) {
    header.problem_statement = read_file(ledger_dir / "problem_statement.md");
  }
  BucketPolicy policy = policy_in;
  auto converter = load_converter(ledger_dir, header.signature, &header.converter);

  FilterRuleset rules;
  if (fs::exists(ledger_dir / "filter_rules.txt")) {
    rules = FilterRuleset::parse(read_file(ledger_dir / "filter_rules.txt"));
  }

  std::array<std::vector<Pending>, 4> routed;
  for (const fs::path& in : sorted_files(ledger_dir / "official", ".in")) {
    const std::string stem = in.stem().string();
    fs::path out = in;
    out.replace_extension(".out");
    if (!fs::exists(out)) throw LedgerError("official test " + stem + " lacks a .out file");
    const Provenance prov{Provenance::Kind::official_test, {}};
    const std::string input = read_file(in);
    routed[0].push_back({"official_" + stem, RawCase{input, std::nullopt, prov, "official " + stem}});
    routed[2].push_back({"official_" + stem, RawCase{input, read_file(out), prov, "official " + stem}});
  }
  for (const fs::path& path : sorted_files(ledger_dir / "hacks", ".record")) {
    HackRecord record;
    try {
      record = parse_hack_record(read_file(path));
    } catch (const MalformedRecord& e) {
      throw MalformedRecord(path.filename().string() + ": " + e.what());
    }
    if (record.truncated()) {
      log.push_back("discard hack_" + record.id + ": truncated (declared length differs from text)");
      continue;
    }
    if (record.validator == HackRecord::Validator::invalid) {
      const Classification c = classify_rejection(record.validator_message, rules);
      if (c.cls == InvalidClass::syntactic) {
        log.push_back("discard hack_" + record.id + ": syntactic (" + record.validator_message + ")");
        continue;
      }
      if (!c.matched) {
        log.push_back("review hack_" + record.id + ": no filter rule matched (" +
                      record.validator_message + "), kept as semantic");
      }
    }
    for (auto& [bucket, raw] : route_hack(record)) {
      std::string id = "hack_" + record.id;
      if (raw.origin.ends_with("(answer)")) id += "_answer";
      routed[static_cast<std::size_t>(bucket)].push_back({std::move(id), std::move(raw)});
    }
  }

  BucketLists buckets;
  for (Bucket b : kAllBuckets) {
    const auto bi = static_cast<std::size_t>(b);
    std::vector<RawCase> raws;
    for (const auto& p : routed[bi]) raws.push_back(p.raw);
    const std::vector<RawCase> kept = dedupe(raws);
    if (kept.size() != raws.size()) {
      log.push_back("dedupe " + std::string(bucket_name(b)) + ": " + std::to_string(raws.size()) +
                    " -> " + std::to_string(kept.size()));
    }
    // Survivors are a subsequence, so walk both lists together to recover ids.
    std::size_t k = 0;
    std::set<std::string> ids;
    for (const auto& p : routed[bi]) {
      if (k >= kept.size() || !(p.raw == kept[k])) continue;
      ++k;
      const std::string where = std::string(bucket_name(b)) + "/" + p.id;
      if (!ids.insert(p.id).second) throw LedgerError("duplicate testcase id " + where);
      const RoundTripResult rt = roundtrip_check(p.raw, *converter);
      log.push_back("roundtrip " + where + ": " + describe(rt));
      const auto* ok = std::get_if<RoundTripOk>(&rt);
      if (!ok) {
        outcome.roundtrip_all_ok = false;
        continue;
      }
      Testcase t;
      t.id = p.id;
      t.bucket = b;
      t.raw_input = p.raw.input;
      t.input = ok->input;
      if (!is_pre(b)) {
        t.raw_output = p.raw.output;
        t.output = ok->output;
      }
      t.provenance = p.raw.provenance;
      buckets[bi].push_back(std::move(t));
    }
  }
  for (Bucket b : kAllBuckets) {
    const auto n = buckets[static_cast<std::size_t>(b)].size();
    if (n > policy.cap) {
      log.push_back("cap " + std::string(bucket_name(b)) + ": " + std::to_string(n) + " -> " +
                    std::to_string(policy.cap) + " (seed " + std::to_string(policy.seed.value_or(header.seed)) + ")");
    }
  }
  outcome.result = finalize_bundle(std::move(header), std::move(buckets), policy);
  if (const auto* rej = std::get_if<RejectedTask>(&outcome.result)) log.push_back("rejected: " + rej->reason);
  return outcome;
}

}  // namespace specfaith
