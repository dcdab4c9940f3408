#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfaith/harness/testcase.hpp"
#include "specfaith/kernel/typecheck.hpp"

namespace specfaith {

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A task directory in memory.
///
/// On disk:
///   task.meta                      key: value header, `---`, type declarations
///   problem_statement.md
///   symbolic_tests/<bucket>/<id>/  hidden suite
///   samples/<bucket>/<id>/         visible samples (completeness buckets only)
/// with each testcase directory holding test.in, out.input_defn, provenance
/// and, for post buckets, test.out and out.gt_output_defn.
struct TaskBundle {
  std::string task_id;
  TaskSignature signature;
  /// Declarations as written in task.meta.
  std::string signature_source;
  std::string problem_statement;
  std::vector<Testcase> visible;
  std::vector<Testcase> hidden;
  std::uint64_t seed = 0;
  /// Reference to the converter that produced the raw texts, e.g. a
  /// layout file name; informational.
  std::string converter;

  std::size_t hidden_count(Bucket b) const;
};

/// Reads and checks a bundle: value literals must parse at the signature,
/// post testcases carry outputs and pre testcases do not, ids are unique and
/// visible samples come from completeness buckets only.
TaskBundle load_bundle(const std::filesystem::path& dir);

/// Parses task.meta text into a bundle with no testcases.
TaskBundle parse_task_meta(const std::string& meta);

/// Writes `bundle` under `dir`, replacing the testcase trees.
void write_bundle(const TaskBundle& bundle, const std::filesystem::path& dir);

/// Checks the in-memory invariants enforced by load_bundle.
void check_bundle(const TaskBundle& bundle);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace specfaith
