#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "specfaith/harness/bundle.hpp"
#include "specfaith/kernel/literal.hpp"
#include "specfaith/kernel/typecheck.hpp"

namespace specfaith::testing {

inline std::filesystem::path fixtures() { return SPECFAITH_FIXTURES; }

inline const TaskSignature& binary_search_signature() {
  static const TaskSignature sig = TaskSignature::from_source(R"(
pub struct In1 { pub n: usize, pub arr: Seq<i64>, pub k: i64 }
pub struct Out { pub pos: i64 }
)");
  return sig;
}

inline Value input_literal(const TaskSignature& sig, const std::string& text) {
  return parse_value_literal(text, sig.input(), sig.lookup());
}

inline Value output_literal(const TaskSignature& sig, const std::string& text) {
  return parse_value_literal(text, sig.output(), sig.lookup());
}

/// Module with the given pre_spec and post_spec bodies plus extra items.
inline std::string module_source(const std::string& pre, const std::string& post = "true",
                                 const std::string& extra = "") {
  return extra + "\nspec fn pre_spec(in1: In1) -> bool { " + pre +
         " }\nspec fn post_spec(in1: In1, out: Out) -> bool { " + post + " }\n";
}

inline TypedModulePtr compile_bs(const std::string& pre, const std::string& post = "true",
                                 const std::string& extra = "") {
  return compile_module(module_source(pre, post, extra), binary_search_signature());
}

inline std::string fixture_spec(const std::string& task, const std::string& name) {
  return read_file(fixtures() / task / "specs" / (name + ".rs"));
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline TempDir::TempDir() {
  static int counter = 0;
  path_ = std::filesystem::temp_directory_path() /
          ("specfaith-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

inline TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace specfaith::testing
