#include "specfaith/ingest/converter.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "specfaith/harness/bundle.hpp"
#include "specfaith/kernel/errors.hpp"
#include "specfaith/kernel/literal.hpp"

extern char** environ;

namespace specfaith {

namespace fs = std::filesystem;

namespace {

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "specfaith-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw ConversionError("cannot create a temporary directory");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

std::string ExternalConverter::run(std::string_view mode, std::string_view stdin_text,
                                   const std::optional<Value>& input) const {
  TempDir tmp;
  const fs::path in_path = tmp.path() / "stdin";
  const fs::path out_path = tmp.path() / "stdout";
  const fs::path err_path = tmp.path() / "stderr";
  write_file(in_path, stdin_text);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 0, in_path.c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 1, out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, 2, err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);

  std::vector<std::string> env_strings;
  for (char** e = environ; *e; ++e) {
    if (!std::string_view(*e).starts_with("SPECFAITH_INPUT_LITERAL=")) env_strings.emplace_back(*e);
  }
  if (input) env_strings.push_back("SPECFAITH_INPUT_LITERAL=" + print_value_literal(*input));
  std::vector<char*> envp;
  for (auto& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::string script = command_ + " " + std::string(mode);
  std::string sh = "/bin/sh";
  std::string dash_c = "-c";
  char* argv[] = {sh.data(), dash_c.data(), script.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, envp.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw ConversionError("cannot start converter `" + command_ + "`");
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw ConversionError("waiting for converter failed");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string err = fs::exists(err_path) ? read_file(err_path) : std::string();
    throw ConversionError("converter `" + command_ + " " + std::string(mode) + "` failed" +
                          (err.empty() ? std::string() : ": " + err));
  }
  return read_file(out_path);
}

Value ExternalConverter::parse_input(std::string_view raw) const {
  try {
    return parse_value_literal(run("parse-input", raw, std::nullopt), signature_.input(),
                               signature_.lookup());
  } catch (const SpecError& e) {
    throw ConversionError(std::string("converter produced a bad literal: ") + e.what());
  }
}

Value ExternalConverter::parse_output(std::string_view raw, const Value& input) const {
  try {
    return parse_value_literal(run("parse-output", raw, input), signature_.output(),
                               signature_.lookup());
  } catch (const SpecError& e) {
    throw ConversionError(std::string("converter produced a bad literal: ") + e.what());
  }
}

std::string ExternalConverter::print_input(const Value& input) const {
  return run("print-input", print_value_literal(input), std::nullopt);
}

std::string ExternalConverter::print_output(const Value& input, const Value& output) const {
  return run("print-output", print_value_literal(output), input);
}

std::optional<std::size_t> first_difference(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  if (a.size() != b.size()) return n;
  return std::nullopt;
}

RoundTripResult roundtrip_check(const RawCase& raw, const ConverterPair& pair) {
  RoundTripOk ok;
  try {
    ok.input = pair.parse_input(raw.input);
    if (raw.output) ok.output = pair.parse_output(*raw.output, ok.input);
  } catch (const ConversionError& e) {
    return ParseFailure{e.what()};
  }
  try {
    const std::string input = pair.print_input(ok.input);
    if (auto at = first_difference(raw.input, input)) return Mismatch{"input", *at, raw.input, input};
    if (raw.output) {
      const std::string output = pair.print_output(ok.input, *ok.output);
      if (auto at = first_difference(*raw.output, output)) {
        return Mismatch{"output", *at, *raw.output, output};
      }
    }
  } catch (const ConversionError& e) {
    return ParseFailure{std::string("printer failed: ") + e.what()};
  }
  return ok;
}

namespace {

std::string excerpt(std::string_view s, std::size_t at) {
  const std::size_t from = at > 10 ? at - 10 : 0;
  std::string out;
  for (char c : s.substr(from, 20)) {
    if (c == '\n') {
      out += "\\n";
    } else if (c == '\r') {
      out += "\\r";
    } else {
      out += c;
    }
  }
  return "\"" + out + "\"";
}

}  // namespace

std::string describe(const RoundTripResult& result) {
  if (std::holds_alternative<RoundTripOk>(result)) return "ok";
  if (const auto* f = std::get_if<ParseFailure>(&result)) return "parse failure: " + f->detail;
  const auto& m = std::get<Mismatch>(result);
  std::ostringstream out;
  out << "mismatch in " << m.part << " at byte " << m.offset << ": expected "
      << excerpt(m.expected, m.offset) << ", reprinted " << excerpt(m.actual, m.offset);
  return out.str();
}

}  // namespace specfaith
