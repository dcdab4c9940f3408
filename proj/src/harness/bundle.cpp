#include "specfaith/harness/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "specfaith/kernel/errors.hpp"
#include "specfaith/kernel/literal.hpp"

namespace specfaith {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t TaskBundle::hidden_count(Bucket b) const {
  return static_cast<std::size_t>(
      std::count_if(hidden.begin(), hidden.end(), [b](const Testcase& t) { return t.bucket == b; }));
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Value read_literal(const fs::path& path, const TypeRef& type, const TaskSignature& sig) {
  const std::string text = read_file(path);
  try {
    return parse_value_literal(text, type, sig.lookup());
  } catch (const SpecError& e) {
    throw BundleError(path.string() + ": " + e.what());
  }
}

std::vector<fs::path> sorted_dirs(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Testcase read_testcase(const fs::path& dir, Bucket bucket, const TaskSignature& sig) {
  Testcase t;
  t.id = dir.filename().string();
  t.bucket = bucket;
  t.raw_input = read_file(dir / "test.in");
  t.input = read_literal(dir / "out.input_defn", sig.input(), sig);
  const bool has_out = fs::exists(dir / "test.out") || fs::exists(dir / "out.gt_output_defn");
  if (is_pre(bucket)) {
    if (has_out) throw BundleError(dir.string() + ": pre bucket testcase carries an output");
  } else {
    t.raw_output = read_file(dir / "test.out");
    t.output = read_literal(dir / "out.gt_output_defn", sig.output(), sig);
  }
  if (fs::exists(dir / "provenance")) {
    auto p = Provenance::parse(read_file(dir / "provenance"));
    if (!p) throw BundleError(dir.string() + ": unrecognized provenance");
    t.provenance = *p;
  }
  return t;
}

void read_suite(const fs::path& root, const TaskSignature& sig, std::vector<Testcase>& out) {
  if (!fs::is_directory(root)) return;
  for (const fs::path& bdir : sorted_dirs(root)) {
    const auto bucket = bucket_from_name(bdir.filename().string());
    if (!bucket) throw BundleError("unknown bucket directory " + bdir.string());
    for (const fs::path& tdir : sorted_dirs(bdir)) out.push_back(read_testcase(tdir, *bucket, sig));
  }
}

void write_testcase(const Testcase& t, const fs::path& root) {
  const fs::path dir = root / bucket_name(t.bucket) / t.id;
  write_file(dir / "test.in", t.raw_input);
  write_file(dir / "out.input_defn", print_value_literal(t.input) + "\n");
  if (t.output) {
    write_file(dir / "test.out", t.raw_output.value_or(""));
    write_file(dir / "out.gt_output_defn", print_value_literal(*t.output) + "\n");
  }
  write_file(dir / "provenance", t.provenance.to_string() + "\n");
}

}  // namespace

void check_bundle(const TaskBundle& bundle) {
  std::set<std::string> hidden_ids;
  auto check_case = [&](const Testcase& t, std::string_view where) {
    if (t.id.empty()) throw BundleError(std::string(where) + " testcase with an empty id");
    if (is_pre(t.bucket) == t.output.has_value()) {
      throw BundleError("testcase " + t.id + ": " +
                        (is_pre(t.bucket) ? "pre bucket carries an output"
                                          : "post bucket lacks an output"));
    }
    if (!well_typed(t.input, bundle.signature.input(), bundle.signature.lookup()) ||
        (t.output && !well_typed(*t.output, bundle.signature.output(), bundle.signature.lookup()))) {
      throw BundleError("testcase " + t.id + ": value does not match the task signature");
    }
  };
  for (const auto& t : bundle.hidden) {
    check_case(t, "hidden");
    if (!hidden_ids.insert(std::string(bucket_name(t.bucket)) + "/" + t.id).second) {
      throw BundleError("duplicate testcase id " + t.id + " in " + std::string(bucket_name(t.bucket)));
    }
  }
  std::set<std::string> visible_ids;
  for (const auto& t : bundle.visible) {
    check_case(t, "visible");
    if (!is_complete(t.bucket)) {
      throw BundleError("visible sample " + t.id + " is not from a completeness bucket");
    }
    if (!visible_ids.insert(t.id).second) throw BundleError("duplicate visible sample id " + t.id);
    for (Bucket b : kAllBuckets) {
      if (hidden_ids.contains(std::string(bucket_name(b)) + "/" + t.id)) {
        throw BundleError("visible sample id " + t.id + " also appears in the hidden suite");
      }
    }
  }
}

TaskBundle parse_task_meta(const std::string& meta) {
  TaskBundle bundle;
  std::string input_type = "In1";
  std::string output_type = "Out";
  std::istringstream lines(meta);
  std::string line;
  bool saw_separator = false;
  std::size_t consumed = 0;
  while (std::getline(lines, line)) {
    consumed += line.size() + 1;
    if (trim(line) == "---") {
      saw_separator = true;
      break;
    }
    if (trim(line).empty() || trim(line).starts_with('#')) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw BundleError("task.meta: malformed line `" + line + "`");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "task_id") {
      bundle.task_id = value;
    } else if (key == "input_type") {
      input_type = value;
    } else if (key == "output_type") {
      output_type = value;
    } else if (key == "seed") {
      try {
        bundle.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw BundleError("task.meta: bad seed `" + value + "`");
      }
    } else if (key == "converter") {
      bundle.converter = value;
    } else {
      throw BundleError("task.meta: unknown key `" + key + "`");
    }
  }
  if (!saw_separator) throw BundleError("task.meta: missing `---` before type declarations");
  if (bundle.task_id.empty()) throw BundleError("task.meta: missing task_id");
  bundle.signature_source = meta.substr(std::min(consumed, meta.size()));
  try {
    bundle.signature = TaskSignature::from_source(bundle.signature_source, input_type, output_type);
  } catch (const SpecError& e) {
    throw BundleError(std::string("task.meta: ") + e.what());
  }
  return bundle;
}

TaskBundle load_bundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw BundleError("not a task directory: " + dir.string());
  TaskBundle bundle = parse_task_meta(read_file(dir / "task.meta"));
  if (fs::exists(dir / "problem_statement.md")) {
    bundle.problem_statement = read_file(dir / "problem_statement.md");
  }
  read_suite(dir / "symbolic_tests", bundle.signature, bundle.hidden);
  read_suite(dir / "samples", bundle.signature, bundle.visible);
  check_bundle(bundle);
  return bundle;
}

void write_bundle(const TaskBundle& bundle, const fs::path& dir) {
  check_bundle(bundle);
  std::ostringstream meta;
  meta << "task_id: " << bundle.task_id << "\n"
       << "input_type: " << bundle.signature.input_type << "\n"
       << "output_type: " << bundle.signature.output_type << "\n"
       << "seed: " << bundle.seed << "\n";
  if (!bundle.converter.empty()) meta << "converter: " << bundle.converter << "\n";
  meta << "---\n";
  if (!bundle.signature_source.empty()) {
    meta << bundle.signature_source;
  } else {
    for (const auto& decl : bundle.signature.types) meta << decl->to_source() << "\n";
  }
  fs::create_directories(dir);
  write_file(dir / "task.meta", meta.str());
  write_file(dir / "problem_statement.md", bundle.problem_statement);
  fs::remove_all(dir / "symbolic_tests");
  fs::remove_all(dir / "samples");
  for (const auto& t : bundle.hidden) write_testcase(t, dir / "symbolic_tests");
  for (const auto& t : bundle.visible) write_testcase(t, dir / "samples");
}

}  // namespace specfaith
