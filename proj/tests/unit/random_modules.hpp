#pragma once

// Random well-typed modules over the binary-search signature, used to
// cross-check the symbolic resolver against execution.

#include <random>
#include <string>

namespace specfaith::testing {

class ModuleGen {
 public:
  explicit ModuleGen(std::uint64_t seed) : rng_(seed) {}

  static const char* helpers() {
    return R"(
spec fn twice_minus_one(x: i64) -> i64 { x * 2 - 1 }
spec fn within(x: i64, lo: i64, hi: i64) -> bool { lo <= x && x <= hi }
spec fn count_down(x: i64) -> bool decreases x { if x <= 0 { true } else { count_down(x - 1) } }
)";
  }

  std::string module() {
    return std::string(helpers()) + "\nspec fn pre_spec(in1: In1) -> bool { " + boolean(0, false) +
           " }\nspec fn post_spec(in1: In1, out: Out) -> bool { " + boolean(0, true) + " }\n";
  }

  std::string input_literal() {
    std::string arr;
    const int len = roll(0, 6);
    for (int i = 0; i < len; ++i) arr += (i ? ", " : "") + std::to_string(roll(-5, 5));
    const int n = roll(0, 4) == 0 ? roll(0, 8) : len;
    return "In1 { n: " + std::to_string(n) + ", arr: seq[" + arr + "], k: " + big_or_small() + " }";
  }

  std::string output_literal() { return "Out { pos: " + std::to_string(roll(-2, 6)) + " }"; }

 private:
  int roll(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::string big_or_small() {
    switch (roll(0, 9)) {
      case 0: return "9223372036854775807";
      case 1: return "-9223372036854775808";
      case 2: return "3037000500";
      default: return std::to_string(roll(-5, 5));
    }
  }

  std::string integer(int depth, bool post) {
    const int limit = depth >= 3 ? 5 : 11;
    switch (roll(0, limit)) {
      case 0: return std::to_string(roll(-5, 5));
      case 1: return "in1.k";
      case 2: return "(in1.n as i64)";
      case 3: return "(in1.arr.len() as i64)";
      case 4: return post ? "out.pos" : "in1.k";
      case 5: return roll(0, 3) ? std::to_string(roll(-3, 3)) : big_or_small();
      case 6: return "in1.arr[" + std::to_string(roll(-1, 4)) + "]";
      case 7: {
        static const char* ops[] = {"+", "-", "*", "/", "%"};
        return "(" + integer(depth + 1, post) + " " + ops[roll(0, 4)] + " " + integer(depth + 1, post) + ")";
      }
      case 8: return "twice_minus_one(" + integer(depth + 1, post) + ")";
      case 9:
        return "(if " + boolean(depth + 1, post) + " { " + integer(depth + 1, post) + " } else { " +
               integer(depth + 1, post) + " })";
      case 10: return "(-" + integer(depth + 1, post) + ")";
      default: return "in1.arr.subrange(0, " + std::to_string(roll(0, 3)) + ").len() as i64";
    }
  }

  std::string boolean(int depth, bool post) {
    const int limit = depth >= 3 ? 2 : 12;
    switch (roll(0, limit)) {
      case 0: return roll(0, 1) ? "true" : "false";
      case 1:
      case 2: {
        static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
        return "(" + integer(depth + 1, post) + " " + ops[roll(0, 5)] + " " + integer(depth + 1, post) + ")";
      }
      case 3: return "(" + boolean(depth + 1, post) + " && " + boolean(depth + 1, post) + ")";
      case 4: return "(" + boolean(depth + 1, post) + " || " + boolean(depth + 1, post) + ")";
      case 5: return "(" + boolean(depth + 1, post) + " ==> " + boolean(depth + 1, post) + ")";
      case 6: return "!" + boolean(depth + 1, post);
      case 7: return "in1.arr.contains(" + integer(depth + 1, post) + ")";
      case 8:
        return "within(" + integer(depth + 1, post) + ", " + integer(depth + 1, post) + ", " +
               integer(depth + 1, post) + ")";
      case 9: return "count_down(" + std::to_string(roll(-2, 30)) + ")";
      case 10:
        return "(forall |i: i64| 0 <= i < in1.arr.len() ==> in1.arr[i] <= " + integer(depth + 1, post) + ")";
      case 11: return "(in1.arr == in1.arr.subrange(0, in1.arr.len() as int))";
      default: return "(in1.arr.to_multiset().count(" + integer(depth + 1, post) + ") >= 1)";
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace specfaith::testing
