#pragma once

// Naive reference semantics for the container builtins, written against
// plain standard containers so they share no code with the interpreter.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "specfaith/exec/fault.hpp"
#include "specfaith/kernel/value.hpp"

namespace specfaith::oracle {

using I = std::int64_t;
using VecI = std::vector<I>;
using SetI = std::set<I>;
using MapI = std::map<I, I>;
using BagI = std::map<I, I>;  // element -> count, counts >= 1

inline Value v(I x) { return Value::integer(x); }
inline Value v(bool b) { return Value::boolean(b); }
inline Value vseq(const VecI& xs) {
  SeqData d;
  for (I x : xs) d.push_back(v(x));
  return Value::seq(d);
}
inline Value vset(const SetI& xs) {
  std::vector<Value> d;
  for (I x : xs) d.push_back(v(x));
  return Value::set(d);
}
inline Value vmap(const MapI& m) {
  MapData d;
  for (auto [k, x] : m) d.emplace_back(v(k), v(x));
  return Value::map(d);
}
inline Value vbag(const BagI& m) {
  MultisetData d;
  for (auto [k, c] : m) d.emplace_back(v(k), c);
  return Value::multiset(d);
}
inline Value vopt(std::optional<I> x) { return x ? Value::some(v(*x)) : Value::none(); }
inline Value vstr(const std::u32string& s) { return Value::string(s); }

/// Expected outcome: a value, or a fault of the given kind.
struct Expect {
  std::optional<Value> value;
  FaultKind fault = FaultKind::out_of_bounds_index;
  static Expect ok(Value x) { return {std::move(x), {}}; }
  static Expect err(FaultKind k) { return {std::nullopt, k}; }
};

struct Case {
  Value receiver;
  std::vector<Value> args;
  Expect expect;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  I num(I lo, I hi) { return std::uniform_int_distribution<I>(lo, hi)(rng_); }
  I elem() { return num(-4, 4); }
  VecI vec(int max_len = 8) {
    VecI out(static_cast<std::size_t>(num(0, max_len)));
    for (auto& x : out) x = elem();
    return out;
  }
  SetI set() {
    SetI out;
    for (I x : vec()) out.insert(x);
    return out;
  }
  MapI map() {
    MapI out;
    for (I x : vec()) out[x] = num(-100, 100);
    return out;
  }
  BagI bag() {
    BagI out;
    for (I x : vec()) out[x] += num(1, 3);
    return out;
  }
  std::u32string str() {
    std::u32string s;
    for (I i = num(0, 6); i > 0; --i) s.push_back(static_cast<char32_t>(U'a' + num(0, 3)));
    return s;
  }
  std::optional<I> opt() { return num(0, 2) ? std::optional<I>(elem()) : std::nullopt; }

 private:
  std::mt19937_64 rng_;
};

inline bool in_bounds(I i, std::size_t n) { return i >= 0 && static_cast<std::size_t>(i) < n; }

inline VecI slice(const VecI& s, std::size_t lo, std::size_t hi) {
  VecI out;
  for (std::size_t i = lo; i < hi; ++i) out.push_back(s[i]);
  return out;
}

/// One generator per builtin table name.
inline std::map<std::string, std::function<Case(Gen&)>> generators() {
  using F = FaultKind;
  std::map<std::string, std::function<Case(Gen&)>> g;
  g["seq.len"] = [](Gen& r) {
    VecI s = r.vec();
    return Case{vseq(s), {}, Expect::ok(v(static_cast<I>(s.size())))};
  };
  g["seq.index"] = [](Gen& r) {
    VecI s = r.vec();
    I i = r.num(-2, 9);
    return Case{vseq(s), {v(i)}, in_bounds(i, s.size()) ? Expect::ok(v(s[i])) : Expect::err(F::out_of_bounds_index)};
  };
  g["seq.subrange"] = [](Gen& r) {
    VecI s = r.vec();
    I lo = r.num(-1, 9), hi = r.num(-1, 9);
    const bool ok = 0 <= lo && lo <= hi && hi <= static_cast<I>(s.size());
    return Case{vseq(s), {v(lo), v(hi)}, ok ? Expect::ok(vseq(slice(s, lo, hi))) : Expect::err(F::out_of_bounds_index)};
  };
  g["seq.add"] = [](Gen& r) {
    VecI a = r.vec(), b = r.vec(), c = a;
    for (I x : b) c.push_back(x);
    return Case{vseq(a), {vseq(b)}, Expect::ok(vseq(c))};
  };
  g["seq.push"] = [](Gen& r) {
    VecI a = r.vec();
    I x = r.elem();
    VecI c = a;
    c.push_back(x);
    return Case{vseq(a), {v(x)}, Expect::ok(vseq(c))};
  };
  g["seq.update"] = [](Gen& r) {
    VecI a = r.vec();
    I i = r.num(-2, 9), x = r.elem();
    if (!in_bounds(i, a.size())) return Case{vseq(a), {v(i), v(x)}, Expect::err(F::out_of_bounds_index)};
    VecI c = a;
    c[i] = x;
    return Case{vseq(a), {v(i), v(x)}, Expect::ok(vseq(c))};
  };
  g["seq.to_multiset"] = [](Gen& r) {
    VecI a = r.vec();
    BagI b;
    for (I x : a) b[x] += 1;
    return Case{vseq(a), {}, Expect::ok(vbag(b))};
  };
  g["seq.drop_first"] = [](Gen& r) {
    VecI a = r.vec();
    return Case{vseq(a), {}, a.empty() ? Expect::err(F::out_of_bounds_index) : Expect::ok(vseq(slice(a, 1, a.size())))};
  };
  g["seq.drop_last"] = [](Gen& r) {
    VecI a = r.vec();
    return Case{vseq(a), {}, a.empty() ? Expect::err(F::out_of_bounds_index) : Expect::ok(vseq(slice(a, 0, a.size() - 1)))};
  };
  g["seq.take"] = [](Gen& r) {
    VecI a = r.vec();
    I n = r.num(-1, 9);
    const bool ok = n >= 0 && n <= static_cast<I>(a.size());
    return Case{vseq(a), {v(n)}, ok ? Expect::ok(vseq(slice(a, 0, n))) : Expect::err(F::out_of_bounds_index)};
  };
  g["seq.skip"] = [](Gen& r) {
    VecI a = r.vec();
    I n = r.num(-1, 9);
    const bool ok = n >= 0 && n <= static_cast<I>(a.size());
    return Case{vseq(a), {v(n)}, ok ? Expect::ok(vseq(slice(a, n, a.size()))) : Expect::err(F::out_of_bounds_index)};
  };
  g["seq.first"] = [](Gen& r) {
    VecI a = r.vec();
    return Case{vseq(a), {}, a.empty() ? Expect::err(F::out_of_bounds_index) : Expect::ok(v(a[0]))};
  };
  g["seq.last"] = [](Gen& r) {
    VecI a = r.vec();
    return Case{vseq(a), {}, a.empty() ? Expect::err(F::out_of_bounds_index) : Expect::ok(v(a[a.size() - 1]))};
  };
  auto prefix = [](const VecI& a, const VecI& b) {
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return false;
    }
    return true;
  };
  g["seq.is_prefix_of"] = [prefix](Gen& r) {
    VecI b = r.vec();
    VecI a = r.num(0, 1) ? slice(b, 0, static_cast<std::size_t>(r.num(0, static_cast<I>(b.size())))) : r.vec();
    return Case{vseq(a), {vseq(b)}, Expect::ok(v(prefix(a, b)))};
  };
  g["seq.is_suffix_of"] = [prefix](Gen& r) {
    VecI b = r.vec();
    VecI a = r.num(0, 1) ? slice(b, static_cast<std::size_t>(r.num(0, static_cast<I>(b.size()))), b.size()) : r.vec();
    VecI ra(a.rbegin(), a.rend()), rb(b.rbegin(), b.rend());
    return Case{vseq(a), {vseq(b)}, Expect::ok(v(prefix(ra, rb)))};
  };
  g["seq.contains"] = [](Gen& r) {
    VecI a = r.vec();
    I x = r.elem();
    bool found = false;
    for (I y : a) found = found || y == x;
    return Case{vseq(a), {v(x)}, Expect::ok(v(found))};
  };
  g["seq.index_of"] = [](Gen& r) {
    VecI a = r.vec();
    I x = r.elem();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == x) return Case{vseq(a), {v(x)}, Expect::ok(v(static_cast<I>(i)))};
    }
    return Case{vseq(a), {v(x)}, Expect::err(F::out_of_bounds_index)};
  };
  g["seq.index_of_first"] = [](Gen& r) {
    VecI a = r.vec();
    I x = r.elem();
    std::optional<I> at;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] == x) at = static_cast<I>(i);
    }
    return Case{vseq(a), {v(x)}, Expect::ok(vopt(at))};
  };
  g["seq.index_of_last"] = [](Gen& r) {
    VecI a = r.vec();
    I x = r.elem();
    std::optional<I> at;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == x) at = static_cast<I>(i);
    }
    return Case{vseq(a), {v(x)}, Expect::ok(vopt(at))};
  };
  g["set.len"] = [](Gen& r) {
    SetI s = r.set();
    return Case{vset(s), {}, Expect::ok(v(static_cast<I>(s.size())))};
  };
  g["set.contains"] = [](Gen& r) {
    SetI s = r.set();
    I x = r.elem();
    return Case{vset(s), {v(x)}, Expect::ok(v(s.count(x) == 1))};
  };
  g["set.insert"] = [](Gen& r) {
    SetI s = r.set();
    I x = r.elem();
    SetI t = s;
    t.insert(x);
    return Case{vset(s), {v(x)}, Expect::ok(vset(t))};
  };
  g["set.remove"] = [](Gen& r) {
    SetI s = r.set();
    I x = r.elem();
    SetI t = s;
    t.erase(x);
    return Case{vset(s), {v(x)}, Expect::ok(vset(t))};
  };
  g["set.union"] = [](Gen& r) {
    SetI a = r.set(), b = r.set(), c;
    for (I x = -4; x <= 4; ++x) {
      if (a.count(x) || b.count(x)) c.insert(x);
    }
    return Case{vset(a), {vset(b)}, Expect::ok(vset(c))};
  };
  g["set.intersect"] = [](Gen& r) {
    SetI a = r.set(), b = r.set(), c;
    for (I x = -4; x <= 4; ++x) {
      if (a.count(x) && b.count(x)) c.insert(x);
    }
    return Case{vset(a), {vset(b)}, Expect::ok(vset(c))};
  };
  g["set.difference"] = [](Gen& r) {
    SetI a = r.set(), b = r.set(), c;
    for (I x = -4; x <= 4; ++x) {
      if (a.count(x) && !b.count(x)) c.insert(x);
    }
    return Case{vset(a), {vset(b)}, Expect::ok(vset(c))};
  };
  g["map.len"] = [](Gen& r) {
    MapI m = r.map();
    return Case{vmap(m), {}, Expect::ok(v(static_cast<I>(m.size())))};
  };
  g["map.index"] = [](Gen& r) {
    MapI m = r.map();
    I k = r.elem();
    auto it = m.find(k);
    return Case{vmap(m), {v(k)}, it == m.end() ? Expect::err(F::out_of_bounds_index) : Expect::ok(v(it->second))};
  };
  g["map.dom"] = [](Gen& r) {
    MapI m = r.map();
    SetI d;
    for (auto [k, x] : m) d.insert(k);
    return Case{vmap(m), {}, Expect::ok(vset(d))};
  };
  g["map.insert"] = [](Gen& r) {
    MapI m = r.map();
    I k = r.elem(), x = r.num(-100, 100);
    MapI t = m;
    t[k] = x;
    return Case{vmap(m), {v(k), v(x)}, Expect::ok(vmap(t))};
  };
  g["map.remove"] = [](Gen& r) {
    MapI m = r.map();
    I k = r.elem();
    MapI t = m;
    t.erase(k);
    return Case{vmap(m), {v(k)}, Expect::ok(vmap(t))};
  };
  g["map.get"] = [](Gen& r) {
    MapI m = r.map();
    I k = r.elem();
    auto it = m.find(k);
    return Case{vmap(m), {v(k)}, Expect::ok(vopt(it == m.end() ? std::nullopt : std::optional<I>(it->second)))};
  };
  g["multiset.len"] = [](Gen& r) {
    BagI b = r.bag();
    I n = 0;
    for (auto [k, c] : b) n += c;
    return Case{vbag(b), {}, Expect::ok(v(n))};
  };
  g["multiset.count"] = [](Gen& r) {
    BagI b = r.bag();
    I x = r.elem();
    return Case{vbag(b), {v(x)}, Expect::ok(v(b.count(x) ? b.at(x) : I{0}))};
  };
  g["multiset.add"] = [](Gen& r) {
    BagI a = r.bag(), b = r.bag(), c;
    for (I x = -4; x <= 4; ++x) {
      I n = (a.count(x) ? a.at(x) : 0) + (b.count(x) ? b.at(x) : 0);
      if (n > 0) c[x] = n;
    }
    return Case{vbag(a), {vbag(b)}, Expect::ok(vbag(c))};
  };
  g["multiset.sub"] = [](Gen& r) {
    BagI a = r.bag(), b = r.bag(), c;
    for (I x = -4; x <= 4; ++x) {
      I n = (a.count(x) ? a.at(x) : 0) - (b.count(x) ? b.at(x) : 0);
      if (n > 0) c[x] = n;
    }
    return Case{vbag(a), {vbag(b)}, Expect::ok(vbag(c))};
  };
  g["string.len"] = [](Gen& r) {
    auto s = r.str();
    return Case{vstr(s), {}, Expect::ok(v(static_cast<I>(s.size())))};
  };
  g["string.index"] = [](Gen& r) {
    auto s = r.str();
    I i = r.num(-2, 7);
    return Case{vstr(s), {v(i)}, in_bounds(i, s.size()) ? Expect::ok(Value::character(s[i])) : Expect::err(F::out_of_bounds_index)};
  };
  g["option.unwrap"] = [](Gen& r) {
    auto o = r.opt();
    return Case{vopt(o), {}, o ? Expect::ok(v(*o)) : Expect::err(F::unwrap_none)};
  };
  g["seq.empty"] = [](Gen&) { return Case{Value::none(), {}, Expect::ok(vseq({}))}; };
  g["set.empty"] = [](Gen&) { return Case{Value::none(), {}, Expect::ok(vset({}))}; };
  g["map.empty"] = [](Gen&) { return Case{Value::none(), {}, Expect::ok(vmap({}))}; };
  g["multiset.empty"] = [](Gen&) { return Case{Value::none(), {}, Expect::ok(vbag({}))}; };
  g["multiset.singleton"] = [](Gen& r) {
    I x = r.elem();
    return Case{Value::none(), {v(x)}, Expect::ok(vbag({{x, 1}}))};
  };
  return g;
}

}  // namespace specfaith::oracle
