#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equivalence.hpp"

namespace bimonoid {

// Natural numbers saturate at 2^31; infinity and the adjoined zero are
// sentinels outside that range.
using ExtNat = std::uint64_t;
inline constexpr ExtNat kNatCap = ExtNat{1} << 31;
inline constexpr ExtNat kInf = ~ExtNat{0};
inline constexpr ExtNat kNewZero = ~ExtNat{0} - 1;

// nullopt is the word infinity.
using Word = std::optional<std::string>;

namespace detail {
inline ExtNat sat_add(ExtNat a, ExtNat b) { return std::min(a + b, kNatCap); }

inline ExtNat read_nat(const std::string& s) {
  if (s.empty() || s.size() > 10 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("expected a natural number, got '" + s + "'");
  return std::min<ExtNat>(std::stoull(s), kNatCap);
}

inline std::mt19937_64::result_type small(std::mt19937_64& g, int n) { return g() % n; }
}  // namespace detail

inline BimonoidModel<bool> bool_model() {
  BimonoidModel<bool> m;
  m.name = "bool";
  m.carrier = "{0, 1}";
  m.zero = false;
  m.one = true;
  m.add = [](bool a, bool b) { return a || b; };
  m.mul = [](bool a, bool b) { return a && b; };
  m.right_distributive = true;
  m.idempotent = true;
  m.sample = [](std::mt19937_64& g) { return detail::small(g, 2) == 1; };
  m.show = [](bool a) { return std::string(a ? "1" : "0"); };
  m.read = [](const std::string& s) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    throw std::invalid_argument("expected 0 or 1, got '" + s + "'");
  };
  return m;
}

// (N with infinity, +, min, 0, infinity). min does not distribute over +,
// so neither distributivity flag is set.
inline BimonoidModel<ExtNat> plusmin_model() {
  BimonoidModel<ExtNat> m;
  m.name = "plusmin";
  m.carrier = "N ∪ {inf}";
  m.zero = 0;
  m.one = kInf;
  m.add = [](ExtNat a, ExtNat b) { return a == kInf || b == kInf ? kInf : detail::sat_add(a, b); };
  m.mul = [](ExtNat a, ExtNat b) { return std::min(a, b); };
  m.sample = [](std::mt19937_64& g) {
    auto r = detail::small(g, 12);
    return r == 0 ? kInf : r == 1 ? kNatCap - detail::small(g, 3) : ExtNat(r - 2);
  };
  m.show = [](ExtNat a) { return a == kInf ? std::string("inf") : std::to_string(a); };
  m.read = [](const std::string& s) { return s == "inf" ? kInf : detail::read_nat(s); };
  return m;
}

// (N with a new zero, +, +, new zero, 0).
inline BimonoidModel<ExtNat> plusplus_model() {
  BimonoidModel<ExtNat> m;
  m.name = "plusplus";
  m.carrier = "N ∪ {zero}";
  m.zero = kNewZero;
  m.one = 0;
  m.add = [](ExtNat a, ExtNat b) {
    if (a == kNewZero) return b;
    if (b == kNewZero) return a;
    return detail::sat_add(a, b);
  };
  m.mul = [](ExtNat a, ExtNat b) { return a == kNewZero || b == kNewZero ? kNewZero : detail::sat_add(a, b); };
  m.sample = [](std::mt19937_64& g) {
    auto r = detail::small(g, 12);
    return r == 0 ? kNewZero : r == 1 ? kNatCap - detail::small(g, 3) : ExtNat(r - 2);
  };
  m.show = [](ExtNat a) { return a == kNewZero ? std::string("zero") : std::to_string(a); };
  m.read = [](const std::string& s) { return s == "zero" ? kNewZero : detail::read_nat(s); };
  return m;
}

// Words with greatest common prefix as sum and concatenation as product;
// left-distributive only.
inline BimonoidModel<Word> words_model() {
  BimonoidModel<Word> m;
  m.name = "words";
  m.carrier = "words over a-z ∪ {inf}";
  m.zero = std::nullopt;
  m.one = std::string();
  m.add = [](const Word& a, const Word& b) -> Word {
    if (!a) return b;
    if (!b) return a;
    auto [ia, ib] = std::mismatch(a->begin(), a->end(), b->begin(), b->end());
    return std::string(a->begin(), ia);
  };
  m.mul = [](const Word& a, const Word& b) -> Word {
    if (!a || !b) return std::nullopt;
    return *a + *b;
  };
  m.sample = [](std::mt19937_64& g) -> Word {
    auto n = detail::small(g, 5);
    if (n == 4) return std::nullopt;
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += static_cast<char>('a' + detail::small(g, 2));
    return w;
  };
  m.show = [](const Word& a) { return !a ? std::string("inf") : a->empty() ? std::string("eps") : *a; };
  m.read = [](const std::string& s) -> Word {
    if (s == "inf") return std::nullopt;
    if (s == "eps" || s.empty()) return std::string();
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
      throw std::invalid_argument("expected a word over a-z, got '" + s + "'");
    return s;
  };
  return m;
}

// Type-erased handle for front ends: evaluates with textual values.
struct AnyModel {
  std::string name;
  std::string carrier;
  bool right_distributive = false;
  bool idempotent = false;
  std::function<std::string(const Term&, const std::map<std::string, std::string>&)> eval;
};

template <class T>
AnyModel erase(BimonoidModel<T> m) {
  AnyModel a{m.name, m.carrier, m.right_distributive, m.idempotent, {}};
  a.eval = [m](const Term& t, const std::map<std::string, std::string>& text) {
    std::map<std::string, T> env;
    for (const auto& [k, v] : text) env.emplace(k, m.read(v));
    return m.show(evaluate(t, m, env));
  };
  return a;
}

inline std::vector<AnyModel> builtin_models() {
  return {erase(register_model(bool_model())), erase(register_model(plusmin_model())),
          erase(register_model(plusplus_model())), erase(register_model(words_model()))};
}

}  // namespace bimonoid
