#pragma once
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "canon.hpp"
#include "poly.hpp"
#include "rewrite.hpp"
#include "simple.hpp"

namespace bimonoid {

enum class Theory { SB, RD, IDRD, AC, ACPLUS, ACID };

inline Theory parse_theory(const std::string& s) {
  static const std::map<std::string, Theory> names{{"sb", Theory::SB},     {"rd", Theory::RD},
                                                   {"idrd", Theory::IDRD}, {"ac", Theory::AC},
                                                   {"acplus", Theory::ACPLUS}, {"acid", Theory::ACID}};
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument("unknown theory '" + s + "'");
  return it->second;
}

namespace detail {
inline bool same_class(const Term& s, const Term& t, CanonOptions o) {
  Canonicalizer c(o);
  return c.run(s).code == c.run(t).code;
}
}  // namespace detail

// SB: simplify, then AC. RD: R-normal forms up to AC. IDRD: id-normal forms
// up to AC. The AC-family theories compare flattened codes directly and
// accept arbitrary terms.
inline bool equivalent(const Term& s, const Term& t, Theory th, Limits lim = {}) {
  switch (th) {
    case Theory::SB: return ac_equal(simplify(s), simplify(t));
    case Theory::RD: return ac_equal(normal_form(s, lim).result, normal_form(t, lim).result);
    case Theory::IDRD: return ac_equal(normal_form_id(s, lim), normal_form_id(t, lim));
    case Theory::AC: return detail::same_class(s, t, {});
    case Theory::ACPLUS: return detail::same_class(s, t, {.flatten_times = false});
    case Theory::ACID: return detail::same_class(s, t, {.flatten_times = true, .dedup = true});
  }
  return false;
}

inline Term to_simple(const Term& t) { return simplify(t); }
inline Polynomial to_polynomial(const Term& t, Limits lim = {}) { return Polynomial::of(normal_form(t, lim).result); }
inline IdPolynomial to_id_polynomial(const Term& t, Limits lim = {}) { return IdPolynomial::of(normal_form_id(t, lim)); }

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& v) : Error("unbound variable '" + v + "'") {}
};
struct ModelRejected : Error {
  using Error::Error;
};

template <class T>
struct BimonoidModel {
  std::string name;
  std::string carrier;
  T zero;
  T one;
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&, const T&)> mul;
  bool right_distributive = false;
  bool idempotent = false;
  // Used by the registration spot-check.
  std::function<T(std::mt19937_64&)> sample;
  std::function<std::string(const T&)> show;
  std::function<T(const std::string&)> read;
};

template <class T>
T evaluate(const Term& t, const BimonoidModel<T>& m, const std::map<std::string, T>& assignment) {
  switch (t.kind()) {
    case Kind::Zero: return m.zero;
    case Kind::One: return m.one;
    case Kind::Var:
    case Kind::Meta: {
      auto it = assignment.find(t.name());
      if (it == assignment.end()) throw UnboundVariable(t.name());
      return it->second;
    }
    case Kind::Plus: return m.add(evaluate(t.left(), m, assignment), evaluate(t.right(), m, assignment));
    case Kind::Times: return m.mul(evaluate(t.left(), m, assignment), evaluate(t.right(), m, assignment));
  }
  return m.zero;
}

// Checks the strong bimonoid laws, plus the flagged ones, on random triples.
// Returns a description of the first failure, or an empty string.
template <class T>
std::string spot_check(const BimonoidModel<T>& m, std::uint64_t seed = 1, int trials = 200) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    T a = m.sample(rng), b = m.sample(rng), c = m.sample(rng);
    auto fail = [&](const char* law) {
      return std::string(law) + " fails at (" + m.show(a) + ", " + m.show(b) + ", " + m.show(c) + ")";
    };
    if (!(m.add(a, m.add(b, c)) == m.add(m.add(a, b), c))) return fail("associativity of +");
    if (!(m.add(a, b) == m.add(b, a))) return fail("commutativity of +");
    if (!(m.add(a, m.zero) == a)) return fail("additive unit");
    if (!(m.mul(a, m.mul(b, c)) == m.mul(m.mul(a, b), c))) return fail("associativity of *");
    if (!(m.mul(m.one, a) == a) || !(m.mul(a, m.one) == a)) return fail("multiplicative unit");
    if (!(m.mul(a, m.zero) == m.zero) || !(m.mul(m.zero, a) == m.zero)) return fail("zero annihilation");
    if (m.right_distributive && !(m.mul(m.add(a, b), c) == m.add(m.mul(a, c), m.mul(b, c))))
      return fail("right distributivity");
    if (m.idempotent && !(m.add(a, a) == a)) return fail("idempotency");
  }
  return {};
}

template <class T>
BimonoidModel<T> register_model(BimonoidModel<T> m) {
  if (auto why = spot_check(m); !why.empty()) throw ModelRejected(m.name + ": " + why);
  return m;
}

}  // namespace bimonoid
