#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "canon.hpp"
#include "term.hpp"
#include "text.hpp"

namespace bimonoid {

using Natural = boost::multiprecision::cpp_int;

struct StepBudgetExceeded : Error {
  using Error::Error;
};

struct Rule {
  std::string name;
  Term lhs;
  Term rhs;
};

using Substitution = std::map<std::string, Term>;

inline Term apply(const Substitution& phi, const Term& t) {
  if (t.is_meta()) {
    auto it = phi.find(t.name());
    return it == phi.end() ? t : it->second;
  }
  if (t.is_leaf()) return t;
  Term a = bimonoid::apply(phi, t.left());
  Term b = bimonoid::apply(phi, t.right());
  if (a.id() == t.left().id() && b.id() == t.right().id()) return t;
  return Term::make(t.kind(), std::move(a), std::move(b));
}

namespace detail {
inline Term z(const char* n) { return Term::meta(n); }

inline bool match_into(const Term& pat, const Term& t, Substitution& phi) {
  if (pat.is_meta()) {
    auto [it, fresh] = phi.emplace(pat.name(), t);
    return fresh || it->second == t;
  }
  if (pat.kind() != t.kind()) return false;
  if (pat.is_leaf()) return pat.name() == t.name();
  return match_into(pat.left(), t.left(), phi) && match_into(pat.right(), t.right(), phi);
}
}  // namespace detail

inline std::vector<Rule> rules_R() {
  using detail::z;
  Term z1 = z("z1"), z2 = z("z2"), z3 = z("z3"), v = z("z");
  Term O = Term::zero(), I = Term::one();
  return {
      {"rho1", O + v, v},
      {"rho2", v + O, v},
      {"rho3", I * v, v},
      {"rho4", v * I, v},
      {"rho5", O * v, O},
      {"rho6", v * O, O},
      {"rho7", (z1 * z2) * z3, z1 * (z2 * z3)},
      {"rho8", (z1 + z2) * z3, (z1 * z3) + (z2 * z3)},
  };
}

inline Rule rho9() {
  Term v = detail::z("z");
  return {"rho9", v + v, v};
}

inline std::vector<Rule> rules_R_id() {
  auto rs = rules_R();
  rs.push_back(rho9());
  return rs;
}

// The unit and zero laws alone; their normal forms are the simple terms.
inline std::vector<Rule> rules_units() {
  auto rs = rules_R();
  rs.resize(6);
  return rs;
}

inline std::optional<Substitution> match(const Term& lhs, const Term& t) {
  Substitution phi;
  if (detail::match_into(lhs, t, phi)) return phi;
  return std::nullopt;
}

class Strategy {
 public:
  enum class Kind { Innermost, LeftFirst, RightFirst, Random };

  static Strategy innermost() { return Strategy(Kind::Innermost, 0); }
  // Leftmost-outermost.
  static Strategy left_first() { return Strategy(Kind::LeftFirst, 0); }
  // Rightmost-innermost.
  static Strategy right_first() { return Strategy(Kind::RightFirst, 0); }
  static Strategy random(std::uint64_t seed) { return Strategy(Kind::Random, seed); }

  // "innermost", "left-first", "right-first", "random:<seed>"
  static Strategy parse(const std::string& s) {
    if (s == "innermost") return innermost();
    if (s == "left-first") return left_first();
    if (s == "right-first") return right_first();
    if (s.rfind("random:", 0) == 0 && s.size() > 7) {
      std::size_t used = 0;
      std::uint64_t seed = 0;
      try {
        seed = std::stoull(s.substr(7), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == s.size() - 7) return random(seed);
    }
    throw std::invalid_argument("unknown strategy '" + s + "'");
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Innermost: return "innermost";
      case Kind::LeftFirst: return "left-first";
      case Kind::RightFirst: return "right-first";
      case Kind::Random: return "random:" + std::to_string(seed_);
    }
    return {};
  }

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  Strategy(Kind k, std::uint64_t seed) : kind_(k), seed_(seed), rng_(seed) {}
  Kind kind_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

struct Step {
  Term term;
  std::string rule;
  Position position;
};

namespace detail {

struct Redex {
  Position position;
  std::size_t rule;
  Substitution phi;
};

inline std::optional<Redex> redex_at(const Term& t, const std::vector<Rule>& rules, const Position& w) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].lhs.kind() != t.kind()) continue;
    if (auto phi = match(rules[i].lhs, t)) return Redex{w, i, std::move(*phi)};
  }
  return std::nullopt;
}

// First redex in the traversal order of the strategy. Innermost is the first
// hit of a left-to-right postorder, right-first of a right-to-left postorder,
// left-first of a preorder.
inline std::optional<Redex> find_redex(const Term& t, const std::vector<Rule>& rules, Strategy::Kind k, Position& w) {
  if (k == Strategy::Kind::LeftFirst)
    if (auto r = redex_at(t, rules, w)) return r;
  if (t.is_binary()) {
    int first = k == Strategy::Kind::RightFirst ? 2 : 1;
    for (int c : {first, 3 - first}) {
      w.push_back(c);
      auto r = find_redex(t.child(c), rules, k, w);
      w.pop_back();
      if (r) return r;
    }
  }
  if (k != Strategy::Kind::LeftFirst) return redex_at(t, rules, w);
  return std::nullopt;
}

inline void all_redexes(const Term& t, const std::vector<Rule>& rules, Position& w, std::vector<Redex>& out) {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].lhs.kind() == t.kind())
      if (auto phi = match(rules[i].lhs, t)) out.push_back({w, i, std::move(*phi)});
  if (t.is_binary())
    for (int c : {1, 2}) {
      w.push_back(c);
      all_redexes(t.child(c), rules, w, out);
      w.pop_back();
    }
}

}  // namespace detail

// One rewrite step; random picks uniformly among all (position, rule) redexes.
inline std::optional<Step> rewrite_step(const Term& t, const std::vector<Rule>& rules, Strategy& strategy) {
  std::optional<detail::Redex> r;
  Position w;
  if (strategy.kind() == Strategy::Kind::Random) {
    std::vector<detail::Redex> all;
    detail::all_redexes(t, rules, w, all);
    if (all.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    r = std::move(all[pick(strategy.rng())]);
  } else {
    r = detail::find_redex(t, rules, strategy.kind(), w);
  }
  if (!r) return std::nullopt;
  const Rule& rule = rules[r->rule];
  return Step{replace_at(t, r->position, bimonoid::apply(r->phi, rule.rhs)), rule.name, r->position};
}

struct Limits {
  std::uint64_t step_budget = 10'000'000;
  std::uint64_t max_term_size = 1'000'000;
};

struct TraceEntry {
  std::string rule;
  Position position;
  Term after;
};

struct NormalFormReport {
  Term result;
  std::uint64_t total_steps = 0;
  std::uint64_t distributivity_steps = 0;
  std::optional<std::vector<TraceEntry>> trace;
};

namespace detail {

// Leftmost-innermost normalization without re-scanning: children are
// normalized first, then the root; a rewrite at the root rebuilds the
// right-hand side bottom-up so that new redexes are met in the same order
// the stepwise search would find them.
class InnermostNormalizer {
 public:
  InnermostNormalizer(const std::vector<Rule>& rules, Limits lim) : rules_(rules), lim_(lim) {}

  Term run(const Term& t) {
    if (t.is_leaf()) return t;
    Term a = run(t.left());
    Term b = run(t.right());
    return root(t.kind(), a, b, &t);
  }

  std::uint64_t steps = 0;
  std::uint64_t rho8 = 0;

 private:
  Term root(Kind k, const Term& a, const Term& b, const Term* orig) {
    Term t = orig && a.id() == orig->left().id() && b.id() == orig->right().id() ? *orig : Term::make(k, a, b);
    if (t.size() > lim_.max_term_size) throw StepBudgetExceeded("term size limit exceeded");
    for (const Rule& r : rules_) {
      if (r.lhs.kind() != k) continue;
      Substitution phi;
      if (!match_into(r.lhs, t, phi)) continue;
      if (++steps > lim_.step_budget) throw StepBudgetExceeded("step budget exceeded");
      if (r.name == "rho8") ++rho8;
      return build(r.rhs, phi);
    }
    return t;
  }

  Term build(const Term& pat, const Substitution& phi) {
    if (pat.is_meta()) return phi.at(pat.name());
    if (pat.is_leaf()) return pat;
    Term a = build(pat.left(), phi);
    Term b = build(pat.right(), phi);
    return root(pat.kind(), a, b, nullptr);
  }

  const std::vector<Rule>& rules_;
  Limits lim_;
};

}  // namespace detail

inline NormalFormReport normal_form(const Term& t, const std::vector<Rule>& rules, Strategy strategy,
                                    Limits lim = {}, bool trace = false) {
  NormalFormReport rep;
  if (strategy.kind() == Strategy::Kind::Innermost && !trace) {
    detail::InnermostNormalizer n(rules, lim);
    rep.result = n.run(t);
    rep.total_steps = n.steps;
    rep.distributivity_steps = n.rho8;
    return rep;
  }
  if (trace) rep.trace.emplace();
  Term cur = t;
  while (auto s = rewrite_step(cur, rules, strategy)) {
    if (++rep.total_steps > lim.step_budget) throw StepBudgetExceeded("step budget exceeded");
    if (s->rule == "rho8") ++rep.distributivity_steps;
    cur = std::move(s->term);
    if (cur.size() > lim.max_term_size) throw StepBudgetExceeded("term size limit exceeded");
    if (trace) rep.trace->push_back({s->rule, s->position, cur});
  }
  rep.result = cur;
  return rep;
}

inline NormalFormReport normal_form(const Term& t, Limits lim = {}) {
  return normal_form(t, rules_R(), Strategy::innermost(), lim);
}

// R-normalize, then drop duplicate summands (rule 9 modulo AC+) and the
// unit factors a collapsed sum of ones leaves behind; repeat until stable.
inline Term normal_form_id(const Term& t, Limits lim = {}) {
  Term cur = normal_form(t, lim).result;
  for (;;) {
    Term next = id_reduce(cur);
    Term again = normal_form(next, lim).result;
    if (again == next) return next;
    cur = again;
  }
}

// |leaf| = 2, |a+b| = |a|+|b|, |a*b| = |a|^2 |b|.
class WeightMemo {
 public:
  const Natural& operator()(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second.second;
    Natural w;
    if (t.is_leaf()) {
      w = 2;
    } else {
      Natural a = (*this)(t.left());
      const Natural& b = (*this)(t.right());
      w = t.is_plus() ? Natural(a + b) : Natural(a * a * b);
    }
    return memo_.emplace(t.id(), std::make_pair(t, std::move(w))).first->second.second;
  }

 private:
  // Holding the term keeps the node alive, so its address is never reused.
  std::unordered_map<const void*, std::pair<Term, Natural>> memo_;
};

inline Natural weight(const Term& t) { return WeightMemo()(t); }

// Syntactic unification; metavariables are the variables, object variables
// and constants are rigid.
inline std::optional<Substitution> mgu(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> eqs{{s, t}};
  auto occurs = [](const std::string& v, const Term& u) {
    bool hit = false;
    for_each_subterm(u, [&](const Term& x) { hit = hit || (x.is_meta() && x.name() == v); });
    return hit;
  };
  while (!eqs.empty()) {
    auto [a, b] = eqs.back();
    eqs.pop_back();
    a = bimonoid::apply(sigma, a);
    b = bimonoid::apply(sigma, b);
    if (a == b) continue;
    if (!a.is_meta() && b.is_meta()) std::swap(a, b);
    if (a.is_meta()) {
      if (occurs(a.name(), b)) return std::nullopt;
      Substitution one{{a.name(), b}};
      for (auto& [k, v] : sigma) v = bimonoid::apply(one, v);
      sigma[a.name()] = b;
      continue;
    }
    if (a.kind() != b.kind() || a.is_leaf()) return std::nullopt;
    eqs.push_back({a.right(), b.right()});
    eqs.push_back({a.left(), b.left()});
  }
  return sigma;
}

// Renames the metavariables z, z1, z2, ... of a rule to y, y1, y2, ...
inline Rule rename_apart(const Rule& r) {
  Substitution ren;
  for (const Term* side : {&r.lhs, &r.rhs})
    for_each_subterm(*side, [&](const Term& x) {
      if (x.is_meta() && !x.name().empty() && x.name()[0] == 'z')
        ren.emplace(x.name(), Term::meta("y" + x.name().substr(1)));
    });
  return {r.name, bimonoid::apply(ren, r.lhs), bimonoid::apply(ren, r.rhs)};
}

struct CriticalPair {
  std::string outer;  // rule whose left-hand side is overlapped at position
  std::string inner;  // renamed rule unified with the subterm there
  Position position;
  Substitution unifier;
  Term left;   // phi(r1)
  Term right;  // phi(l1)[phi(r2)]_w
};

inline std::vector<CriticalPair> critical_pairs(const std::vector<Rule>& rules) {
  std::vector<CriticalPair> out;
  for (const Rule& r1 : rules)
    for (const Rule& r2raw : rules) {
      Rule r2 = rename_apart(r2raw);
      for (const Position& w : positions(r1.lhs)) {
        const Term& sub = subterm_at(r1.lhs, w);
        if (sub.is_meta()) continue;
        if (w.empty() && r1.name == r2.name) continue;  // trivial self-overlap
        auto phi = mgu(sub, r2.lhs);
        if (!phi) continue;
        out.push_back({r1.name, r2.name, w, *phi, bimonoid::apply(*phi, r1.rhs),
                       replace_at(bimonoid::apply(*phi, r1.lhs), w, bimonoid::apply(*phi, r2.rhs))});
      }
    }
  return out;
}

inline std::string render_trace_line(const TraceEntry& e) {
  return e.rule + " @ " + position_string(e.position) + " : " + render(e.after, RenderMode::FullParens);
}

}  // namespace bimonoid
