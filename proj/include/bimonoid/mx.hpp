#pragma once
#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "canon.hpp"
#include "poly.hpp"
#include "text.hpp"

namespace bimonoid {

struct InvalidOperand : Error {
  using Error::Error;
};
struct IterationBudgetExceeded : Error {
  using Error::Error;
};

// Some representative of q has a subterm in p's class. Beyond the subterms
// of the canonical representative this includes sub-sums of a sum and
// contiguous factor runs of a product spine, which reassociation exposes.
inline bool is_subpolynomial(const IdPolynomial& p, const IdPolynomial& q) {
  Code target = code(p.rep());
  auto codes_of = [](const Term& t, Kind k) {
    std::vector<Code> out;
    for (const Term& f : flatten(t, k)) out.push_back(code(f));
    return out;
  };
  std::vector<Code> parts;
  if (p.rep().is_plus()) parts = codes_of(p.rep(), Kind::Plus);
  if (p.rep().is_times()) parts = codes_of(p.rep(), Kind::Times);
  bool hit = false;
  for_each_subterm(q.rep(), [&](const Term& s) {
    if (hit) return;
    if (code(s) == target) {
      hit = true;
    } else if (p.rep().is_plus() && s.is_plus()) {
      std::multiset<Code> have;
      for (Code& c : codes_of(s, Kind::Plus)) have.insert(std::move(c));
      hit = true;
      for (const Code& c : parts) {
        auto it = have.find(c);
        if (it == have.end()) {
          hit = false;
          break;
        }
        have.erase(it);
      }
    } else if (p.rep().is_times() && s.is_times()) {
      std::vector<Code> spine = codes_of(s, Kind::Times);
      hit = std::search(spine.begin(), spine.end(), parts.begin(), parts.end()) != spine.end();
    }
  });
  return hit;
}

namespace detail {
inline bool headed_by_variable(const Term& s) { return s.is_times() && s.left().is_var(); }

// w is the operand of some x * w on a canonical product spine.
inline bool large_operand(const Term& w) {
  // n = 1: x * (y * p'), p' never 0 or 1 in a polynomial term.
  if (headed_by_variable(w)) return true;
  if (!w.is_plus()) return false;
  // p' may itself be a sum, in which case a bare p' summand is spread over
  // several summands of w after flattening.
  std::vector<Term> summands = flatten(w, Kind::Plus);
  Canonicalizer canon;
  std::vector<Code> codes;
  for (const Term& s : summands) codes.push_back(canon.run(s).code);
  for (const Term& cand : summands) {
    if (!headed_by_variable(cand)) continue;
    const Term& tail_term = cand.right();
    Code tail = canon.run(tail_term).code;
    if (tail.tag() == CodeTag::One || tail.tag() == CodeTag::Zero) continue;
    std::vector<Code> tail_parts;
    for (const Term& t : flatten(tail_term, Kind::Plus)) tail_parts.push_back(canon.run(t).code);
    for (bool bare : {false, true}) {
      std::multiset<Code> rest(codes.begin(), codes.end());
      bool ok = true;
      if (bare) {
        for (const Code& c : tail_parts) {
          auto it = rest.find(c);
          if (it == rest.end()) {
            ok = false;
            break;
          }
          rest.erase(it);
        }
      }
      std::set<std::string> heads;
      for (std::size_t i = 0; i < summands.size() && ok; ++i) {
        auto it = rest.find(codes[i]);
        if (it == rest.end()) continue;
        rest.erase(it);
        const Term& s = summands[i];
        ok = headed_by_variable(s) && canon.run(s.right()).code == tail && heads.insert(s.left().name()).second;
      }
      if (ok && !heads.empty()) return true;
    }
  }
  return false;
}
}  // namespace detail

// Large: some subpolynomial has the form x * ((y1 * p') + ... + (yn * p'))
// with distinct yi in X or {1}, y1 in X, p' not 0 or 1. On a canonical
// representative every suffix of a product spine is a * node, so scanning
// all * nodes with a variable left operand covers every candidate.
inline bool is_large(const IdPolynomial& q) {
  if (q.is_zero() || q.is_one()) throw InvalidOperand("is_large is undefined on 0 and 1");
  bool hit = false;
  for_each_subterm(q.rep(), [&](const Term& s) {
    if (!hit && s.is_times() && s.left().is_var()) hit = detail::large_operand(s.right());
  });
  return hit;
}

class MElement {
 public:
  enum class Tag { Zero, Unit, Large, Small };

  static MElement zero() { return MElement(Tag::Zero, std::nullopt); }
  static MElement unit() { return MElement(Tag::Unit, std::nullopt); }
  static MElement large() { return MElement(Tag::Large, std::nullopt); }

  Tag tag() const { return tag_; }
  // Only for Small.
  const IdPolynomial& payload() const { return *p_; }

  std::string str(RenderMode mode = RenderMode::Pretty) const {
    switch (tag_) {
      case Tag::Zero: return "0";
      case Tag::Unit: return "1";
      case Tag::Large: return "LARGE";
      case Tag::Small: return render(p_->rep(), mode);
    }
    return {};
  }

  friend bool operator==(const MElement& a, const MElement& b) {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::Small || a.p_->rep() == b.p_->rep());
  }
  friend bool operator<(const MElement& a, const MElement& b) {
    if (a.tag_ != b.tag_) return a.tag_ < b.tag_;
    if (a.tag_ != Tag::Small) return false;
    return code(a.p_->rep()) < code(b.p_->rep());
  }

  friend MElement m_inject(const IdPolynomial& p);

 private:
  MElement(Tag t, std::optional<IdPolynomial> p) : tag_(t), p_(std::move(p)) {}
  Tag tag_;
  std::optional<IdPolynomial> p_;
};

inline MElement m_inject(const IdPolynomial& p) {
  if (p.is_zero()) return MElement::zero();
  if (p.is_one()) return MElement::unit();
  if (is_large(p)) return MElement::large();
  return MElement(MElement::Tag::Small, p);
}

namespace detail {
inline IdPolynomial lift(const MElement& a) {
  return a.tag() == MElement::Tag::Zero ? IdPolynomial::zero()
         : a.tag() == MElement::Tag::Unit ? IdPolynomial::one()
                                          : a.payload();
}
}  // namespace detail

inline MElement m_add(const MElement& a, const MElement& b) {
  using T = MElement::Tag;
  if (a.tag() == T::Zero) return b;
  if (b.tag() == T::Zero) return a;
  if (a.tag() == T::Large || b.tag() == T::Large) return MElement::large();
  return m_inject(add_id(detail::lift(a), detail::lift(b)));
}

inline MElement m_mul(const MElement& a, const MElement& b) {
  using T = MElement::Tag;
  if (a.tag() == T::Zero || b.tag() == T::Zero) return MElement::zero();
  if (a.tag() == T::Unit) return b;
  if (b.tag() == T::Unit) return a;
  if (a.tag() == T::Large || b.tag() == T::Large) return MElement::large();
  return m_inject(mul_id(a.payload(), b.payload()));
}

// p0 = x, p(n+1) = x * (1 + p(n)).
inline IdPolynomial p_witness(std::size_t n) {
  Term x = Term::var("x");
  Term p = x;
  for (std::size_t i = 0; i < n; ++i) p = x * (Term::one() + p);
  return IdPolynomial::of(p);
}

// Least C containing seed, 0 and 1, closed under a + b (a, b in C) and
// a * s (a in C, s in seed).
inline std::set<MElement> weak_closure(const std::vector<MElement>& seed, std::size_t max_iter = 64) {
  std::set<MElement> c(seed.begin(), seed.end());
  c.insert(MElement::zero());
  c.insert(MElement::unit());
  for (std::size_t round = 0; round < max_iter; ++round) {
    std::set<MElement> next = c;
    for (const MElement& a : c) {
      for (const MElement& b : c) next.insert(m_add(a, b));
      for (const MElement& s : seed) next.insert(m_mul(a, s));
    }
    if (next.size() == c.size()) return c;
    c = std::move(next);
  }
  throw IterationBudgetExceeded("weak closure did not stabilize within " + std::to_string(max_iter) + " rounds");
}

// The multiplicative monoid generated by seed.
inline std::set<MElement> multiplicative_closure(const std::vector<MElement>& seed, std::size_t max_iter = 64) {
  std::set<MElement> c(seed.begin(), seed.end());
  c.insert(MElement::unit());
  for (std::size_t round = 0; round < max_iter; ++round) {
    std::set<MElement> next = c;
    for (const MElement& a : c)
      for (const MElement& b : c) next.insert(m_mul(a, b));
    if (next.size() == c.size()) return c;
    c = std::move(next);
  }
  throw IterationBudgetExceeded("multiplicative closure did not stabilize within " + std::to_string(max_iter) +
                                " rounds");
}

}  // namespace bimonoid
