#pragma once
#include "term.hpp"

namespace bimonoid {

struct NotSimple : Error {
  NotSimple() : Error("term is not simple") {}
};

inline bool is_simple(const Term& t) {
  if (t.is_zero()) return true;
  bool ok = true;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_zero()) ok = false;
    else if (s.is_times() && (s.left().is_one() || s.right().is_one())) ok = false;
  });
  return ok;
}

inline void require_simple(const Term& t) {
  if (!is_simple(t)) throw NotSimple();
}

// Rules 1-6 innermost. Children are simplified first; at a node with simple
// children at most one rule fires and its result is already simple, so a
// single bottom-up pass reaches the fixpoint.
inline Term simplify(const Term& t) {
  if (t.is_leaf()) return t;
  Term a = simplify(t.left());
  Term b = simplify(t.right());
  if (t.is_plus()) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
  } else {
    if (a.is_zero() || b.is_zero()) return Term::zero();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
  }
  if (a.id() == t.left().id() && b.id() == t.right().id()) return t;
  return Term::make(t.kind(), std::move(a), std::move(b));
}

}  // namespace bimonoid
