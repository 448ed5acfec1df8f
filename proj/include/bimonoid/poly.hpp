#pragma once
#include <optional>
#include <string>
#include <vector>

#include "canon.hpp"
#include "simple.hpp"
#include "term.hpp"

namespace bimonoid {

struct NotPolynomial : Error {
  NotPolynomial() : Error("term is not a polynomial term") {}
};
struct ZeroOperand : Error {
  ZeroOperand() : Error("direct product is undefined for a 0 operand") {}
};
struct NotAProduct : Error {
  NotAProduct() : Error("polynomial is not a product polynomial") {}
};

inline bool is_monomial_term(const Term& t) {
  bool ok = true;
  for_each_subterm(t, [&](const Term& s) { ok = ok && (s.is_var() || s.is_times()); });
  return ok;
}

namespace detail {
// Returns whether t is a monomial term; clears ok when some * node has a
// left operand that is not a monomial term.
inline bool scan_left_monomials(const Term& t, bool& ok) {
  if (t.is_var()) return true;
  if (t.is_leaf()) return false;
  bool l = scan_left_monomials(t.left(), ok);
  bool r = scan_left_monomials(t.right(), ok);
  if (t.is_times() && !l) ok = false;
  return t.is_times() && l && r;
}
}  // namespace detail

// Smallest set containing 0, 1 and the monomial terms, closed under s + t
// (s, t nonzero) and m * t (m a monomial term, t not 0 or 1). Equivalently:
// simple, and the left operand of every * is a monomial term.
inline bool is_polynomial_term(const Term& t) {
  if (!is_simple(t)) return false;
  bool ok = true;
  detail::scan_left_monomials(t, ok);
  return ok;
}

inline bool is_id_reduced(const Term& t) {
  require_simple(t);
  detail::Canonicalizer canon;
  bool ok = true;
  auto go = [&](auto& self, const Term& s, bool under_plus) -> void {
    if (s.is_leaf()) return;
    if (s.is_plus() && !under_plus) {
      std::vector<Code> codes;
      for (const Term& x : flatten(s, Kind::Plus)) codes.push_back(canon.run(x).code);
      std::sort(codes.begin(), codes.end());
      for (std::size_t i = 1; i < codes.size(); ++i)
        if (codes[i] == codes[i - 1]) ok = false;
    }
    self(self, s.left(), s.is_plus());
    self(self, s.right(), s.is_plus());
  };
  go(go, t, false);
  return ok;
}

// An element of N_rd[X]: the canonical representative of an AC-class of
// polynomial terms.
class Polynomial {
 public:
  static Polynomial of(const Term& t) {
    if (!is_polynomial_term(t)) throw NotPolynomial();
    return Polynomial(canonical_term(t));
  }
  static Polynomial zero() { return Polynomial(Term::zero()); }
  static Polynomial one() { return Polynomial(Term::one()); }

  const Term& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.is_one(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.rep_ == b.rep_; }

 private:
  explicit Polynomial(Term rep) : rep_(std::move(rep)) {}
  Term rep_;
};

// An element of B_id,rd[X]: canonical id-reduced representative.
class IdPolynomial {
 public:
  static IdPolynomial of(const Term& t) {
    if (!is_polynomial_term(t)) throw NotPolynomial();
    return IdPolynomial(id_reduce(t));
  }
  static IdPolynomial zero() { return IdPolynomial(Term::zero()); }
  static IdPolynomial one() { return IdPolynomial(Term::one()); }

  const Term& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.is_one(); }

  friend bool operator==(const IdPolynomial& a, const IdPolynomial& b) { return a.rep_ == b.rep_; }
  friend inline IdPolynomial mul_id(const IdPolynomial& p, const IdPolynomial& q);

 private:
  explicit IdPolynomial(Term rep) : rep_(std::move(rep)) {}
  Term rep_;
};

namespace detail {
// Every 1-leaf becomes t; the rightmost variable of every monomial standing
// as a summand (or as the whole term) becomes x * t. For m * q only q is
// visited, and a monomial's rightmost variable is reached the same way.
inline Term graft(const Term& s, const Term& t) {
  switch (s.kind()) {
    case Kind::One: return t;
    case Kind::Var: return s * t;
    case Kind::Plus: return graft(s.left(), t) + graft(s.right(), t);
    default: return s.left() * graft(s.right(), t);
  }
}
}  // namespace detail

// s<*t>, the one-pass construction of the right-distributive product.
inline Term mul_direct(const Term& s, const Term& t) {
  if (s.is_zero() || t.is_zero()) throw ZeroOperand();
  if (!is_polynomial_term(s) || !is_polynomial_term(t)) throw NotPolynomial();
  if (t.is_one()) return s;
  return detail::graft(s, t);
}

inline Polynomial add(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  return Polynomial::of(p.rep() + q.rep());
}

inline Polynomial mul_rd(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial::zero();
  return Polynomial::of(mul_direct(p.rep(), q.rep()));
}

struct ProductSplit {
  Term monomial;
  std::optional<Polynomial> tail;  // the sum polynomial q in p = m * q
};

inline ProductSplit decompose_product(const Polynomial& p) {
  const Term& r = p.rep();
  if (is_monomial_term(r)) return {r, std::nullopt};
  if (!r.is_times()) throw NotAProduct();
  // Canonical products are right combs of variables ending in one sum.
  std::vector<Term> fs = flatten(r, Kind::Times);
  Term last = fs.back();
  fs.pop_back();
  return {right_comb(Kind::Times, fs), Polynomial::of(last)};
}

inline Polynomial n_times(const Polynomial& p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n_times needs n >= 1");
  if (p.is_zero() || n == 1) return p;
  return Polynomial::of(right_comb(Kind::Plus, std::vector<Term>(n, p.rep())));
}

inline IdPolynomial add_id(const IdPolynomial& p, const IdPolynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  return IdPolynomial::of(p.rep() + q.rep());
}

inline IdPolynomial mul_id(const IdPolynomial& p, const IdPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return IdPolynomial::zero();
  // No id-reduction here: the product of id-reduced polynomials is already
  // id-reduced, and the tests check exactly that.
  return IdPolynomial(canonical_term(mul_direct(p.rep(), q.rep())));
}

}  // namespace bimonoid
