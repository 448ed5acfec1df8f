#pragma once
#include <algorithm>
#include <compare>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simple.hpp"
#include "term.hpp"

namespace bimonoid {

struct NotASumTerm : Error {
  NotASumTerm() : Error("term is not a simple sum term") {}
};
struct NotAProductTerm : Error {
  NotAProductTerm() : Error("term is not a simple product term") {}
};

// Maximal flattening of one operator, operands in source order.
inline std::vector<Term> flatten(const Term& t, Kind op) {
  std::vector<Term> out;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* s = stack.back();
    stack.pop_back();
    if (s->kind() == op) {
      stack.push_back(&s->right());
      stack.push_back(&s->left());
    } else {
      out.push_back(*s);
    }
  }
  return out;
}

// Right comb: a1 op (a2 op (... op an)).
inline Term right_comb(Kind op, const std::vector<Term>& xs) {
  Term t = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) t = Term::make(op, xs[i], t);
  return t;
}

inline std::vector<Term> sum_product_decomposition(const Term& s) {
  if (!s.is_plus()) throw NotASumTerm();
  require_simple(s);
  return flatten(s, Kind::Plus);
}

inline std::vector<Term> product_sum_decomposition(const Term& s) {
  if (!s.is_times()) throw NotAProductTerm();
  require_simple(s);
  return flatten(s, Kind::Times);
}

struct LabeledTree {
  enum class Label { Sum, Prod, Leaf };
  Label label = Label::Leaf;
  std::string symbol;  // leaves: variable name, "0" or "1"
  int index = 0;       // i >= 1 when the node is the i-th child of a product node
  std::vector<LabeledTree> children;

  std::string text() const {
    std::string inner = label == Label::Sum ? "⊞" : label == Label::Prod ? "⊠" : symbol;
    if (index == 0) return inner;
    return "(" + std::to_string(index) + "," + inner + ")";
  }
};

namespace detail {
inline LabeledTree build_tree(const Term& t) {
  LabeledTree n;
  if (t.is_binary()) {
    n.label = t.is_plus() ? LabeledTree::Label::Sum : LabeledTree::Label::Prod;
    int i = 0;
    for (const Term& c : flatten(t, t.kind())) {
      n.children.push_back(build_tree(c));
      if (t.is_times()) n.children.back().index = ++i;
    }
  } else {
    n.symbol = t.is_zero() ? "0" : t.is_one() ? "1" : t.name();
  }
  return n;
}
}  // namespace detail

inline LabeledTree labeled_tree(const Term& s) {
  require_simple(s);
  return detail::build_tree(s);
}

enum class CodeTag : std::uint8_t { Zero, One, Var, Meta, Prod, Sum };

class Code;
struct CodeNode {
  CodeTag tag;
  std::string name;
  std::vector<Code> kids;
  std::size_t hash;
};

class Code {
 public:
  Code() = default;
  explicit Code(std::shared_ptr<const CodeNode> p) : p_(std::move(p)) {}

  CodeTag tag() const { return p_->tag; }
  const std::string& name() const { return p_->name; }
  const std::vector<Code>& kids() const { return p_->kids; }
  std::size_t hash() const { return p_->hash; }
  const CodeNode* get() const { return p_.get(); }

  // Structural lexicographic order: tag, name, then children.
  friend std::strong_ordering operator<=>(const Code& a, const Code& b) {
    if (a.p_ == b.p_) return std::strong_ordering::equal;
    if (auto c = a.tag() <=> b.tag(); c != 0) return c;
    if (auto c = a.name().compare(b.name()); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const auto& x = a.kids();
    const auto& y = b.kids();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      if (auto c = x[i] <=> y[i]; c != 0) return c;
    return x.size() <=> y.size();
  }
  friend bool operator==(const Code& a, const Code& b) {
    if (a.p_ == b.p_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
  }

  std::string str() const {
    switch (tag()) {
      case CodeTag::Zero: return "0";
      case CodeTag::One: return "1";
      case CodeTag::Var: return name();
      case CodeTag::Meta: return "?" + name();
      default: break;
    }
    std::string s = tag() == CodeTag::Sum ? "S[" : "P[";
    for (std::size_t i = 0; i < kids().size(); ++i) s += (i ? "," : "") + kids()[i].str();
    return s + "]";
  }

 private:
  std::shared_ptr<const CodeNode> p_;
};

struct CodeHash {
  std::size_t operator()(const Code& c) const { return c.hash(); }
};

namespace detail {

// Per-call interning: equal codes built by one builder share a node, so
// equality inside a call is a pointer test and comparison descends only
// along the first difference.
class CodeInterner {
 public:
  Code leaf(CodeTag tag, const std::string& name) { return get(tag, name, {}); }
  Code node(CodeTag tag, std::vector<Code> kids) { return get(tag, {}, std::move(kids)); }

 private:
  struct H {
    std::size_t operator()(const std::shared_ptr<const CodeNode>& p) const { return p->hash; }
  };
  struct Eq {
    bool operator()(const std::shared_ptr<const CodeNode>& a, const std::shared_ptr<const CodeNode>& b) const {
      if (a->tag != b->tag || a->name != b->name || a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (a->kids[i].get() != b->kids[i].get()) return false;
      return true;
    }
  };

  Code get(CodeTag tag, std::string name, std::vector<Code> kids) {
    std::size_t h = static_cast<std::size_t>(tag) * 0x9e3779b97f4a7c15ULL ^ std::hash<std::string>{}(name);
    for (const Code& k : kids) h = h * 0x100000001b3ULL ^ (k.hash() + 0x7f4a7c15 + (h >> 7));
    auto p = std::make_shared<CodeNode>(CodeNode{tag, std::move(name), std::move(kids), h});
    auto [it, fresh] = table_.insert(p);
    return Code(*it);
  }

  std::unordered_set<std::shared_ptr<const CodeNode>, H, Eq> table_;
};

struct CanonOptions {
  bool flatten_times = true;  // associativity of *
  bool dedup = false;         // idempotency of +
  bool drop_units = false;    // remove 1-factors left behind by collapsed sums
};

struct Canon {
  Term term;
  Code code;
};

class Canonicalizer {
 public:
  explicit Canonicalizer(CanonOptions o = {}) : opt_(o) {}

  Canon run(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    Canon c = compute(t);
    memo_.emplace(t.id(), c);
    return c;
  }

 private:
  Canon compute(const Term& t) {
    switch (t.kind()) {
      case Kind::Zero: return {t, in_.leaf(CodeTag::Zero, "")};
      case Kind::One: return {t, in_.leaf(CodeTag::One, "")};
      case Kind::Var: return {t, in_.leaf(CodeTag::Var, t.name())};
      case Kind::Meta: return {t, in_.leaf(CodeTag::Meta, t.name())};
      case Kind::Plus: return sum(t);
      case Kind::Times: return product(t);
    }
    return {t, {}};
  }

  static void splice(std::vector<Canon>& out, const Canon& c) {
    std::vector<Term> parts = flatten(c.term, c.term.kind());
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back({parts[i], c.code.kids()[i]});
  }

  Canon sum(const Term& t) {
    std::vector<Canon> xs;
    for (const Term& s : flatten(t, Kind::Plus)) {
      Canon c = run(s);
      if (c.term.is_plus()) splice(xs, c);
      else xs.push_back(std::move(c));
    }
    std::stable_sort(xs.begin(), xs.end(), [](const Canon& a, const Canon& b) { return a.code < b.code; });
    if (opt_.dedup)
      xs.erase(std::unique(xs.begin(), xs.end(), [](const Canon& a, const Canon& b) { return a.code == b.code; }),
               xs.end());
    if (xs.size() == 1) return xs.front();
    return assemble(Kind::Plus, CodeTag::Sum, xs);
  }

  Canon product(const Term& t) {
    std::vector<Term> fs = opt_.flatten_times ? flatten(t, Kind::Times) : std::vector<Term>{t.left(), t.right()};
    std::vector<Canon> xs;
    for (const Term& f : fs) {
      Canon c = run(f);
      if (opt_.drop_units && c.term.is_one()) continue;
      if (opt_.flatten_times && c.term.is_times()) splice(xs, c);
      else xs.push_back(std::move(c));
    }
    if (xs.empty()) return {Term::one(), in_.leaf(CodeTag::One, "")};
    if (xs.size() == 1) return xs.front();
    return assemble(Kind::Times, CodeTag::Prod, xs);
  }

  Canon assemble(Kind op, CodeTag tag, const std::vector<Canon>& xs) {
    std::vector<Term> terms;
    std::vector<Code> codes;
    terms.reserve(xs.size());
    codes.reserve(xs.size());
    for (const Canon& c : xs) {
      terms.push_back(c.term);
      codes.push_back(c.code);
    }
    return {right_comb(op, terms), in_.node(tag, std::move(codes))};
  }

  CanonOptions opt_;
  CodeInterner in_;
  std::unordered_map<const void*, Canon> memo_;
};

}  // namespace detail

inline Code code(const Term& s) {
  require_simple(s);
  return detail::Canonicalizer().run(s).code;
}

inline bool ac_equal(const Term& s, const Term& t) {
  require_simple(s);
  require_simple(t);
  if (s.size() != t.size()) return false;
  detail::Canonicalizer c;
  return c.run(s).code == c.run(t).code;
}

inline Term canonical_term(const Term& s) {
  require_simple(s);
  return detail::Canonicalizer().run(s).term;
}

// Bottom-up canonicalization dropping duplicate summands. A sum that
// collapses to 1 inside a product leaves a unit factor behind, which is
// removed so the result stays simple (x*(1+1) becomes x, not x*1).
inline Term id_reduce(const Term& s) {
  require_simple(s);
  return detail::Canonicalizer({.flatten_times = true, .dedup = true, .drop_units = true}).run(s).term;
}

inline std::string to_dot(const Term& s) {
  LabeledTree root = labeled_tree(s);
  std::string out = "digraph T {\n";
  int next = 0;
  auto esc = [](const std::string& x) {
    std::string r;
    for (char c : x) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  auto go = [&](auto& self, const LabeledTree& n) -> int {
    int me = next++;
    out += "  n" + std::to_string(me) + " [label=\"" + esc(n.text()) + "\"];\n";
    for (const LabeledTree& c : n.children) {
      int k = self(self, c);
      out += "  n" + std::to_string(me) + " -> n" + std::to_string(k) + ";\n";
    }
    return me;
  };
  go(go, root);
  return out + "}\n";
}

}  // namespace bimonoid
