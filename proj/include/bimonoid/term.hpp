#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bimonoid {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPosition : Error {
  using Error::Error;
};

// Object variables come from X, metavariables from Z (rules, critical pairs).
enum class Kind : std::uint8_t { Zero, One, Var, Meta, Plus, Times };

inline bool valid_identifier(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (s.empty() || !alpha(s[0])) return false;
  for (char c : s)
    if (!alpha(c) && !digit(c) && c != '_') return false;
  return true;
}

struct TermNode;

class Term {
 public:
  Term();

  static Term zero();
  static Term one();
  static Term var(std::string name) {
    if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
    return leaf(Kind::Var, std::move(name));
  }
  static Term meta(std::string name) {
    if (!valid_identifier(name)) throw std::invalid_argument("invalid metavariable name '" + name + "'");
    return leaf(Kind::Meta, std::move(name));
  }
  static Term plus(Term a, Term b) { return node(Kind::Plus, std::move(a), std::move(b)); }
  static Term times(Term a, Term b) { return node(Kind::Times, std::move(a), std::move(b)); }
  static Term make(Kind k, Term a, Term b) { return node(k, std::move(a), std::move(b)); }

  inline Kind kind() const;
  bool is_zero() const { return kind() == Kind::Zero; }
  bool is_one() const { return kind() == Kind::One; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_meta() const { return kind() == Kind::Meta; }
  bool is_plus() const { return kind() == Kind::Plus; }
  bool is_times() const { return kind() == Kind::Times; }
  bool is_binary() const { return is_plus() || is_times(); }
  bool is_leaf() const { return !is_binary(); }

  inline const std::string& name() const;
  // Only meaningful on binary nodes.
  inline const Term& left() const;
  inline const Term& right() const;
  const Term& child(int i) const { return i == 1 ? left() : right(); }

  inline std::size_t size() const;
  inline std::size_t hash() const;
  // Node identity; equal ids imply equal terms, not conversely.
  const void* id() const { return n_.get(); }

  friend inline bool operator==(const Term& a, const Term& b);

 private:
  friend struct TermNode;
  explicit Term(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}

  static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  static inline std::shared_ptr<const TermNode> make_leaf(Kind k, std::string name);
  static inline const std::shared_ptr<const TermNode>& zero_node();
  static inline const std::shared_ptr<const TermNode>& one_node();
  static Term leaf(Kind k, std::string name) { return Term(make_leaf(k, std::move(name))); }
  static inline Term node(Kind k, Term a, Term b);

  std::shared_ptr<const TermNode> n_;
};

struct TermNode {
  Kind kind;
  std::string name;
  // Leaves keep null children so that constructing a leaf never recurses.
  Term l{std::shared_ptr<const TermNode>()}, r{std::shared_ptr<const TermNode>()};
  std::size_t size;
  std::size_t hash;

  // Iterative teardown; deep chains would otherwise overflow the stack.
  ~TermNode() {
    std::vector<std::shared_ptr<const TermNode>> stack;
    auto take = [&](Term& t) {
      if (t.n_ && t.n_.use_count() == 1) stack.push_back(std::move(t.n_));
    };
    take(l);
    take(r);
    while (!stack.empty()) {
      std::shared_ptr<const TermNode> n = std::move(stack.back());
      stack.pop_back();
      auto* m = const_cast<TermNode*>(n.get());
      take(m->l);
      take(m->r);
    }
  }
};

inline std::shared_ptr<const TermNode> Term::make_leaf(Kind k, std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->name = std::move(name);
  n->size = 1;
  n->hash = mix(static_cast<std::size_t>(k) + 1, std::hash<std::string>{}(n->name));
  return n;
}
inline const std::shared_ptr<const TermNode>& Term::zero_node() {
  static const std::shared_ptr<const TermNode> z = make_leaf(Kind::Zero, "");
  return z;
}
inline const std::shared_ptr<const TermNode>& Term::one_node() {
  static const std::shared_ptr<const TermNode> o = make_leaf(Kind::One, "");
  return o;
}
inline Term::Term() : n_(zero_node()) {}
inline Term Term::zero() { return Term(zero_node()); }
inline Term Term::one() { return Term(one_node()); }
inline Term Term::node(Kind k, Term a, Term b) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->size = 1 + a.size() + b.size();
  n->hash = mix(mix(static_cast<std::size_t>(k) * 0x100000001b3ULL, a.hash()), b.hash());
  n->l = std::move(a);
  n->r = std::move(b);
  return Term(std::move(n));
}
inline Kind Term::kind() const { return n_->kind; }
inline const std::string& Term::name() const { return n_->name; }
inline const Term& Term::left() const { return n_->l; }
inline const Term& Term::right() const { return n_->r; }
inline std::size_t Term::size() const { return n_->size; }
inline std::size_t Term::hash() const { return n_->hash; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  if (a.n_->hash != b.n_->hash || a.n_->size != b.n_->size || a.n_->kind != b.n_->kind) return false;
  if (a.is_leaf()) return a.n_->name == b.n_->name;
  return a.n_->l == b.n_->l && a.n_->r == b.n_->r;
}

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Shorthands used throughout the library and tests.
inline Term operator+(const Term& a, const Term& b) { return Term::plus(a, b); }
inline Term operator*(const Term& a, const Term& b) { return Term::times(a, b); }

using Position = std::vector<int>;

inline std::string position_string(const Position& w) {
  if (w.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += static_cast<char>('0' + w[i]);
  }
  return s;
}

inline bool in_pos(const Term& t, const Position& w) {
  const Term* cur = &t;
  for (int i : w) {
    if (!cur->is_binary() || (i != 1 && i != 2)) return false;
    cur = &cur->child(i);
  }
  return true;
}

inline const Term& subterm_at(const Term& t, const Position& w) {
  const Term* cur = &t;
  for (int i : w) {
    if (!cur->is_binary() || (i != 1 && i != 2))
      throw InvalidPosition("position " + position_string(w) + " is not in pos(t)");
    cur = &cur->child(i);
  }
  return *cur;
}

inline Term replace_at(const Term& t, const Position& w, const Term& u, std::size_t from = 0) {
  if (from == w.size()) return u;
  if (!t.is_binary() || (w[from] != 1 && w[from] != 2))
    throw InvalidPosition("position " + position_string(w) + " is not in pos(t)");
  if (w[from] == 1) return Term::make(t.kind(), replace_at(t.left(), w, u, from + 1), t.right());
  return Term::make(t.kind(), t.left(), replace_at(t.right(), w, u, from + 1));
}

// pos(t) in preorder.
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  std::function<void(const Term&)> go = [&](const Term& s) {
    out.push_back(cur);
    if (!s.is_binary()) return;
    cur.push_back(1);
    go(s.left());
    cur.back() = 2;
    go(s.right());
    cur.pop_back();
  };
  go(t);
  return out;
}

template <class F>
void for_each_subterm(const Term& t, F&& f) {
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* s = stack.back();
    stack.pop_back();
    f(*s);
    if (s->is_binary()) {
      stack.push_back(&s->right());
      stack.push_back(&s->left());
    }
  }
}

inline bool contains_meta(const Term& t) {
  bool found = false;
  for_each_subterm(t, [&](const Term& s) { found = found || s.is_meta(); });
  return found;
}

}  // namespace bimonoid
