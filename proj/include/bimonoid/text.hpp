#pragma once
#include <cctype>
#include <string>
#include <string_view>

#include "term.hpp"

namespace bimonoid {

struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(std::size_t off, const std::string& msg)
      : Error("syntax error at offset " + std::to_string(off) + ": " + msg), offset(off) {}
};

namespace detail {

// sum  := prod ('+' prod)*
// prod := atom ('*' atom)*
// atom := '0' | '1' | ident | '(' sum ')'
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term run() {
    Term t = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return t;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(i_, msg); }

  Term sum() {
    Term t = prod();
    for (skip(); i_ < s_.size() && s_[i_] == '+'; skip()) {
      ++i_;
      t = Term::plus(t, prod());
    }
    return t;
  }
  Term prod() {
    Term t = atom();
    for (skip(); i_ < s_.size() && s_[i_] == '*'; skip()) {
      ++i_;
      t = Term::times(t, atom());
    }
    return t;
  }
  Term atom() {
    skip();
    if (i_ == s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Term t = sum();
      skip();
      if (i_ == s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return t;
    }
    if (c == '0' || c == '1') {
      ++i_;
      if (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) fail("malformed constant");
      return c == '0' ? Term::zero() : Term::one();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return Term::var(std::string(s_.substr(b, i_ - b)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline void render_into(std::string& out, const Term& t, bool full) {
  switch (t.kind()) {
    case Kind::Zero: out += '0'; return;
    case Kind::One: out += '1'; return;
    case Kind::Var:
    case Kind::Meta: out += t.name(); return;
    default: break;
  }
  const char* op = t.is_plus() ? " + " : " * ";
  if (full) {
    out += '(';
    render_into(out, t.left(), true);
    out += op;
    render_into(out, t.right(), true);
    out += ')';
    return;
  }
  // Left operand needs parentheses only for a sum under a product; the right
  // operand whenever it has the same or lower precedence.
  bool lp = t.is_times() && t.left().is_plus();
  bool rp = t.right().is_binary() && (t.right().is_plus() || t.is_times());
  if (lp) out += '(';
  render_into(out, t.left(), false);
  if (lp) out += ')';
  out += op;
  if (rp) out += '(';
  render_into(out, t.right(), false);
  if (rp) out += ')';
}

}  // namespace detail

inline Term parse(std::string_view text) { return detail::Parser(text).run(); }

enum class RenderMode { Pretty, FullParens };

inline std::string render(const Term& t, RenderMode mode = RenderMode::Pretty) {
  std::string out;
  out.reserve(t.size() * 3);
  detail::render_into(out, t, mode == RenderMode::FullParens);
  return out;
}

}  // namespace bimonoid
