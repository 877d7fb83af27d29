#ifndef HENKIN_PARSE_HPP
#define HENKIN_PARSE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "henkin/error.hpp"
#include "henkin/formula.hpp"
#include "henkin/signature.hpp"

namespace henkin {

/// Throws if f uses a relation not in sig, breaks an arity, or uses
/// equality in a signature without it.
inline void validate(const formula& f, const signature& sig) {
  switch (f.kind()) {
    case formula_kind::atom: {
      auto ar = sig.arity(f.relation());
      if (!ar) throw error(errc::signature_mismatch, "relation '" + f.relation() + "' not in signature " + sig.name());
      if (*ar != f.args().size())
        throw error(errc::signature_mismatch, "relation '" + f.relation() + "' used with wrong arity");
      return;
    }
    case formula_kind::equal:
      if (!sig.equality())
        throw error(errc::signature_mismatch, "equality used in signature " + sig.name() + " without equality");
      return;
    case formula_kind::negation:
    case formula_kind::exists:
      validate(f.child(), sig);
      return;
    case formula_kind::conjunction:
    case formula_kind::disjunction:
      validate(f.lhs(), sig);
      validate(f.rhs(), sig);
      return;
    default:
      return;
  }
}

namespace detail {

class formula_parser {
public:
  formula_parser(const std::string& text, const signature& sig) : s_(text), sig_(sig) {}

  formula parse() {
    formula f = parse_or();
    skip();
    if (p_ != s_.size()) throw error(errc::syntax_error, "unexpected trailing input", p_);
    return f;
  }

private:
  void skip() {
    while (p_ < s_.size() && (s_[p_] == ' ' || s_[p_] == '\t' || s_[p_] == '\n' || s_[p_] == '\r')) ++p_;
  }

  bool peek(char c) {
    skip();
    return p_ < s_.size() && s_[p_] == c;
  }

  void expect(char c) {
    if (!peek(c)) throw error(errc::syntax_error, std::string("expected '") + c + "'", p_);
    ++p_;
  }

  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  std::string read_ident() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && ident_char(s_[p_])) ++p_;
    return s_.substr(start, p_ - start);
  }

  static bool is_var_token(const std::string& t) {
    if (t.size() < 2 || t[0] != 'v') return false;
    for (std::size_t k = 1; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  }

  static var_index var_of(const std::string& t, std::size_t pos) {
    if (t.size() > 8) throw error(errc::syntax_error, "variable index too large", pos);
    return static_cast<var_index>(std::stoul(t.substr(1)));
  }

  var_index read_var() {
    skip();
    std::size_t pos = p_;
    std::string t = read_ident();
    if (!is_var_token(t)) throw error(errc::syntax_error, "expected a variable vN", pos);
    return var_of(t, pos);
  }

  formula parse_or() {
    formula f = parse_and();
    while (peek('|')) {
      ++p_;
      f = disj(f, parse_and());
    }
    return f;
  }

  formula parse_and() {
    formula f = parse_unary();
    while (peek('&')) {
      ++p_;
      f = conj(f, parse_unary());
    }
    return f;
  }

  formula parse_unary() {
    skip();
    if (p_ >= s_.size()) throw error(errc::syntax_error, "unexpected end of input", p_);
    if (s_[p_] == '~') {
      ++p_;
      return neg(parse_unary());
    }
    if (s_[p_] == '(') {
      ++p_;
      formula f = parse_or();
      expect(')');
      return f;
    }
    std::size_t pos = p_;
    std::string t = read_ident();
    if (t.empty()) throw error(errc::syntax_error, std::string("unexpected character '") + s_[p_] + "'", p_);
    if (t == "E" || t == "A") {
      var_index v = read_var();
      formula body = parse_unary();
      if (t == "E") return exists(v, body);
      return neg(exists(v, neg(body)));
    }
    if (t == "true") return formula::top();
    if (t == "false") return formula::bottom();
    if (is_var_token(t)) {
      var_index i = var_of(t, pos);
      if (!peek('=')) throw error(errc::syntax_error, "expected '=' after variable", p_);
      std::size_t eq_pos = p_;
      ++p_;
      var_index j = read_var();
      if (!sig_.equality())
        throw error(errc::equality_not_in_signature, "signature " + sig_.name() + " has no equality", eq_pos);
      return formula::equal(i, j);
    }
    auto ar = sig_.arity(t);
    if (!ar) throw error(errc::unknown_relation, "unknown relation symbol '" + t + "'", pos);
    expect('(');
    std::vector<var_index> args;
    args.push_back(read_var());
    while (peek(',')) {
      ++p_;
      args.push_back(read_var());
    }
    expect(')');
    if (args.size() != *ar)
      throw error(errc::arity_mismatch,
                  "relation '" + t + "' has arity " + std::to_string(*ar) + ", got " + std::to_string(args.size()),
                  pos);
    return formula::atom(t, std::move(args));
  }

  const std::string& s_;
  const signature& sig_;
  std::size_t p_ = 0;
};

}  // namespace detail

/// Grammar: atoms `R(vI,...,vJ)`, `vI = vJ`, `~f`, `f & g`, `f | g`,
/// `E vI f`, `true`, `false`, parentheses; `&` binds tighter than `|`,
/// both associate to the left. `A vI f` is accepted as `~E vI ~f`.
inline formula parse_formula(const std::string& text, const signature& sig) {
  return detail::formula_parser(text, sig).parse();
}

}  // namespace henkin

#endif
