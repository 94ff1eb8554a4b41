#ifndef RELSEM_SYNTAX_HPP
#define RELSEM_SYNTAX_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relsem/errors.hpp"

namespace relsem {

// ---------------------------------------------------------------------------
// Signature: the declared constant, predicate, and function symbols. Name
// sets are pairwise disjoint; any undeclared identifier in a formula is a
// variable.
// ---------------------------------------------------------------------------
struct Signature {
  std::set<std::string> constants;
  std::map<std::string, std::size_t> predicates;  // name -> arity (>= 0)
  std::map<std::string, std::size_t> functions;   // name -> arity (>= 1)

  bool is_constant(const std::string& n) const { return constants.contains(n); }
  bool is_predicate(const std::string& n) const { return predicates.contains(n); }
  bool is_function(const std::string& n) const { return functions.contains(n); }
  bool declares(const std::string& n) const {
    return is_constant(n) || is_predicate(n) || is_function(n);
  }

  void validate() const {
    for (const auto& [n, a] : functions) {
      if (a == 0) throw InvariantError("function symbol " + n + " has arity 0");
    }
    for (const auto& c : constants) {
      if (is_predicate(c) || is_function(c)) {
        throw InvariantError("symbol " + c + " declared in two categories");
      }
    }
    for (const auto& [p, a] : predicates) {
      if (is_function(p)) {
        throw InvariantError("symbol " + p + " declared in two categories");
      }
    }
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

// ---------------------------------------------------------------------------
// Terms and formulas. Plain value-semantic trees; children live in vectors so
// the nodes stay regular types.
// ---------------------------------------------------------------------------
class Term {
 public:
  enum class Kind { Variable, Constant, Application };

  static Term variable(std::string name) {
    return Term(Kind::Variable, std::move(name), {});
  }
  static Term constant(std::string name) {
    return Term(Kind::Constant, std::move(name), {});
  }
  static Term apply(std::string fn, std::vector<Term> args) {
    return Term(Kind::Application, std::move(fn), std::move(args));
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

// An argument list; positions are the numeric index set 0..n-1.
using TermTuple = std::vector<Term>;

class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Exists, Forall };

  static Formula atom(std::string pred, TermTuple args) {
    Formula f(Kind::Atom);
    f.name_ = std::move(pred);
    f.terms_ = std::move(args);
    return f;
  }
  static Formula negation(Formula inner) {
    Formula f(Kind::Not);
    f.children_.push_back(std::move(inner));
    return f;
  }
  static Formula conjunction(Formula lhs, Formula rhs) {
    Formula f(Kind::And);
    f.children_.push_back(std::move(lhs));
    f.children_.push_back(std::move(rhs));
    return f;
  }
  static Formula disjunction(Formula lhs, Formula rhs) {
    Formula f(Kind::Or);
    f.children_.push_back(std::move(lhs));
    f.children_.push_back(std::move(rhs));
    return f;
  }
  static Formula exists(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::Exists, std::move(vars), std::move(body));
  }
  static Formula forall(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::Forall, std::move(vars), std::move(body));
  }

  Kind kind() const { return kind_; }
  const std::string& predicate() const { return name_; }
  const TermTuple& args() const { return terms_; }
  const std::vector<std::string>& bound_vars() const { return vars_; }
  const Formula& child(std::size_t i = 0) const { return children_[i]; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  explicit Formula(Kind kind) : kind_(kind) {}

  static Formula quantifier(Kind kind, std::vector<std::string> vars,
                            Formula body) {
    if (vars.empty()) {
      throw InvariantError("quantifier with an empty variable list");
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t j = i + 1; j < vars.size(); ++j) {
        if (vars[i] == vars[j]) {
          throw InvariantError("duplicate quantified variable " + vars[i]);
        }
      }
    }
    Formula f(kind);
    f.vars_ = std::move(vars);
    f.children_.push_back(std::move(body));
    return f;
  }

  Kind kind_;
  std::string name_;               // Atom: predicate symbol
  TermTuple terms_;                // Atom: arguments
  std::vector<std::string> vars_;  // Exists/Forall: bound variables
  std::vector<Formula> children_;
};

// ---------------------------------------------------------------------------
// Variable analysis.
// ---------------------------------------------------------------------------
inline void collect_term_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out.insert(t.name());
      break;
    case Term::Kind::Constant:
      break;
    case Term::Kind::Application:
      for (const auto& a : t.args()) collect_term_vars(a, out);
      break;
  }
}

inline std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

inline std::set<std::string> term_vars(const TermTuple& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) collect_term_vars(t, out);
  return out;
}

inline std::set<std::string> free_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return term_vars(f.args());
    case Formula::Kind::Not:
      return free_vars(f.child());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto lhs = free_vars(f.child(0));
      auto rhs = free_vars(f.child(1));
      lhs.insert(rhs.begin(), rhs.end());
      return lhs;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto body = free_vars(f.child());
      for (const auto& v : f.bound_vars()) body.erase(v);
      return body;
    }
  }
  return {};
}

// Every term occurring anywhere in the formula, including all subterms.
inline void collect_subterms(const Term& t, std::set<Term>* out,
                             std::vector<Term>* flat) {
  flat->push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, out, flat);
}

inline std::vector<Term> all_subterms(const Formula& f) {
  std::vector<Term> flat;
  std::set<Term>* unused = nullptr;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) collect_subterms(t, unused, &flat);
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto inner = all_subterms(f.child());
      flat.insert(flat.end(), inner.begin(), inner.end());
      break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (std::size_t i = 0; i < 2; ++i) {
        auto inner = all_subterms(f.child(i));
        flat.insert(flat.end(), inner.begin(), inner.end());
      }
      break;
  }
  return flat;
}

// Terms are regular values; give them an ordering so they can key sets.
inline std::strong_ordering compare_terms(const Term& a, const Term& b) {
  if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
      c != 0) {
    return c;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = compare_terms(a.args()[i], b.args()[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

inline bool operator<(const Term& a, const Term& b) {
  return compare_terms(a, b) < 0;
}

// ---------------------------------------------------------------------------
// Parser. Grammar (whitespace insensitive, identifiers [a-z][a-z0-9_]*):
//
//   formula := quant | disj
//   quant   := ("exists" | "forall") var+ "." formula
//   disj    := conj ("|" conj)*
//   conj    := neg ("&" neg)*
//   neg     := "!" neg | "(" formula ")" | atom
//   atom    := ident "(" [term ("," term)*] ")"
//   term    := ident [ "(" term ("," term)* ")" ]
//
// Precedence ! > & > |, binary connectives left-associative, quantifier scope
// extends maximally to the right. "exists" and "forall" are reserved words.
// Identifiers declared in the signature are constants/functions/predicates;
// everything else is a variable.
// ---------------------------------------------------------------------------
namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view src, const Signature& sig)
      : src_(src), sig_(sig) {}

  Formula parse_formula_all() {
    Formula f = parse_formula();
    skip_ws();
    if (pos_ != src_.size()) {
      throw SyntaxError("trailing input after formula", pos_);
    }
    return f;
  }

  Term parse_term_all() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != src_.size()) {
      throw SyntaxError("trailing input after term", pos_);
    }
    return t;
  }

 private:
  static bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) {
      throw SyntaxError(std::string("expected ") + what, pos_);
    }
  }

  bool at_ident() {
    skip_ws();
    return pos_ < src_.size() && ident_start(src_[pos_]);
  }

  std::string ident(const char* what) {
    skip_ws();
    if (!at_ident()) {
      throw SyntaxError(std::string("expected ") + what, pos_);
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  bool peek_keyword(const char* kw) {
    skip_ws();
    std::size_t saved = pos_;
    if (!at_ident()) return false;
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    bool hit = src_.substr(start, pos_ - start) == kw;
    if (!hit) pos_ = saved;
    return hit;
  }

  Formula parse_formula() {
    skip_ws();
    std::size_t at = pos_;
    if (peek_keyword("exists")) return parse_quantifier(true, at);
    if (peek_keyword("forall")) return parse_quantifier(false, at);
    return parse_disj();
  }

  Formula parse_quantifier(bool existential, std::size_t at) {
    std::vector<std::string> vars;
    while (at_ident() && !peek('.')) {
      skip_ws();
      std::size_t var_at = pos_;
      std::string v = ident("quantified variable");
      if (v == "exists" || v == "forall") {
        throw SyntaxError("reserved word used as a variable", var_at);
      }
      if (sig_.declares(v)) {
        throw SyntaxError("declared symbol " + v + " quantified as a variable",
                          var_at);
      }
      for (const auto& seen : vars) {
        if (seen == v) {
          throw SyntaxError("duplicate quantified variable " + v, var_at);
        }
      }
      vars.push_back(std::move(v));
    }
    if (vars.empty()) {
      throw SyntaxError("quantifier binds no variables", at);
    }
    expect('.', "'.' after quantified variables");
    Formula body = parse_formula();
    return existential ? Formula::exists(std::move(vars), std::move(body))
                       : Formula::forall(std::move(vars), std::move(body));
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (eat('|')) f = Formula::disjunction(std::move(f), parse_conj());
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_neg();
    while (eat('&')) f = Formula::conjunction(std::move(f), parse_neg());
    return f;
  }

  Formula parse_neg() {
    if (eat('!')) return Formula::negation(parse_neg());
    if (eat('(')) {
      Formula f = parse_formula();
      expect(')', "')'");
      return f;
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    std::size_t at = pos_;
    std::string name = ident("a predicate application");
    if (name == "exists" || name == "forall") {
      throw SyntaxError("quantifier not allowed here; parenthesize it", at);
    }
    if (!peek('(')) {
      throw SyntaxError("expected '(' after predicate " + name, pos_);
    }
    if (!sig_.is_predicate(name)) {
      throw UnknownSymbolError("undeclared predicate symbol " + name);
    }
    TermTuple args = parse_args();
    std::size_t arity = sig_.predicates.at(name);
    if (args.size() != arity) {
      throw ArityError("predicate " + name + " expects " +
                       std::to_string(arity) + " arguments, got " +
                       std::to_string(args.size()));
    }
    return Formula::atom(std::move(name), std::move(args));
  }

  TermTuple parse_args() {
    expect('(', "'('");
    TermTuple args;
    if (!peek(')')) {
      args.push_back(parse_term());
      while (eat(',')) args.push_back(parse_term());
    }
    expect(')', "',' or ')'");
    return args;
  }

  Term parse_term() {
    skip_ws();
    std::size_t at = pos_;
    std::string name = ident("a term");
    if (name == "exists" || name == "forall") {
      throw SyntaxError("reserved word used as a term", at);
    }
    if (peek('(')) {
      if (!sig_.is_function(name)) {
        throw UnknownSymbolError("undeclared function symbol " + name);
      }
      TermTuple args = parse_args();
      std::size_t arity = sig_.functions.at(name);
      if (args.size() != arity) {
        throw ArityError("function " + name + " expects " +
                         std::to_string(arity) + " arguments, got " +
                         std::to_string(args.size()));
      }
      return Term::apply(std::move(name), std::move(args));
    }
    if (sig_.is_constant(name)) return Term::constant(std::move(name));
    if (sig_.is_predicate(name) || sig_.is_function(name)) {
      throw SyntaxError("symbol " + name + " is not usable as a term", at);
    }
    return Term::variable(std::move(name));
  }

  std::string_view src_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view src, const Signature& sig) {
  return detail::FormulaParser(src, sig).parse_formula_all();
}

inline Term parse_term(std::string_view src, const Signature& sig) {
  return detail::FormulaParser(src, sig).parse_term_all();
}

// ---------------------------------------------------------------------------
// Printer. Emits exactly the grammar above with minimal parentheses;
// parse(print(x)) reproduces the tree.
// ---------------------------------------------------------------------------
inline std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      return t.name();
    case Term::Kind::Application: {
      std::string out = t.name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i != 0) out += ",";
        out += print_term(t.args()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

namespace detail {

// Binding strength: quantifiers 0, | 1, & 2, ! 3, atoms 4. A node prints bare
// when its strength is at least what the context requires.
inline int formula_precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 0;
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Not:
      return 3;
    case Formula::Kind::Atom:
      return 4;
  }
  return 4;
}

inline void print_formula_rec(const Formula& f, int min_prec,
                              std::string& out) {
  if (formula_precedence(f) < min_prec) {
    out += "(";
    print_formula_rec(f, 0, out);
    out += ")";
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      out += f.predicate() + "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i != 0) out += ",";
        out += print_term(f.args()[i]);
      }
      out += ")";
      break;
    }
    case Formula::Kind::Not:
      out += "!";
      print_formula_rec(f.child(), 3, out);
      break;
    case Formula::Kind::And:
      print_formula_rec(f.child(0), 2, out);
      out += " & ";
      print_formula_rec(f.child(1), 3, out);
      break;
    case Formula::Kind::Or:
      print_formula_rec(f.child(0), 1, out);
      out += " | ";
      print_formula_rec(f.child(1), 2, out);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      out += f.kind() == Formula::Kind::Exists ? "exists" : "forall";
      for (const auto& v : f.bound_vars()) out += " " + v;
      out += ". ";
      print_formula_rec(f.child(), 0, out);
      break;
    }
  }
}

}  // namespace detail

inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_formula_rec(f, 0, out);
  return out;
}

}  // namespace relsem

#endif  // RELSEM_SYNTAX_HPP
