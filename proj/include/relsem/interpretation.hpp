#ifndef RELSEM_INTERPRETATION_HPP
#define RELSEM_INTERPRETATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relsem/errors.hpp"
#include "relsem/relation.hpp"
#include "relsem/rng.hpp"
#include "relsem/syntax.hpp"

namespace relsem {

// Guard on exhaustive interpretation sweeps; the closed-form count is checked
// before anything is materialized.
inline constexpr std::uint64_t kInterpretationBudget = 10'000'000;

// ---------------------------------------------------------------------------
// Interpretation: a finite universe plus element/relation/table meanings for
// every declared symbol. Predicate and function meanings are numerically
// indexed (positions 0..arity-1).
// ---------------------------------------------------------------------------
struct Interpretation {
  ElementSet universe;
  std::map<std::string, Element> constants;
  std::map<std::string, Relation> predicates;
  std::map<std::string, FunctionTable> functions;

  const Element& constant(const std::string& name) const {
    auto it = constants.find(name);
    if (it == constants.end()) {
      throw MissingSymbolError("constant " + name + " not interpreted");
    }
    return it->second;
  }

  const Relation& predicate(const std::string& name) const {
    auto it = predicates.find(name);
    if (it == predicates.end()) {
      throw MissingSymbolError("predicate " + name + " not interpreted");
    }
    return it->second;
  }

  const FunctionTable& function(const std::string& name) const {
    auto it = functions.find(name);
    if (it == functions.end()) {
      throw MissingSymbolError("function " + name + " not interpreted");
    }
    return it->second;
  }
};

inline void validate_interpretation(const Interpretation& interp,
                                    const Signature& sig) {
  if (interp.universe.empty()) {
    throw EmptyDomainError("interpretation with an empty universe");
  }
  for (const auto& c : sig.constants) {
    if (!interp.universe.contains(interp.constant(c))) {
      throw OutOfDomainError("constant " + c + " maps outside the universe");
    }
  }
  for (const auto& [p, arity] : sig.predicates) {
    const Relation& r = interp.predicate(p);
    if (r.index_set() != index_labels(arity)) {
      throw InvariantError("predicate " + p +
                           " is not numerically indexed at its arity");
    }
    if (r.domain() != interp.universe) {
      throw OutOfDomainError("predicate " + p +
                             " interpreted over a different domain");
    }
  }
  for (const auto& [f, arity] : sig.functions) {
    const FunctionTable& table = interp.function(f);
    if (table.source_index_set() != index_labels(arity)) {
      throw InvariantError("function " + f +
                           " is not numerically indexed at its arity");
    }
    if (table.domain() != interp.universe) {
      throw OutOfDomainError("function " + f +
                             " interpreted over a different domain");
    }
  }
}

// ---------------------------------------------------------------------------
// Assignment enumeration: all of vars -> universe in canonical order. For an
// empty variable set this is exactly the singleton empty assignment.
// ---------------------------------------------------------------------------
inline std::vector<Tuple> all_assignments(const std::set<std::string>& vars,
                                          const ElementSet& universe,
                                          std::uint64_t budget = kSpaceBudget) {
  return full_tuple_space(name_labels(vars), universe, budget);
}

// ---------------------------------------------------------------------------
// Line-oriented input formats ('#' starts a comment):
//
//   signature file            structure file
//   --------------            --------------
//   const c                   domain: a b
//   pred p/2                  const c = a
//   func f/1                  pred p/2 = { (a,b) (b,a) }
//                             func f/1 = { (a)->b (b)->a }
//
// Every declared symbol appears exactly once in a structure file; function
// entries list exactly |domain|^arity rows. Element identifiers are
// [a-z0-9_]+ tokens.
// ---------------------------------------------------------------------------
namespace detail {

class LineLexer {
 public:
  LineLexer(std::string_view src, std::size_t base) : src_(src), base_(base) {}

  std::size_t offset() const { return base_ + pos_; }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= src_.size() || src_[pos_] == '#';
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) throw SyntaxError(std::string("expected ") + what, offset());
  }

  bool eat_arrow() {
    skip_ws();
    if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  static bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  }

  std::string word(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && word_char(src_[pos_])) ++pos_;
    if (pos_ == start) {
      throw SyntaxError(std::string("expected ") + what, offset());
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::size_t number(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
      ++pos_;
    }
    if (pos_ == start) {
      throw SyntaxError(std::string("expected ") + what, offset());
    }
    return static_cast<std::size_t>(
        std::stoull(std::string(src_.substr(start, pos_ - start))));
  }

 private:
  std::string_view src_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline void for_each_line(std::string_view src,
                          const std::function<void(LineLexer&)>& fn) {
  std::size_t base = 0;
  while (base <= src.size()) {
    std::size_t end = src.find('\n', base);
    if (end == std::string_view::npos) end = src.size();
    LineLexer lex(src.substr(base, end - base), base);
    if (!lex.done()) fn(lex);
    if (end == src.size()) break;
    base = end + 1;
  }
}

}  // namespace detail

inline Signature parse_signature(std::string_view src) {
  Signature sig;
  detail::for_each_line(src, [&](detail::LineLexer& lex) {
    std::size_t at = lex.offset();
    std::string kind = lex.word("a declaration");
    if (kind == "const") {
      std::string name = lex.word("a constant name");
      if (sig.declares(name)) {
        throw SyntaxError("symbol " + name + " declared twice", at);
      }
      sig.constants.insert(name);
    } else if (kind == "pred" || kind == "func") {
      std::string name = lex.word("a symbol name");
      lex.expect('/', "'/' before the arity");
      std::size_t arity = lex.number("an arity");
      if (sig.declares(name)) {
        throw SyntaxError("symbol " + name + " declared twice", at);
      }
      if (kind == "pred") {
        sig.predicates[name] = arity;
      } else {
        if (arity == 0) {
          throw SyntaxError("function " + name + " must have positive arity",
                            at);
        }
        sig.functions[name] = arity;
      }
    } else {
      throw SyntaxError("unknown declaration '" + kind + "'", at);
    }
    if (!lex.done()) {
      throw SyntaxError("trailing input after declaration", lex.offset());
    }
  });
  sig.validate();
  return sig;
}

inline Interpretation load_structure(std::string_view src,
                                     const Signature& sig) {
  Interpretation interp;
  bool saw_domain = false;

  auto check_element = [&](const Element& e, std::size_t at) {
    if (!interp.universe.contains(e)) {
      throw OutOfDomainError("element '" + e +
                             "' is not in the declared domain (offset " +
                             std::to_string(at) + ")");
    }
  };

  auto parse_row = [&](detail::LineLexer& lex, std::size_t arity) {
    std::size_t at = lex.offset();
    lex.expect('(', "'('");
    std::vector<std::pair<Label, Element>> cells;
    if (!lex.eat(')')) {
      std::size_t i = 0;
      do {
        Element e = lex.word("an element");
        check_element(e, at);
        cells.emplace_back(Label::index(i++), e);
      } while (lex.eat(','));
      lex.expect(')', "')'");
    }
    if (cells.size() != arity) {
      throw ArityError("tuple of length " + std::to_string(cells.size()) +
                       " where arity " + std::to_string(arity) +
                       " was declared");
    }
    return Tuple(std::move(cells));
  };

  detail::for_each_line(src, [&](detail::LineLexer& lex) {
    std::size_t at = lex.offset();
    std::string kind = lex.word("a structure entry");
    if (kind == "domain") {
      lex.expect(':', "':' after domain");
      if (saw_domain) throw SyntaxError("domain declared twice", at);
      saw_domain = true;
      while (!lex.done()) interp.universe.insert(lex.word("an element"));
      if (interp.universe.empty()) {
        throw EmptyDomainError("structure declares an empty domain");
      }
      return;
    }
    if (!saw_domain) {
      throw SyntaxError("the domain line must come first", at);
    }
    if (kind == "const") {
      std::string name = lex.word("a constant name");
      if (!sig.is_constant(name)) {
        throw UnknownSymbolError("constant " + name +
                                 " is not declared in the signature");
      }
      if (interp.constants.contains(name)) {
        throw SyntaxError("constant " + name + " interpreted twice", at);
      }
      lex.expect('=', "'='");
      Element e = lex.word("an element");
      check_element(e, at);
      interp.constants.emplace(name, e);
    } else if (kind == "pred") {
      std::string name = lex.word("a predicate name");
      lex.expect('/', "'/' before the arity");
      std::size_t arity = lex.number("an arity");
      if (!sig.is_predicate(name)) {
        throw UnknownSymbolError("predicate " + name +
                                 " is not declared in the signature");
      }
      if (arity != sig.predicates.at(name)) {
        throw ArityError("predicate " + name + " declared with arity " +
                         std::to_string(sig.predicates.at(name)));
      }
      if (interp.predicates.contains(name)) {
        throw SyntaxError("predicate " + name + " interpreted twice", at);
      }
      lex.expect('=', "'='");
      lex.expect('{', "'{'");
      TupleSet rows;
      while (!lex.eat('}')) {
        Tuple row = parse_row(lex, arity);
        if (!rows.insert(row).second) {
          throw SyntaxError("duplicate tuple in predicate " + name,
                            lex.offset());
        }
      }
      interp.predicates.emplace(
          name, Relation(index_labels(arity), interp.universe, std::move(rows)));
    } else if (kind == "func") {
      std::string name = lex.word("a function name");
      lex.expect('/', "'/' before the arity");
      std::size_t arity = lex.number("an arity");
      if (!sig.is_function(name)) {
        throw UnknownSymbolError("function " + name +
                                 " is not declared in the signature");
      }
      if (arity != sig.functions.at(name)) {
        throw ArityError("function " + name + " declared with arity " +
                         std::to_string(sig.functions.at(name)));
      }
      if (interp.functions.contains(name)) {
        throw SyntaxError("function " + name + " interpreted twice", at);
      }
      lex.expect('=', "'='");
      lex.expect('{', "'{'");
      std::map<Tuple, Element> graph;
      while (!lex.eat('}')) {
        Tuple args = parse_row(lex, arity);
        if (!lex.eat_arrow()) {
          throw SyntaxError("expected '->' after the argument tuple",
                            lex.offset());
        }
        std::size_t val_at = lex.offset();
        Element value = lex.word("a value element");
        check_element(value, val_at);
        if (!graph.emplace(args, value).second) {
          throw SyntaxError("duplicate row in function " + name, lex.offset());
        }
      }
      // The FunctionTable constructor rejects non-total graphs.
      interp.functions.emplace(
          name, FunctionTable(index_labels(arity), interp.universe,
                              std::move(graph)));
    } else {
      throw SyntaxError("unknown structure entry '" + kind + "'", at);
    }
    if (!lex.done()) {
      throw SyntaxError("trailing input after entry", lex.offset());
    }
  });

  if (!saw_domain) {
    throw SyntaxError("structure file has no domain line", 0);
  }
  for (const auto& c : sig.constants) {
    if (!interp.constants.contains(c)) {
      throw MissingSymbolError("constant " + c + " has no interpretation");
    }
  }
  for (const auto& [p, a] : sig.predicates) {
    if (!interp.predicates.contains(p)) {
      throw MissingSymbolError("predicate " + p + " has no interpretation");
    }
  }
  for (const auto& [f, a] : sig.functions) {
    if (!interp.functions.contains(f)) {
      throw MissingSymbolError("function " + f + " has no interpretation");
    }
  }
  validate_interpretation(interp, sig);
  return interp;
}

// The signature implied by a structure file's own declarations, so that a
// structure file is self-describing for the CLI.
inline Signature signature_of_structure(std::string_view src) {
  Signature sig;
  detail::for_each_line(src, [&](detail::LineLexer& lex) {
    std::string kind = lex.word("a structure entry");
    if (kind == "domain") return;
    std::string name = lex.word("a symbol name");
    if (kind == "const") {
      sig.constants.insert(name);
    } else if (kind == "pred" || kind == "func") {
      lex.expect('/', "'/' before the arity");
      std::size_t arity = lex.number("an arity");
      if (kind == "pred") {
        sig.predicates[name] = arity;
      } else {
        sig.functions[name] = arity;
      }
    }
    // Anything else is rejected later by load_structure.
  });
  sig.validate();
  return sig;
}

// ---------------------------------------------------------------------------
// Exhaustive interpretation sweep. Interpretations are visited in a fixed
// mixed-radix order (constants, then functions, then predicates, each in
// name order; the last component cycles fastest).
// ---------------------------------------------------------------------------
namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b,
                                 std::uint64_t limit) {
  if (b != 0 && a > limit / b) {
    throw BudgetExceededError("interpretation space exceeds the sweep budget");
  }
  return a * b;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = checked_mul(out, base, limit);
  return out;
}

}  // namespace detail

inline std::uint64_t interpretation_count(
    const Signature& sig, std::size_t domain_size,
    std::uint64_t limit = kInterpretationBudget) {
  std::uint64_t d = domain_size;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < sig.constants.size(); ++i) {
    total = detail::checked_mul(total, d, limit);
  }
  for (const auto& [f, arity] : sig.functions) {
    std::uint64_t rows = detail::checked_pow(d, arity, limit);
    total = detail::checked_mul(total, detail::checked_pow(d, rows, limit),
                                limit);
  }
  for (const auto& [p, arity] : sig.predicates) {
    std::uint64_t space = detail::checked_pow(d, arity, limit);
    total = detail::checked_mul(total, detail::checked_pow(2, space, limit),
                                limit);
  }
  return total;
}

// Visits every interpretation in order until the visitor returns false.
inline void for_each_interpretation(
    const Signature& sig, const ElementSet& universe,
    const std::function<bool(const Interpretation&)>& visit,
    std::uint64_t limit = kInterpretationBudget) {
  if (universe.empty()) {
    throw EmptyDomainError("interpretation sweep over an empty universe");
  }
  interpretation_count(sig, universe.size(), limit);  // guard

  std::vector<Element> elems(universe.begin(), universe.end());

  struct Component {
    enum { Constant, Function, Predicate } what;
    std::string name;
    std::vector<Tuple> space;  // argument space for functions/predicates
    std::uint64_t radix;
  };
  std::vector<Component> comps;
  for (const auto& c : sig.constants) {
    comps.push_back({Component::Constant, c, {}, elems.size()});
  }
  for (const auto& [f, arity] : sig.functions) {
    auto space = full_tuple_space(index_labels(arity), universe);
    std::uint64_t radix = detail::checked_pow(elems.size(), space.size(), limit);
    comps.push_back({Component::Function, f, std::move(space), radix});
  }
  for (const auto& [p, arity] : sig.predicates) {
    auto space = full_tuple_space(index_labels(arity), universe);
    std::uint64_t radix = detail::checked_pow(2, space.size(), limit);
    comps.push_back({Component::Predicate, p, std::move(space), radix});
  }

  std::vector<std::uint64_t> digits(comps.size(), 0);
  while (true) {
    Interpretation interp;
    interp.universe = universe;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const Component& comp = comps[i];
      std::uint64_t digit = digits[i];
      switch (comp.what) {
        case Component::Constant:
          interp.constants.emplace(comp.name, elems[digit]);
          break;
        case Component::Function: {
          std::map<Tuple, Element> graph;
          std::uint64_t code = digit;
          for (const auto& row : comp.space) {
            graph.emplace(row, elems[code % elems.size()]);
            code /= elems.size();
          }
          interp.functions.emplace(
              comp.name, FunctionTable(index_labels(sig.functions.at(comp.name)),
                                       universe, std::move(graph)));
          break;
        }
        case Component::Predicate: {
          TupleSet rows;
          for (std::size_t b = 0; b < comp.space.size(); ++b) {
            if ((digit >> b) & 1u) rows.insert(comp.space[b]);
          }
          interp.predicates.emplace(
              comp.name, Relation(index_labels(sig.predicates.at(comp.name)),
                                  universe, std::move(rows)));
          break;
        }
      }
    }
    if (!visit(interp)) return;
    std::size_t i = comps.size();
    while (i-- > 0) {
      if (++digits[i] < comps[i].radix) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (comps.empty()) return;
  }
}

// ---------------------------------------------------------------------------
// Seeded random interpretations. Universe size is uniform in 1..max_universe
// with elements e0, e1, ...; constants and function values are uniform, each
// predicate tuple is included with probability 1/2. Draw order is fixed
// (constants, functions, predicates, each in name order) so a seed pins the
// result exactly.
// ---------------------------------------------------------------------------
struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t max_universe = 2;
  Signature signature;
};

inline Interpretation random_interpretation(const GeneratorConfig& cfg) {
  if (cfg.max_universe == 0) {
    throw InvariantError("max_universe must be at least 1");
  }
  Xorshift64Star rng(cfg.seed);
  std::size_t size = 1 + static_cast<std::size_t>(rng.below(cfg.max_universe));
  Interpretation interp;
  std::vector<Element> elems;
  for (std::size_t i = 0; i < size; ++i) {
    elems.push_back("e" + std::to_string(i));
    interp.universe.insert(elems.back());
  }
  for (const auto& c : cfg.signature.constants) {
    interp.constants.emplace(c, elems[rng.below(elems.size())]);
  }
  for (const auto& [f, arity] : cfg.signature.functions) {
    std::map<Tuple, Element> graph;
    for (const auto& row : full_tuple_space(index_labels(arity),
                                            interp.universe)) {
      graph.emplace(row, elems[rng.below(elems.size())]);
    }
    interp.functions.emplace(
        f, FunctionTable(index_labels(arity), interp.universe,
                         std::move(graph)));
  }
  for (const auto& [p, arity] : cfg.signature.predicates) {
    TupleSet rows;
    for (const auto& row : full_tuple_space(index_labels(arity),
                                            interp.universe)) {
      if (rng.coin()) rows.insert(row);
    }
    interp.predicates.emplace(
        p, Relation(index_labels(arity), interp.universe, std::move(rows)));
  }
  return interp;
}

// Compact single-line rendering used by diagnostics and audit witnesses.
inline std::string render_inline(const Interpretation& interp) {
  std::string out = "D={";
  bool first = true;
  for (const auto& e : interp.universe) {
    if (!first) out += ",";
    out += e;
    first = false;
  }
  out += "}";
  for (const auto& [c, e] : interp.constants) out += "; " + c + "=" + e;
  for (const auto& [f, table] : interp.functions) {
    out += "; " + f + "=" + render_inline(table);
  }
  for (const auto& [p, rel] : interp.predicates) {
    out += "; " + p + "={";
    bool f2 = true;
    for (const auto& t : rel.content()) {
      if (!f2) out += ",";
      out += render_inline(t);
      f2 = false;
    }
    out += "}";
  }
  return out;
}

}  // namespace relsem

#endif  // RELSEM_INTERPRETATION_HPP
