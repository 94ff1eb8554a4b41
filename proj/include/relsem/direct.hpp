#ifndef RELSEM_DIRECT_HPP
#define RELSEM_DIRECT_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relsem/errors.hpp"
#include "relsem/interpretation.hpp"
#include "relsem/relation.hpp"
#include "relsem/syntax.hpp"

// The reference evaluator: satisfaction per assignment, denotations by
// exhausting the assignment space. Deliberately naive — no memoization, no
// sharing — because everything else in the library is checked against it.

namespace relsem {

inline constexpr std::uint64_t kEvalBudget = 1'000'000;

// Value of a term under an assignment. The assignment may bind more
// variables than the term mentions; missing bindings are an error.
inline Element eval_term(const Term& t, const Interpretation& interp,
                         const Tuple& assignment) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return interp.constant(t.name());
    case Term::Kind::Variable: {
      Label l = Label::name(t.name());
      if (!assignment.defined_at(l)) {
        throw UnboundVariableError("variable " + t.name() +
                                   " is not bound by the assignment");
      }
      return assignment.at(l);
    }
    case Term::Kind::Application: {
      const FunctionTable& fn = interp.function(t.name());
      std::vector<std::pair<Label, Element>> cells;
      cells.reserve(t.args().size());
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        cells.emplace_back(Label::index(i),
                           eval_term(t.args()[i], interp, assignment));
      }
      return fn(Tuple(std::move(cells)));
    }
  }
  throw Error("unreachable term kind");
}

// Componentwise term evaluation onto the numeric index set 0..n-1.
inline Tuple eval_tuple(const TermTuple& ts, const Interpretation& interp,
                        const Tuple& assignment) {
  std::vector<std::pair<Label, Element>> cells;
  cells.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cells.emplace_back(Label::index(i), eval_term(ts[i], interp, assignment));
  }
  return Tuple(std::move(cells));
}

namespace detail {

// The assignment extended over the bound variables; bound variables shadow
// any outer binding of the same name.
inline Tuple overridden(const Tuple& assignment, const Tuple& extension) {
  std::vector<std::pair<Label, Element>> cells;
  for (const auto& [l, v] : assignment) {
    if (!extension.defined_at(l)) cells.emplace_back(l, v);
  }
  for (const auto& [l, v] : extension) cells.emplace_back(l, v);
  return Tuple(std::move(cells));
}

}  // namespace detail

inline bool satisfies(const Formula& f, const Interpretation& interp,
                      const Tuple& assignment,
                      std::uint64_t budget = kEvalBudget) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Relation& meaning = interp.predicate(f.predicate());
      if (meaning.index_set().size() != f.args().size()) {
        throw ArityError("predicate " + f.predicate() +
                         " applied at the wrong arity");
      }
      return meaning.contains(eval_tuple(f.args(), interp, assignment));
    }
    case Formula::Kind::Not:
      return !satisfies(f.child(), interp, assignment, budget);
    case Formula::Kind::And:
      return satisfies(f.child(0), interp, assignment, budget) &&
             satisfies(f.child(1), interp, assignment, budget);
    case Formula::Kind::Or:
      return satisfies(f.child(0), interp, assignment, budget) ||
             satisfies(f.child(1), interp, assignment, budget);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::set<std::string> bound(f.bound_vars().begin(),
                                  f.bound_vars().end());
      bool is_exists = f.kind() == Formula::Kind::Exists;
      for (const auto& ext :
           all_assignments(bound, interp.universe, budget)) {
        bool hit = satisfies(f.child(), interp,
                             detail::overridden(assignment, ext), budget);
        if (is_exists && hit) return true;
        if (!is_exists && !hit) return false;
      }
      return !is_exists;
    }
  }
  throw Error("unreachable formula kind");
}

// The denotation of a formula: the set of satisfying assignments over its
// free variables, swept exhaustively.
inline Relation denote_formula(const Formula& f, const Interpretation& interp,
                               std::uint64_t budget = kEvalBudget) {
  std::set<std::string> vars = free_vars(f);
  TupleSet content;
  for (const auto& assignment :
       all_assignments(vars, interp.universe, budget)) {
    if (satisfies(f, interp, assignment, budget)) content.insert(assignment);
  }
  return Relation(name_labels(vars), interp.universe, std::move(content));
}

// The denotation of a term: the function assignment -> value over the term's
// own variables.
inline FunctionTable denote_term(const Term& t, const Interpretation& interp,
                                 std::uint64_t budget = kEvalBudget) {
  std::set<std::string> vars = term_vars(t);
  std::map<Tuple, Element> graph;
  for (const auto& assignment :
       all_assignments(vars, interp.universe, budget)) {
    graph.emplace(assignment, eval_term(t, interp, assignment));
  }
  return FunctionTable(name_labels(vars), interp.universe, std::move(graph));
}

// The denotation of a term tuple: the range of assignment -> value tuple,
// a positional relation eligible as a predicate meaning.
inline Relation denote_tuple(const TermTuple& ts, const Interpretation& interp,
                             std::uint64_t budget = kEvalBudget) {
  std::set<std::string> vars = term_vars(ts);
  TupleSet content;
  for (const auto& assignment :
       all_assignments(vars, interp.universe, budget)) {
    content.insert(eval_tuple(ts, interp, assignment));
  }
  return Relation(index_labels(ts.size()), interp.universe,
                  std::move(content));
}

}  // namespace relsem

#endif  // RELSEM_DIRECT_HPP
