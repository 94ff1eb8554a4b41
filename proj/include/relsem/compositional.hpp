#ifndef RELSEM_COMPOSITIONAL_HPP
#define RELSEM_COMPOSITIONAL_HPP

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

// Bottom-up denotation computation. Composite nodes are built purely from
// their children's denotations with relation algebra; only leaves (predicate
// and function symbols, constants) consult the interpretation. This header
// must not include the satisfaction evaluator — tests/test_layering.cpp
// enforces that.

namespace relsem {

// The function assignment -> argument tuple underlying a term tuple's
// denotation; its range is the tuple denotation, its preimages drive the
// atomic rule.
struct TupleDenotationMap {
  std::set<std::string> vars;
  std::size_t arity = 0;
  ElementSet domain;
  std::map<Tuple, Tuple> graph;  // (vars -> D) -> (0..arity-1 -> D)
};

// Term denotation, composed from the children's denotations: the child
// functions are paired pointwise over the union variable set and the result
// is pushed through the symbol's own table. Leaves are projection graphs
// (variables) and constant graphs.
inline FunctionTable comp_denote_term(const Term& t,
                                      const Interpretation& interp,
                                      std::uint64_t budget = kSpaceBudget) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      Label l = Label::name(t.name());
      std::map<Tuple, Element> graph;
      for (const auto& e : interp.universe) {
        graph.emplace(Tuple({{l, e}}), e);
      }
      return FunctionTable({l}, interp.universe, std::move(graph));
    }
    case Term::Kind::Constant: {
      std::map<Tuple, Element> graph;
      graph.emplace(Tuple(), interp.constant(t.name()));
      return FunctionTable({}, interp.universe, std::move(graph));
    }
    case Term::Kind::Application: {
      const FunctionTable& fn = interp.function(t.name());
      std::vector<FunctionTable> children;
      children.reserve(t.args().size());
      std::set<std::string> vars;
      for (const auto& a : t.args()) {
        children.push_back(comp_denote_term(a, interp, budget));
        auto inner = term_vars(a);
        vars.insert(inner.begin(), inner.end());
      }
      std::map<Tuple, Element> graph;
      for (const auto& assignment :
           all_assignments(vars, interp.universe, budget)) {
        std::vector<std::pair<Label, Element>> cells;
        cells.reserve(children.size());
        for (std::size_t i = 0; i < children.size(); ++i) {
          const Tuple arg =
              assignment.restrict_to(children[i].source_index_set());
          cells.emplace_back(Label::index(i), children[i](arg));
        }
        graph.emplace(assignment, fn(Tuple(std::move(cells))));
      }
      return FunctionTable(name_labels(vars), interp.universe,
                           std::move(graph));
    }
  }
  throw Error("unreachable term kind");
}

struct TupleDenotation {
  TupleDenotationMap map;
  Relation relation;  // the range of map, positionally indexed
};

// Pointwise pairing of the component term denotations; each child is
// consulted through the restriction of the assignment to its own variables.
inline TupleDenotation comp_denote_tuple(const TermTuple& ts,
                                         const Interpretation& interp,
                                         std::uint64_t budget = kSpaceBudget) {
  std::vector<FunctionTable> children;
  children.reserve(ts.size());
  std::set<std::string> vars;
  for (const auto& t : ts) {
    children.push_back(comp_denote_term(t, interp, budget));
    auto inner = term_vars(t);
    vars.insert(inner.begin(), inner.end());
  }
  TupleDenotationMap map;
  map.vars = vars;
  map.arity = ts.size();
  map.domain = interp.universe;
  TupleSet range;
  for (const auto& assignment :
       all_assignments(vars, interp.universe, budget)) {
    std::vector<std::pair<Label, Element>> cells;
    cells.reserve(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
      const Tuple arg = assignment.restrict_to(children[i].source_index_set());
      cells.emplace_back(Label::index(i), children[i](arg));
    }
    Tuple value(std::move(cells));
    range.insert(value);
    map.graph.emplace(assignment, std::move(value));
  }
  Relation relation(index_labels(ts.size()), interp.universe,
                    std::move(range));
  return TupleDenotation{std::move(map), std::move(relation)};
}

// Atomic rule: the denotation of p(t0,...,tn-1) is the preimage of the
// predicate's meaning under the tuple denotation map — built from the symbol
// meaning and the argument denotations only, never from satisfaction.
inline Relation comp_denote_atom(const std::string& pred, const TermTuple& ts,
                                 const Interpretation& interp,
                                 std::uint64_t budget = kSpaceBudget) {
  const Relation& meaning = interp.predicate(pred);
  if (meaning.index_set().size() != ts.size()) {
    throw ArityError("predicate " + pred + " applied at the wrong arity");
  }
  TupleDenotation denot = comp_denote_tuple(ts, interp, budget);
  TupleSet content = preimage(denot.map.graph, meaning.content());
  return Relation(name_labels(denot.map.vars), interp.universe,
                  std::move(content));
}

// Structural recursion over the connectives: conjunction is bowtie of the
// child denotations, disjunction is oplus, negation is complement,
// existential quantification is projection onto the surviving variables, and
// the universal quantifier is its complement-projection-complement dual.
// The result's index set is always the formula's free variable set.
inline Relation comp_denote(const Formula& f, const Interpretation& interp,
                            std::uint64_t budget = kSpaceBudget) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return comp_denote_atom(f.predicate(), f.args(), interp, budget);
    case Formula::Kind::Not:
      return complement(comp_denote(f.child(), interp, budget), budget);
    case Formula::Kind::And:
      return bowtie(comp_denote(f.child(0), interp, budget),
                    comp_denote(f.child(1), interp, budget), budget);
    case Formula::Kind::Or:
      return oplus(comp_denote(f.child(0), interp, budget),
                   comp_denote(f.child(1), interp, budget), budget);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Relation body = comp_denote(f.child(), interp, budget);
      LabelSet keep = body.index_set();
      for (const auto& v : f.bound_vars()) keep.erase(Label::name(v));
      if (f.kind() == Formula::Kind::Exists) return project(body, keep);
      return complement(project(complement(body, budget), keep), budget);
    }
  }
  throw Error("unreachable formula kind");
}

// The injective positional listing of a variable set in canonical order:
// position i maps to the i-th variable. {y,x} -> (0 -> x, 1 -> y).
inline Tuple canonical_enumeration(const std::set<std::string>& vars) {
  std::vector<std::pair<Label, Element>> cells;
  cells.reserve(vars.size());
  std::size_t i = 0;
  for (const auto& v : vars) cells.emplace_back(Label::index(i++), v);
  return Tuple(std::move(cells));
}

}  // namespace relsem

#endif  // RELSEM_COMPOSITIONAL_HPP
