#ifndef RELSEM_AUDIT_HPP
#define RELSEM_AUDIT_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relsem/compositional.hpp"
#include "relsem/direct.hpp"
#include "relsem/errors.hpp"
#include "relsem/generator.hpp"
#include "relsem/interpretation.hpp"
#include "relsem/relation.hpp"
#include "relsem/rng.hpp"
#include "relsem/serialize.hpp"
#include "relsem/syntax.hpp"
#include "relsem/version.hpp"

// Mechanized audit of the algebraic identities the two evaluators are built
// around. Every checker evaluates both sides of its identity literally — in
// particular the atomic-formula and term identities really sweep the full
// function spaces (V->n), (n->V) — so a FAIL verdict is a property of the
// identity as stated, not of this implementation. Verdicts are not presumed
// anywhere; the committed findings file records whatever the exhaustive
// sweep determines.

namespace relsem::audit {

// ---------------------------------------------------------------------------
// Claim catalogue.
// ---------------------------------------------------------------------------
enum class ClaimId {
  L1a,       // s subseteq f^-1(f(s)) for every s in the source powerset
  L1b,       // f(f^-1(t)) = t for every t in the target powerset
  L2,        // bowtie/oplus coincide with meet/join of the cylinders
  L3a,       // projecting a cylinder recovers the original relation
  L3b,       // every relation embeds in the cylinder of its projection
  L4a,       // (S->S) = (S->T) |> (T->S) as full function-space relations
  L4b,       // (S->T) = (S->S) |> (S->T) = (S->T) |> (T->T)
  T1a,       // den(F0 & F1) = den(F0) bowtie den(F1)
  T1b,       // den(F0 | F1) = den(F0) oplus den(F1)
  T1c,       // den(!F) = complement of den(F)
  T2,        // den(exists V'. F) = projection of den(F) onto V \ V'
  T3,        // den(p(ts)) = (V->n) |> (I(p) meet den(ts))
  T4,        // (n->V) |> den(p(ts)) = I(p) meet den(ts)
  C1,        // (n->V) |> den(p(x0..xn-1)) = I(p), distinct variables
  T5flat,    // per-assignment triangle for f(ts), variable arguments only
  T5nested,  // the same triangle with at least one composite/constant argument
  TypoT1,    // the self-join variant: den(F0 & F1) = den(F0) bowtie den(F0)
};

inline constexpr std::array<ClaimId, 17> kAllClaims = {
    ClaimId::L1a, ClaimId::L1b, ClaimId::L2,  ClaimId::L3a,    ClaimId::L3b,
    ClaimId::L4a, ClaimId::L4b, ClaimId::T1a, ClaimId::T1b,    ClaimId::T1c,
    ClaimId::T2,  ClaimId::T3,  ClaimId::T4,  ClaimId::C1,     ClaimId::T5flat,
    ClaimId::T5nested, ClaimId::TypoT1};

inline std::string claim_name(ClaimId id) {
  switch (id) {
    case ClaimId::L1a: return "L1a";
    case ClaimId::L1b: return "L1b";
    case ClaimId::L2: return "L2";
    case ClaimId::L3a: return "L3a";
    case ClaimId::L3b: return "L3b";
    case ClaimId::L4a: return "L4a";
    case ClaimId::L4b: return "L4b";
    case ClaimId::T1a: return "T1a";
    case ClaimId::T1b: return "T1b";
    case ClaimId::T1c: return "T1c";
    case ClaimId::T2: return "T2";
    case ClaimId::T3: return "T3";
    case ClaimId::T4: return "T4";
    case ClaimId::C1: return "C1";
    case ClaimId::T5flat: return "T5flat";
    case ClaimId::T5nested: return "T5nested";
    case ClaimId::TypoT1: return "TypoT1";
  }
  throw Error("unreachable claim id");
}

inline ClaimId claim_from_name(const std::string& name) {
  for (ClaimId id : kAllClaims) {
    if (claim_name(id) == name) return id;
  }
  throw Error("unknown claim id '" + name + "'");
}

inline std::size_t claim_ordinal(ClaimId id) {
  for (std::size_t i = 0; i < kAllClaims.size(); ++i) {
    if (kAllClaims[i] == id) return i;
  }
  throw Error("unreachable claim id");
}

// Human rendering of the audited identity, used by the findings file.
inline std::string claim_identity(ClaimId id) {
  switch (id) {
    case ClaimId::L1a: return "s ⊆ f⁻¹(f(s)) for all s ⊆ S";
    case ClaimId::L1b: return "f(f⁻¹(t)) = t for all t ⊆ T";
    case ClaimId::L2:
      return "R0 ⋈ R1 = ρ_I(R0) ∩ ρ_I(R1) and R0 ⊕ R1 = ρ_I(R0) ∪ ρ_I(R1), "
             "I = I0 ∪ I1";
    case ClaimId::L3a: return "π_I'(ρ_I(R')) = R' for R' indexed by I' ⊆ I";
    case ClaimId::L3b: return "R ⊆ ρ_I(π_I'(R))";
    case ClaimId::L4a: return "(S→S) = (S→T) ▷ (T→S)";
    case ClaimId::L4b: return "(S→T) = (S→S) ▷ (S→T) = (S→T) ▷ (T→T)";
    case ClaimId::T1a: return "den(F0 ∧ F1) = den(F0) ⋈ den(F1)";
    case ClaimId::T1b: return "den(F0 ∨ F1) = den(F0) ⊕ den(F1)";
    case ClaimId::T1c: return "den(¬F) = den(F)~";
    case ClaimId::T2: return "den(∃V'. F) = π_{V∖V'}(den(F))";
    case ClaimId::T3:
      return "den(p(t0,…,tn-1)) = (V→n) ▷ (I(p) ∩ den(t0,…,tn-1))";
    case ClaimId::T4:
      return "(n→V) ▷ den(p(t0,…,tn-1)) = I(p) ∩ den(t0,…,tn-1)";
    case ClaimId::C1:
      return "(n→V) ▷ den(p(x0,…,xn-1)) = I(p) for distinct variables x_i";
    case ClaimId::T5flat:
      return "∀α ∃x∈(n→V): den(f(t⃗))(α) = (I(f) ↓ den(t⃗))(x ▷ α), "
             "all arguments variables";
    case ClaimId::T5nested:
      return "∀α ∃x∈(n→V): den(f(t⃗))(α) = (I(f) ↓ den(t⃗))(x ▷ α), "
             "some argument composite or constant";
    case ClaimId::TypoT1:
      return "den(F0 ∧ F1) = den(F0) ⋈ den(F0) and den(F0 ∨ F1) = den(F0) ⊕ "
             "den(F0)";
  }
  throw Error("unreachable claim id");
}

enum class Mode { Exhaustive, Random };

inline std::string mode_name(Mode m) {
  return m == Mode::Exhaustive ? "exhaustive" : "random";
}

// Exhaustive-sweep size caps. The defaults finish in seconds; the CLI can
// raise them.
struct Caps {
  std::size_t max_domain = 2;
  std::size_t max_vars = 2;
  std::size_t max_arity = 2;
  std::size_t max_depth = 3;  // composite formula depth
};

struct CheckOutcome {
  bool pass = true;
  std::string lhs;
  std::string rhs;
};

// ---------------------------------------------------------------------------
// Instance pools.
// ---------------------------------------------------------------------------
namespace detail {

inline std::vector<std::string> variable_pool(std::size_t n) {
  static const char* kNames[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 4 ? kNames[i] : "v" + std::to_string(i));
  }
  return out;
}

inline std::vector<std::string> secondary_pool(std::size_t n) {
  static const char* kNames[] = {"u", "v"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 2 ? kNames[i] : "u" + std::to_string(i));
  }
  return out;
}

inline std::vector<Element> element_pool(std::size_t n) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                         : "d" + std::to_string(i));
  }
  return out;
}

inline ElementSet element_set(std::size_t n) {
  auto pool = element_pool(n);
  return ElementSet(pool.begin(), pool.end());
}

inline std::set<std::string> mask_subset(const std::vector<std::string>& pool,
                                         std::uint64_t mask) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if ((mask >> i) & 1u) out.insert(pool[i]);
  }
  return out;
}

inline void require_space(std::size_t space_size) {
  if (space_size > 20) {
    throw BudgetExceededError(
        "caps imply a content powerset too large to sweep exhaustively");
  }
}

inline std::string render_inline_tuples(const TupleSet& ts) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : ts) {
    if (!first) out += ",";
    out += render_inline(t);
    first = false;
  }
  return out + "}";
}

inline std::string render_inline_elements(const ElementSet& es) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : es) {
    if (!first) out += ",";
    out += e;
    first = false;
  }
  return out + "}";
}

inline ElementSet label_texts(const LabelSet& labels) {
  ElementSet out;
  for (const auto& l : labels) out.insert(l.text());
  return out;
}

}  // namespace detail

// Signatures fixed per claim family. Formula claims use predicates only (the
// term identities get their own symbols), so the instance spaces stay small
// while every connective is exercised.
inline Signature pair_claim_signature(const Caps& caps) {
  Signature sig;
  sig.predicates["p"] = std::min<std::size_t>(
      2, std::max<std::size_t>(1, caps.max_arity));
  sig.predicates["q"] = 1;
  return sig;
}

inline Signature atom_claim_signature(std::size_t arity) {
  Signature sig;
  sig.constants.insert("c");
  sig.functions["f"] = 1;
  sig.predicates["p"] = arity;
  return sig;
}

inline Signature enumeration_claim_signature(std::size_t arity) {
  Signature sig;
  sig.predicates["p"] = arity;
  return sig;
}

inline Signature term_claim_signature(std::size_t arity) {
  Signature sig;
  sig.constants.insert("c");
  sig.functions["h"] = 1;
  sig.functions["g"] = arity;
  return sig;
}

// All formulas of depth <= depth over variable-only atoms, in a fixed
// construction order. (At depth >= 3 some shapes repeat; redundant instances
// are harmless for auditing.)
inline std::vector<Formula> formula_pool(const Signature& sig,
                                         const std::vector<std::string>& vars,
                                         std::size_t depth) {
  std::vector<Formula> atoms;
  for (const auto& [p, arity] : sig.predicates) {
    std::vector<std::size_t> odo(arity, 0);
    while (true) {
      TermTuple args;
      for (std::size_t i = 0; i < arity; ++i) {
        args.push_back(Term::variable(vars[odo[i]]));
      }
      atoms.push_back(Formula::atom(p, std::move(args)));
      std::size_t i = arity;
      while (i-- > 0) {
        if (++odo[i] < vars.size()) break;
        odo[i] = 0;
        if (i == 0) odo.clear();
      }
      if (arity == 0 || odo.empty()) break;
    }
  }
  if (depth <= 1) return atoms;
  std::vector<Formula> prev = formula_pool(sig, vars, depth - 1);
  std::vector<Formula> out = prev;
  for (const auto& f : prev) out.push_back(Formula::negation(f));
  for (const auto& f0 : prev) {
    for (const auto& f1 : prev) {
      out.push_back(Formula::conjunction(f0, f1));
    }
  }
  for (const auto& f0 : prev) {
    for (const auto& f1 : prev) {
      out.push_back(Formula::disjunction(f0, f1));
    }
  }
  for (std::uint64_t mask = 1; mask < (1ull << vars.size()); ++mask) {
    std::vector<std::string> bound;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if ((mask >> i) & 1u) bound.push_back(vars[i]);
    }
    for (const auto& f : prev) out.push_back(Formula::exists(bound, f));
    for (const auto& f : prev) out.push_back(Formula::forall(bound, f));
  }
  if (out.size() > 10'000) {
    throw BudgetExceededError("formula pool too large for the given caps");
  }
  return out;
}

// Argument terms of depth <= 2: variables, the constants, and each listed
// unary function applied to every leaf.
inline std::vector<Term> term_pool(const std::vector<std::string>& vars,
                                   const std::set<std::string>& constants,
                                   const std::vector<std::string>& unary_fns) {
  std::vector<Term> leaves;
  for (const auto& v : vars) leaves.push_back(Term::variable(v));
  for (const auto& c : constants) leaves.push_back(Term::constant(c));
  std::vector<Term> out = leaves;
  for (const auto& f : unary_fns) {
    for (const auto& leaf : leaves) {
      out.push_back(Term::apply(f, {leaf}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkers. Each evaluates its identity exactly as catalogued; outcomes carry
// rendered sides only on failure.
// ---------------------------------------------------------------------------
namespace detail {

inline CheckOutcome equal_or_report(const Relation& lhs, const Relation& rhs,
                                    const std::string& lhs_name,
                                    const std::string& rhs_name) {
  if (lhs == rhs) return {};
  return {false, lhs_name + " = " + render_inline(lhs),
          rhs_name + " = " + render_inline(rhs)};
}

}  // namespace detail

inline CheckOutcome check_L1a(const FunctionTable& f, const TupleSet& s) {
  for (const auto& t : s) {
    if (!f.graph().contains(t)) {
      throw ClaimShapeError("subset tuple outside the function's source");
    }
  }
  TupleSet round = inverse_set_extension(f, set_extension(f, s));
  bool pass = std::includes(round.begin(), round.end(), s.begin(), s.end());
  if (pass) return {};
  return {false, "s = " + detail::render_inline_tuples(s),
          "f^-1(f(s)) = " + detail::render_inline_tuples(round)};
}

inline CheckOutcome check_L1b(const FunctionTable& f, const ElementSet& t) {
  for (const auto& e : t) {
    if (!f.domain().contains(e)) {
      throw ClaimShapeError("target subset outside the function's domain");
    }
  }
  ElementSet round = set_extension(f, inverse_set_extension(f, t));
  if (round == t) return {};
  return {false, "t = " + detail::render_inline_elements(t),
          "f(f^-1(t)) = " + detail::render_inline_elements(round)};
}

inline CheckOutcome check_L2(const Relation& r0, const Relation& r1) {
  if (r0.domain() != r1.domain()) {
    throw ClaimShapeError("operands must share the element domain");
  }
  LabelSet joint = r0.index_set();
  joint.insert(r1.index_set().begin(), r1.index_set().end());
  Relation c0 = cylinder(r0, joint);
  Relation c1 = cylinder(r1, joint);
  CheckOutcome meet = detail::equal_or_report(bowtie(r0, r1), c0 & c1,
                                              "R0 bowtie R1",
                                              "cyl(R0) meet cyl(R1)");
  if (!meet.pass) return meet;
  return detail::equal_or_report(oplus(r0, r1), c0 | c1, "R0 oplus R1",
                                 "cyl(R0) join cyl(R1)");
}

inline CheckOutcome check_L3a(const Relation& small, const LabelSet& big) {
  if (!std::includes(big.begin(), big.end(), small.index_set().begin(),
                     small.index_set().end())) {
    throw ClaimShapeError("index set is not contained in the cylinder target");
  }
  return detail::equal_or_report(
      small, project(cylinder(small, big), small.index_set()), "R'",
      "proj(cyl(R'))");
}

inline CheckOutcome check_L3b(const Relation& r, const LabelSet& sub) {
  if (!std::includes(r.index_set().begin(), r.index_set().end(), sub.begin(),
                     sub.end())) {
    throw ClaimShapeError("projection target is not a sub-index-set");
  }
  Relation back = cylinder(project(r, sub), r.index_set());
  if (subset(r, back)) return {};
  return {false, "R = " + render_inline(r),
          "cyl(proj(R)) = " + render_inline(back)};
}

inline CheckOutcome check_L4a(const LabelSet& s, const LabelSet& t) {
  if (s.empty() || t.empty()) {
    throw ClaimShapeError("both index sets must be nonempty");
  }
  ElementSet se = detail::label_texts(s);
  ElementSet te = detail::label_texts(t);
  return detail::equal_or_report(
      full_relation(s, se),
      compose(full_relation(s, te), full_relation(t, se)), "(S->S)",
      "(S->T) |> (T->S)");
}

inline CheckOutcome check_L4b(const LabelSet& s, const LabelSet& t) {
  if (s.empty() || t.empty()) {
    throw ClaimShapeError("both index sets must be nonempty");
  }
  ElementSet se = detail::label_texts(s);
  ElementSet te = detail::label_texts(t);
  Relation target = full_relation(s, te);
  CheckOutcome left = detail::equal_or_report(
      target, compose(full_relation(s, se), full_relation(s, te)), "(S->T)",
      "(S->S) |> (S->T)");
  if (!left.pass) return left;
  return detail::equal_or_report(
      target, compose(full_relation(s, te), full_relation(t, te)), "(S->T)",
      "(S->T) |> (T->T)");
}

inline CheckOutcome check_T1a(const Interpretation& interp, const Formula& f0,
                              const Formula& f1) {
  return detail::equal_or_report(
      denote_formula(Formula::conjunction(f0, f1), interp),
      bowtie(denote_formula(f0, interp), denote_formula(f1, interp)),
      "den(F0 & F1)", "den(F0) bowtie den(F1)");
}

inline CheckOutcome check_T1b(const Interpretation& interp, const Formula& f0,
                              const Formula& f1) {
  return detail::equal_or_report(
      denote_formula(Formula::disjunction(f0, f1), interp),
      oplus(denote_formula(f0, interp), denote_formula(f1, interp)),
      "den(F0 | F1)", "den(F0) oplus den(F1)");
}

inline CheckOutcome check_TypoT1(const Interpretation& interp,
                                 const Formula& f0, const Formula& f1) {
  Relation d0 = denote_formula(f0, interp);
  CheckOutcome conj = detail::equal_or_report(
      denote_formula(Formula::conjunction(f0, f1), interp), bowtie(d0, d0),
      "den(F0 & F1)", "den(F0) bowtie den(F0)");
  if (!conj.pass) return conj;
  return detail::equal_or_report(
      denote_formula(Formula::disjunction(f0, f1), interp), oplus(d0, d0),
      "den(F0 | F1)", "den(F0) oplus den(F0)");
}

inline CheckOutcome check_T1c(const Interpretation& interp, const Formula& f) {
  return detail::equal_or_report(
      denote_formula(Formula::negation(f), interp),
      complement(denote_formula(f, interp)), "den(!F)", "den(F)~");
}

inline CheckOutcome check_T2(const Interpretation& interp, const Formula& f,
                             const std::set<std::string>& vprime) {
  std::set<std::string> fv = free_vars(f);
  if (vprime.empty() ||
      !std::includes(fv.begin(), fv.end(), vprime.begin(), vprime.end())) {
    throw ClaimShapeError(
        "quantified set must be a nonempty subset of the free variables");
  }
  Formula quantified = Formula::exists(
      std::vector<std::string>(vprime.begin(), vprime.end()), f);
  LabelSet keep;
  for (const auto& v : fv) {
    if (!vprime.contains(v)) keep.insert(Label::name(v));
  }
  return detail::equal_or_report(denote_formula(quantified, interp),
                                 project(denote_formula(f, interp), keep),
                                 "den(exists V'. F)", "proj(den(F))");
}

namespace detail {

inline void require_atom_shape(const Signature& sig,
                               const Interpretation& interp,
                               const std::string& pred, const TermTuple& args) {
  auto it = sig.predicates.find(pred);
  if (it == sig.predicates.end() || it->second != args.size() ||
      args.empty()) {
    throw ClaimShapeError("predicate applied at an unsupported arity");
  }
  (void)interp.predicate(pred);
}

}  // namespace detail

inline CheckOutcome check_T3(const Signature& sig,
                             const Interpretation& interp,
                             const std::string& pred, const TermTuple& args) {
  detail::require_atom_shape(sig, interp, pred, args);
  std::size_t n = args.size();
  std::set<std::string> vars = term_vars(args);
  Relation lhs = denote_formula(Formula::atom(pred, args), interp);
  Relation meet = interp.predicate(pred) & denote_tuple(args, interp);
  ElementSet positions = detail::label_texts(index_labels(n));
  Relation v_to_n = full_relation(name_labels(vars), positions);
  return detail::equal_or_report(lhs, compose(v_to_n, meet), "den(p(ts))",
                                 "(V->n) |> (I(p) meet den(ts))");
}

inline CheckOutcome check_T4(const Signature& sig,
                             const Interpretation& interp,
                             const std::string& pred, const TermTuple& args) {
  detail::require_atom_shape(sig, interp, pred, args);
  std::size_t n = args.size();
  std::set<std::string> vars = term_vars(args);
  Relation atom_den = denote_formula(Formula::atom(pred, args), interp);
  // (n->V) is the empty function space when no argument variables exist; the
  // composition then has empty content over the right operand's domain.
  Relation lhs =
      vars.empty()
          ? Relation(index_labels(n), interp.universe, {})
          : compose(full_relation(index_labels(n),
                                  ElementSet(vars.begin(), vars.end())),
                    atom_den);
  Relation rhs = interp.predicate(pred) & denote_tuple(args, interp);
  return detail::equal_or_report(lhs, rhs, "(n->V) |> den(p(ts))",
                                 "I(p) meet den(ts)");
}

inline CheckOutcome check_C1(const Signature& sig, const Interpretation& interp,
                             const std::string& pred, const TermTuple& args) {
  detail::require_atom_shape(sig, interp, pred, args);
  std::set<std::string> vars;
  for (const auto& t : args) {
    if (t.kind() != Term::Kind::Variable || !vars.insert(t.name()).second) {
      throw ClaimShapeError("arguments must be distinct variables");
    }
  }
  Relation atom_den = denote_formula(Formula::atom(pred, args), interp);
  Relation lhs = compose(
      full_relation(index_labels(args.size()),
                    ElementSet(vars.begin(), vars.end())),
      atom_den);
  return detail::equal_or_report(lhs, interp.predicate(pred),
                                 "(n->V) |> den(p(xs))", "I(p)");
}

namespace detail {

inline bool all_variables(const TermTuple& args) {
  return std::all_of(args.begin(), args.end(), [](const Term& t) {
    return t.kind() == Term::Kind::Variable;
  });
}

}  // namespace detail

inline CheckOutcome check_T5(const Signature& sig, const Interpretation& interp,
                             const std::string& fun, const TermTuple& args,
                             bool flat) {
  auto it = sig.functions.find(fun);
  if (it == sig.functions.end() || it->second != args.size() || args.empty()) {
    throw ClaimShapeError("function applied at an unsupported arity");
  }
  if (flat != detail::all_variables(args)) {
    throw ClaimShapeError(flat ? "arguments must all be variables"
                               : "at least one argument must be composite");
  }
  const FunctionTable& fn = interp.function(fun);
  Term term = Term::apply(fun, args);
  std::set<std::string> vars = term_vars(args);
  FunctionTable den = denote_term(term, interp);
  Relation tuple_den = denote_tuple(args, interp);
  std::vector<Tuple> candidates;
  if (!vars.empty()) {
    candidates = full_tuple_space(index_labels(args.size()),
                                  ElementSet(vars.begin(), vars.end()));
  }
  for (const auto& [alpha, value] : den.graph()) {
    bool found = false;
    for (const auto& x : candidates) {
      Tuple routed = compose(x, alpha);
      if (tuple_den.contains(routed) && fn(routed) == value) {
        found = true;
        break;
      }
    }
    if (!found) {
      return {false,
              "den(" + print_term(term) + ")(" + render_inline(alpha) +
                  ") = " + value,
              "no x in (n->V) routes " + render_inline(alpha) +
                  " through I(" + fun + ") restricted to den(arguments)"};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Witness serialization. A witness is self-contained: version, claim, the
// full instance, and both rendered sides.
// ---------------------------------------------------------------------------
namespace detail {

inline Json witness_json(ClaimId id, Json instance, const CheckOutcome& out) {
  Json w;
  w["version"] = kToolVersion;
  w["claim"] = claim_name(id);
  w["instance"] = std::move(instance);
  w["lhs"] = out.lhs;
  w["rhs"] = out.rhs;
  return w;
}

inline Json fun_subset_json(const FunctionTable& f, const TupleSet& s) {
  Json j;
  j["f"] = to_json(f);
  Json rows = Json::array();
  for (const auto& t : s) rows.push_back(row_from_tuple(t));
  j["s"] = std::move(rows);
  return j;
}

inline Json fun_target_json(const FunctionTable& f, const ElementSet& t) {
  Json j;
  j["f"] = to_json(f);
  j["t"] = Json(std::vector<Element>(t.begin(), t.end()));
  return j;
}

inline Json rel_pair_json(const Relation& r0, const Relation& r1) {
  Json j;
  j["r0"] = to_json(r0);
  j["r1"] = to_json(r1);
  return j;
}

inline Json rel_labels_json(const Relation& r, const LabelSet& labels,
                            const char* key) {
  Json j;
  j["r"] = to_json(r);
  j[key] = to_json(labels);
  return j;
}

inline Json space_pair_json(const LabelSet& s, const LabelSet& t) {
  Json j;
  j["s"] = to_json(s);
  j["t"] = to_json(t);
  return j;
}

inline Json formula_instance_json(const Signature& sig,
                                  const Interpretation& interp,
                                  std::initializer_list<
                                      std::pair<const char*, std::string>>
                                      fields) {
  Json j;
  j["sig"] = to_json(sig);
  j["interp"] = to_json(interp);
  for (const auto& [key, value] : fields) j[key] = value;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive instance streams. Every stream visits a fixed, documented order
// and stops when the visitor returns false.
// ---------------------------------------------------------------------------
namespace detail {

inline void sweep_tables(const Caps& caps,
                         const std::function<bool(const FunctionTable&)>& visit) {
  auto vars = variable_pool(caps.max_vars);
  for (std::size_t d = 1; d <= caps.max_domain; ++d) {
    ElementSet domain = element_set(d);
    std::vector<Element> elems(domain.begin(), domain.end());
    for (std::uint64_t im = 0; im < (1ull << vars.size()); ++im) {
      LabelSet source = name_labels(mask_subset(vars, im));
      auto space = full_tuple_space(source, domain);
      require_space(space.size());
      std::uint64_t tables = 1;
      for (std::size_t i = 0; i < space.size(); ++i) tables *= elems.size();
      for (std::uint64_t code = 0; code < tables; ++code) {
        std::map<Tuple, Element> graph;
        std::uint64_t rest = code;
        for (const auto& row : space) {
          graph.emplace(row, elems[rest % elems.size()]);
          rest /= elems.size();
        }
        if (!visit(FunctionTable(source, domain, std::move(graph)))) return;
      }
    }
  }
}

inline std::vector<Relation> relation_pool(const Caps& caps) {
  auto vars = variable_pool(caps.max_vars);
  std::vector<Relation> out;
  for (std::size_t d = 1; d <= caps.max_domain; ++d) {
    ElementSet domain = element_set(d);
    for (std::uint64_t im = 0; im < (1ull << vars.size()); ++im) {
      LabelSet index = name_labels(mask_subset(vars, im));
      auto space = full_tuple_space(index, domain);
      require_space(space.size());
      for (std::uint64_t cm = 0; cm < (1ull << space.size()); ++cm) {
        TupleSet content;
        for (std::size_t b = 0; b < space.size(); ++b) {
          if ((cm >> b) & 1u) content.insert(space[b]);
        }
        out.push_back(Relation(index, domain, std::move(content)));
        if (out.size() > 5000) {
          throw BudgetExceededError("relation pool too large for the caps");
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The audit run.
// ---------------------------------------------------------------------------
struct ClaimResult {
  ClaimId id = ClaimId::L1a;
  Mode mode = Mode::Exhaustive;
  std::uint64_t checked = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  std::uint64_t violations = 0;
  std::optional<Json> witness;
  double wall_ms = 0.0;  // diagnostics only; never rendered into reports
};

struct AuditReport {
  Mode mode = Mode::Exhaustive;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  Caps caps;
  std::vector<ClaimResult> results;
};

namespace detail {

class ClaimRecorder {
 public:
  ClaimRecorder(ClaimId id, ClaimResult& result, bool scan_all)
      : id_(id), result_(result), scan_all_(scan_all) {}

  // Returns false when the sweep should stop.
  bool note(const CheckOutcome& out, const std::function<Json()>& instance) {
    ++result_.checked;
    if (!out.pass) {
      ++result_.violations;
      if (!result_.witness) {
        result_.witness = witness_json(id_, instance(), out);
      }
      result_.pass = false;
      if (!scan_all_) return false;
    }
    return true;
  }

 private:
  ClaimId id_;
  ClaimResult& result_;
  bool scan_all_;
};

// Random draw helpers shared by the randomized streams.
inline FunctionTable random_table(Xorshift64Star& rng, const Caps& caps) {
  auto vars = variable_pool(caps.max_vars);
  LabelSet source =
      name_labels(mask_subset(vars, rng.below(1ull << vars.size())));
  std::size_t d = 1 + static_cast<std::size_t>(rng.below(caps.max_domain));
  ElementSet domain = element_set(d);
  std::vector<Element> elems(domain.begin(), domain.end());
  std::map<Tuple, Element> graph;
  for (const auto& row : full_tuple_space(source, domain)) {
    graph.emplace(row, elems[rng.below(elems.size())]);
  }
  return FunctionTable(source, domain, std::move(graph));
}

inline Relation random_relation(Xorshift64Star& rng, const Caps& caps,
                                const ElementSet& domain) {
  auto vars = variable_pool(caps.max_vars);
  LabelSet index =
      name_labels(mask_subset(vars, rng.below(1ull << vars.size())));
  TupleSet content;
  for (const auto& row : full_tuple_space(index, domain)) {
    if (rng.coin()) content.insert(row);
  }
  return Relation(index, domain, std::move(content));
}

inline Interpretation random_audit_interpretation(Xorshift64Star& rng,
                                                  const Caps& caps,
                                                  const Signature& sig) {
  GeneratorConfig cfg;
  cfg.seed = rng.next();
  cfg.max_universe = caps.max_domain;
  cfg.signature = sig;
  return random_interpretation(cfg);
}

// An open random formula: redraw while every variable ends up bound.
inline Formula random_open_formula(Xorshift64Star& rng, const Signature& sig,
                                   const std::vector<std::string>& vars,
                                   std::size_t depth) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Formula f = random_formula(rng, sig, vars, depth);
    if (!free_vars(f).empty()) return f;
  }
  return random_atom(rng, sig, vars, 1);
}

inline TermTuple random_term_tuple(Xorshift64Star& rng, const Signature& sig,
                                   const std::vector<std::string>& vars,
                                   std::size_t arity) {
  TermTuple out;
  for (std::size_t i = 0; i < arity; ++i) {
    out.push_back(random_term(rng, sig, vars, 2));
  }
  return out;
}

}  // namespace detail

inline void run_claim(ClaimId id, Mode mode, std::uint64_t budget,
                      std::uint64_t run_seed, const Caps& caps, bool scan_all,
                      ClaimResult& result) {
  result.id = id;
  result.mode = mode;
  result.seed = run_seed;
  detail::ClaimRecorder rec(id, result, scan_all);
  // Independent stream per claim, stable under claim-set selection.
  Xorshift64Star rng(run_seed ^ static_cast<std::uint64_t>(claim_ordinal(id)));
  auto vars = detail::variable_pool(caps.max_vars);

  auto formula_claim_random = [&](auto&& body) {
    Signature sig = pair_claim_signature(caps);
    for (std::uint64_t i = 0; i < budget; ++i) {
      Interpretation interp =
          detail::random_audit_interpretation(rng, caps, sig);
      if (!body(sig, interp)) return;
    }
  };

  auto formula_claim_exhaustive = [&](std::size_t pool_depth, auto&& body) {
    Signature sig = pair_claim_signature(caps);
    auto pool = formula_pool(sig, vars, pool_depth);
    for (std::size_t d = 1; d <= caps.max_domain; ++d) {
      bool go = true;
      for_each_interpretation(sig, detail::element_set(d),
                              [&](const Interpretation& interp) {
                                go = body(sig, interp, pool);
                                return go;
                              });
      if (!go) return;
    }
  };

  std::size_t child_depth = caps.max_depth >= 2 ? caps.max_depth - 1 : 1;

  switch (id) {
    case ClaimId::L1a: {
      if (mode == Mode::Exhaustive) {
        detail::sweep_tables(caps, [&](const FunctionTable& f) {
          auto space = full_tuple_space(f.source_index_set(), f.domain());
          detail::require_space(space.size());
          for (std::uint64_t sm = 0; sm < (1ull << space.size()); ++sm) {
            TupleSet s;
            for (std::size_t b = 0; b < space.size(); ++b) {
              if ((sm >> b) & 1u) s.insert(space[b]);
            }
            if (!rec.note(check_L1a(f, s),
                          [&] { return detail::fun_subset_json(f, s); })) {
              return false;
            }
          }
          return true;
        });
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          FunctionTable f = detail::random_table(rng, caps);
          TupleSet s;
          for (const auto& [row, v] : f.graph()) {
            if (rng.coin()) s.insert(row);
          }
          if (!rec.note(check_L1a(f, s),
                        [&] { return detail::fun_subset_json(f, s); })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::L1b: {
      if (mode == Mode::Exhaustive) {
        detail::sweep_tables(caps, [&](const FunctionTable& f) {
          std::vector<Element> elems(f.domain().begin(), f.domain().end());
          for (std::uint64_t tm = 0; tm < (1ull << elems.size()); ++tm) {
            ElementSet t;
            for (std::size_t b = 0; b < elems.size(); ++b) {
              if ((tm >> b) & 1u) t.insert(elems[b]);
            }
            if (!rec.note(check_L1b(f, t),
                          [&] { return detail::fun_target_json(f, t); })) {
              return false;
            }
          }
          return true;
        });
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          FunctionTable f = detail::random_table(rng, caps);
          ElementSet t;
          for (const auto& e : f.domain()) {
            if (rng.coin()) t.insert(e);
          }
          if (!rec.note(check_L1b(f, t),
                        [&] { return detail::fun_target_json(f, t); })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::L2: {
      if (mode == Mode::Exhaustive) {
        auto pool = detail::relation_pool(caps);
        for (const auto& r0 : pool) {
          for (const auto& r1 : pool) {
            if (r0.domain() != r1.domain()) continue;
            if (!rec.note(check_L2(r0, r1),
                          [&] { return detail::rel_pair_json(r0, r1); })) {
              return;
            }
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          ElementSet domain = detail::element_set(
              1 + static_cast<std::size_t>(rng.below(caps.max_domain)));
          Relation r0 = detail::random_relation(rng, caps, domain);
          Relation r1 = detail::random_relation(rng, caps, domain);
          if (!rec.note(check_L2(r0, r1),
                        [&] { return detail::rel_pair_json(r0, r1); })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::L3a: {
      if (mode == Mode::Exhaustive) {
        for (std::size_t d = 1; d <= caps.max_domain; ++d) {
          ElementSet domain = detail::element_set(d);
          for (std::uint64_t big = 0; big < (1ull << vars.size()); ++big) {
            LabelSet big_set = name_labels(detail::mask_subset(vars, big));
            for (std::uint64_t sub = 0; sub < (1ull << vars.size()); ++sub) {
              if ((sub & ~big) != 0) continue;
              LabelSet sub_set = name_labels(detail::mask_subset(vars, sub));
              auto space = full_tuple_space(sub_set, domain);
              detail::require_space(space.size());
              for (std::uint64_t cm = 0; cm < (1ull << space.size()); ++cm) {
                TupleSet content;
                for (std::size_t b = 0; b < space.size(); ++b) {
                  if ((cm >> b) & 1u) content.insert(space[b]);
                }
                Relation small(sub_set, domain, std::move(content));
                if (!rec.note(check_L3a(small, big_set), [&] {
                      return detail::rel_labels_json(small, big_set, "big");
                    })) {
                  return;
                }
              }
            }
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          ElementSet domain = detail::element_set(
              1 + static_cast<std::size_t>(rng.below(caps.max_domain)));
          std::uint64_t big = rng.below(1ull << vars.size());
          std::uint64_t sub = rng.below(1ull << vars.size()) & big;
          LabelSet big_set = name_labels(detail::mask_subset(vars, big));
          LabelSet sub_set = name_labels(detail::mask_subset(vars, sub));
          TupleSet content;
          for (const auto& row : full_tuple_space(sub_set, domain)) {
            if (rng.coin()) content.insert(row);
          }
          Relation small(sub_set, domain, std::move(content));
          if (!rec.note(check_L3a(small, big_set), [&] {
                return detail::rel_labels_json(small, big_set, "big");
              })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::L3b: {
      if (mode == Mode::Exhaustive) {
        for (std::size_t d = 1; d <= caps.max_domain; ++d) {
          ElementSet domain = detail::element_set(d);
          for (std::uint64_t big = 0; big < (1ull << vars.size()); ++big) {
            LabelSet big_set = name_labels(detail::mask_subset(vars, big));
            auto space = full_tuple_space(big_set, domain);
            detail::require_space(space.size());
            for (std::uint64_t cm = 0; cm < (1ull << space.size()); ++cm) {
              TupleSet content;
              for (std::size_t b = 0; b < space.size(); ++b) {
                if ((cm >> b) & 1u) content.insert(space[b]);
              }
              Relation rel(big_set, domain, std::move(content));
              for (std::uint64_t sub = 0; sub < (1ull << vars.size()); ++sub) {
                if ((sub & ~big) != 0) continue;
                LabelSet sub_set = name_labels(detail::mask_subset(vars, sub));
                if (!rec.note(check_L3b(rel, sub_set), [&] {
                      return detail::rel_labels_json(rel, sub_set, "sub");
                    })) {
                  return;
                }
              }
            }
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          ElementSet domain = detail::element_set(
              1 + static_cast<std::size_t>(rng.below(caps.max_domain)));
          std::uint64_t big = rng.below(1ull << vars.size());
          std::uint64_t sub = rng.below(1ull << vars.size()) & big;
          LabelSet big_set = name_labels(detail::mask_subset(vars, big));
          LabelSet sub_set = name_labels(detail::mask_subset(vars, sub));
          TupleSet content;
          for (const auto& row : full_tuple_space(big_set, domain)) {
            if (rng.coin()) content.insert(row);
          }
          Relation rel(big_set, domain, std::move(content));
          if (!rec.note(check_L3b(rel, sub_set), [&] {
                return detail::rel_labels_json(rel, sub_set, "sub");
              })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::L4a:
    case ClaimId::L4b: {
      auto check = id == ClaimId::L4a ? check_L4a : check_L4b;
      auto second = detail::secondary_pool(caps.max_vars);
      if (mode == Mode::Exhaustive) {
        for (std::size_t ns = 1; ns <= caps.max_vars; ++ns) {
          LabelSet s = name_labels(
              std::set<std::string>(vars.begin(), vars.begin() + ns));
          for (std::size_t nt = 1; nt <= caps.max_vars; ++nt) {
            LabelSet t = name_labels(
                std::set<std::string>(second.begin(), second.begin() + nt));
            if (!rec.note(check(s, t),
                          [&] { return detail::space_pair_json(s, t); })) {
              return;
            }
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          std::size_t ns = 1 + static_cast<std::size_t>(rng.below(caps.max_vars));
          std::size_t nt = 1 + static_cast<std::size_t>(rng.below(caps.max_vars));
          LabelSet s = name_labels(
              std::set<std::string>(vars.begin(), vars.begin() + ns));
          LabelSet t = name_labels(
              std::set<std::string>(second.begin(), second.begin() + nt));
          if (!rec.note(check(s, t),
                        [&] { return detail::space_pair_json(s, t); })) {
            return;
          }
        }
      }
      break;
    }
    case ClaimId::T1a:
    case ClaimId::T1b:
    case ClaimId::TypoT1: {
      auto check = id == ClaimId::T1a   ? check_T1a
                   : id == ClaimId::T1b ? check_T1b
                                        : check_TypoT1;
      auto note_pair = [&](const Signature& sig, const Interpretation& interp,
                           const Formula& f0, const Formula& f1) {
        return rec.note(check(interp, f0, f1), [&] {
          return detail::formula_instance_json(
              sig, interp,
              {{"f0", print_formula(f0)}, {"f1", print_formula(f1)}});
        });
      };
      if (mode == Mode::Exhaustive) {
        formula_claim_exhaustive(
            child_depth, [&](const Signature& sig, const Interpretation& interp,
                             const std::vector<Formula>& pool) {
              for (const auto& f0 : pool) {
                for (const auto& f1 : pool) {
                  if (!note_pair(sig, interp, f0, f1)) return false;
                }
              }
              return true;
            });
      } else {
        formula_claim_random([&](const Signature& sig,
                                 const Interpretation& interp) {
          Formula f0 = random_formula(rng, sig, vars, child_depth);
          Formula f1 = random_formula(rng, sig, vars, child_depth);
          return note_pair(sig, interp, f0, f1);
        });
      }
      break;
    }
    case ClaimId::T1c: {
      auto note_one = [&](const Signature& sig, const Interpretation& interp,
                          const Formula& f) {
        return rec.note(check_T1c(interp, f), [&] {
          return detail::formula_instance_json(sig, interp,
                                               {{"f", print_formula(f)}});
        });
      };
      if (mode == Mode::Exhaustive) {
        formula_claim_exhaustive(
            child_depth, [&](const Signature& sig, const Interpretation& interp,
                             const std::vector<Formula>& pool) {
              for (const auto& f : pool) {
                if (!note_one(sig, interp, f)) return false;
              }
              return true;
            });
      } else {
        formula_claim_random(
            [&](const Signature& sig, const Interpretation& interp) {
              return note_one(sig, interp,
                              random_formula(rng, sig, vars, child_depth));
            });
      }
      break;
    }
    case ClaimId::T2: {
      auto note_one = [&](const Signature& sig, const Interpretation& interp,
                          const Formula& f, const std::set<std::string>& vp) {
        return rec.note(check_T2(interp, f, vp), [&] {
          Json j = detail::formula_instance_json(sig, interp,
                                                 {{"f", print_formula(f)}});
          j["vprime"] = Json(std::vector<std::string>(vp.begin(), vp.end()));
          return j;
        });
      };
      if (mode == Mode::Exhaustive) {
        formula_claim_exhaustive(
            child_depth, [&](const Signature& sig, const Interpretation& interp,
                             const std::vector<Formula>& pool) {
              for (const auto& f : pool) {
                std::vector<std::string> fv_list;
                for (const auto& v : free_vars(f)) fv_list.push_back(v);
                for (std::uint64_t mask = 1;
                     mask < (1ull << fv_list.size()); ++mask) {
                  std::set<std::string> vp;
                  for (std::size_t b = 0; b < fv_list.size(); ++b) {
                    if ((mask >> b) & 1u) vp.insert(fv_list[b]);
                  }
                  if (!note_one(sig, interp, f, vp)) return false;
                }
              }
              return true;
            });
      } else {
        formula_claim_random([&](const Signature& sig,
                                 const Interpretation& interp) {
          Formula f = detail::random_open_formula(rng, sig, vars, child_depth);
          std::set<std::string> fv = free_vars(f);
          std::vector<std::string> fv_list(fv.begin(), fv.end());
          std::set<std::string> vp;
          for (const auto& v : fv_list) {
            if (rng.coin()) vp.insert(v);
          }
          if (vp.empty()) vp.insert(fv_list[rng.below(fv_list.size())]);
          return note_one(sig, interp, f, vp);
        });
      }
      break;
    }
    case ClaimId::T3:
    case ClaimId::T4: {
      auto check = id == ClaimId::T3 ? check_T3 : check_T4;
      auto note_atom = [&](const Signature& sig, const Interpretation& interp,
                           const TermTuple& args) {
        return rec.note(check(sig, interp, "p", args), [&] {
          Json j = detail::formula_instance_json(sig, interp, {});
          j["pred"] = "p";
          Json arg_list = Json::array();
          for (const auto& t : args) arg_list.push_back(print_term(t));
          j["args"] = std::move(arg_list);
          return j;
        });
      };
      if (mode == Mode::Exhaustive) {
        auto pool = term_pool(vars, {"c"}, {"f"});
        for (std::size_t n = 1; n <= caps.max_arity; ++n) {
          Signature sig = atom_claim_signature(n);
          for (std::size_t d = 1; d <= caps.max_domain; ++d) {
            bool go = true;
            for_each_interpretation(
                sig, detail::element_set(d), [&](const Interpretation& interp) {
                  std::vector<std::size_t> odo(n, 0);
                  while (true) {
                    TermTuple args;
                    for (std::size_t i = 0; i < n; ++i) {
                      args.push_back(pool[odo[i]]);
                    }
                    if (!note_atom(sig, interp, args)) {
                      go = false;
                      return false;
                    }
                    std::size_t i = n;
                    while (i-- > 0) {
                      if (++odo[i] < pool.size()) break;
                      odo[i] = 0;
                      if (i == 0) return true;
                    }
                  }
                });
            if (!go) return;
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          std::size_t n = 1 + static_cast<std::size_t>(rng.below(caps.max_arity));
          Signature sig = atom_claim_signature(n);
          Interpretation interp =
              detail::random_audit_interpretation(rng, caps, sig);
          TermTuple args = detail::random_term_tuple(rng, sig, vars, n);
          if (!note_atom(sig, interp, args)) return;
        }
      }
      break;
    }
    case ClaimId::C1: {
      auto note_c1 = [&](const Signature& sig, const Interpretation& interp,
                         const TermTuple& args) {
        return rec.note(check_C1(sig, interp, "p", args), [&] {
          Json j = detail::formula_instance_json(sig, interp, {});
          j["pred"] = "p";
          Json arg_list = Json::array();
          for (const auto& t : args) arg_list.push_back(print_term(t));
          j["args"] = std::move(arg_list);
          return j;
        });
      };
      std::size_t max_n = std::min(caps.max_arity, caps.max_vars);
      if (mode == Mode::Exhaustive) {
        for (std::size_t n = 1; n <= max_n; ++n) {
          Signature sig = enumeration_claim_signature(n);
          for (std::size_t d = 1; d <= caps.max_domain; ++d) {
            bool go = true;
            for_each_interpretation(
                sig, detail::element_set(d), [&](const Interpretation& interp) {
                  std::vector<std::size_t> odo(n, 0);
                  while (true) {
                    bool distinct = true;
                    for (std::size_t i = 0; i < n && distinct; ++i) {
                      for (std::size_t j = i + 1; j < n; ++j) {
                        if (odo[i] == odo[j]) {
                          distinct = false;
                          break;
                        }
                      }
                    }
                    if (distinct) {
                      TermTuple args;
                      for (std::size_t i = 0; i < n; ++i) {
                        args.push_back(Term::variable(vars[odo[i]]));
                      }
                      if (!note_c1(sig, interp, args)) {
                        go = false;
                        return false;
                      }
                    }
                    std::size_t i = n;
                    while (i-- > 0) {
                      if (++odo[i] < vars.size()) break;
                      odo[i] = 0;
                      if (i == 0) return true;
                    }
                  }
                });
            if (!go) return;
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
          Signature sig = enumeration_claim_signature(n);
          Interpretation interp =
              detail::random_audit_interpretation(rng, caps, sig);
          std::vector<std::size_t> picks;
          while (picks.size() < n) {
            std::size_t candidate =
                static_cast<std::size_t>(rng.below(vars.size()));
            if (std::find(picks.begin(), picks.end(), candidate) ==
                picks.end()) {
              picks.push_back(candidate);
            }
          }
          TermTuple args;
          for (std::size_t k : picks) args.push_back(Term::variable(vars[k]));
          if (!note_c1(sig, interp, args)) return;
        }
      }
      break;
    }
    case ClaimId::T5flat:
    case ClaimId::T5nested: {
      bool flat = id == ClaimId::T5flat;
      auto note_term = [&](const Signature& sig, const Interpretation& interp,
                           const TermTuple& args) {
        return rec.note(check_T5(sig, interp, "g", args, flat), [&] {
          Json j = detail::formula_instance_json(sig, interp, {});
          j["fun"] = "g";
          Json arg_list = Json::array();
          for (const auto& t : args) arg_list.push_back(print_term(t));
          j["args"] = std::move(arg_list);
          return j;
        });
      };
      if (mode == Mode::Exhaustive) {
        auto pool = term_pool(vars, {"c"}, {"h"});
        for (std::size_t n = 1; n <= caps.max_arity; ++n) {
          Signature sig = term_claim_signature(n);
          for (std::size_t d = 1; d <= caps.max_domain; ++d) {
            bool go = true;
            for_each_interpretation(
                sig, detail::element_set(d), [&](const Interpretation& interp) {
                  std::vector<std::size_t> odo(n, 0);
                  while (true) {
                    TermTuple args;
                    for (std::size_t i = 0; i < n; ++i) {
                      args.push_back(pool[odo[i]]);
                    }
                    if (detail::all_variables(args) == flat) {
                      if (!note_term(sig, interp, args)) {
                        go = false;
                        return false;
                      }
                    }
                    std::size_t i = n;
                    while (i-- > 0) {
                      if (++odo[i] < pool.size()) break;
                      odo[i] = 0;
                      if (i == 0) return true;
                    }
                  }
                });
            if (!go) return;
          }
        }
      } else {
        for (std::uint64_t i = 0; i < budget; ++i) {
          std::size_t n = 1 + static_cast<std::size_t>(rng.below(caps.max_arity));
          Signature sig = term_claim_signature(n);
          // Arguments draw only on the nesting symbols, never the outer one.
          Signature arg_sig = sig;
          arg_sig.functions.erase("g");
          Interpretation interp =
              detail::random_audit_interpretation(rng, caps, sig);
          TermTuple args;
          if (flat) {
            for (std::size_t k = 0; k < n; ++k) {
              args.push_back(Term::variable(vars[rng.below(vars.size())]));
            }
          } else {
            for (int attempt = 0; attempt < 1000; ++attempt) {
              args = detail::random_term_tuple(rng, arg_sig, vars, n);
              if (!detail::all_variables(args)) break;
            }
            if (detail::all_variables(args)) args[0] = Term::constant("c");
          }
          if (!note_term(sig, interp, args)) return;
        }
      }
      break;
    }
  }
}

inline AuditReport run_audit(const std::set<ClaimId>& claims, Mode mode,
                             std::uint64_t budget, std::uint64_t seed,
                             const Caps& caps = {}, bool scan_all = false) {
  if (budget < 1) throw InvariantError("audit budget must be at least 1");
  AuditReport report;
  report.mode = mode;
  report.budget = budget;
  report.seed = seed;
  report.caps = caps;
  for (ClaimId id : kAllClaims) {
    if (!claims.contains(id)) continue;
    ClaimResult result;
    auto start = std::chrono::steady_clock::now();
    run_claim(id, mode, budget, seed, caps, scan_all, result);
    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    report.results.push_back(std::move(result));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Replay: re-evaluate a recorded witness. FailReproduced confirms the
// counterexample; Stale marks a witness whose sides now agree.
// ---------------------------------------------------------------------------
enum class ReplayOutcome { FailReproduced, Stale };

inline ReplayOutcome replay(const Json& witness) {
  if (!witness.contains("version") ||
      witness.at("version").get<std::string>() != kToolVersion) {
    throw VersionMismatchError("witness was produced by a different version");
  }
  ClaimId id = claim_from_name(witness.at("claim").get<std::string>());
  const Json& inst = witness.at("instance");
  CheckOutcome out;
  switch (id) {
    case ClaimId::L1a: {
      FunctionTable f = table_from_json(inst.at("f"));
      TupleSet s;
      for (const auto& row : inst.at("s")) {
        s.insert(tuple_from_row(f.source_index_set(), row));
      }
      out = check_L1a(f, s);
      break;
    }
    case ClaimId::L1b: {
      FunctionTable f = table_from_json(inst.at("f"));
      ElementSet t;
      for (const auto& e : inst.at("t")) t.insert(e.get<Element>());
      out = check_L1b(f, t);
      break;
    }
    case ClaimId::L2:
      out = check_L2(relation_from_json(inst.at("r0")),
                     relation_from_json(inst.at("r1")));
      break;
    case ClaimId::L3a:
      out = check_L3a(relation_from_json(inst.at("r")),
                      labels_from_json(inst.at("big")));
      break;
    case ClaimId::L3b:
      out = check_L3b(relation_from_json(inst.at("r")),
                      labels_from_json(inst.at("sub")));
      break;
    case ClaimId::L4a:
      out = check_L4a(labels_from_json(inst.at("s")),
                      labels_from_json(inst.at("t")));
      break;
    case ClaimId::L4b:
      out = check_L4b(labels_from_json(inst.at("s")),
                      labels_from_json(inst.at("t")));
      break;
    case ClaimId::T1a:
    case ClaimId::T1b:
    case ClaimId::TypoT1: {
      Signature sig = signature_from_json(inst.at("sig"));
      Interpretation interp = interpretation_from_json(inst.at("interp"), sig);
      Formula f0 = parse_formula(inst.at("f0").get<std::string>(), sig);
      Formula f1 = parse_formula(inst.at("f1").get<std::string>(), sig);
      out = id == ClaimId::T1a   ? check_T1a(interp, f0, f1)
            : id == ClaimId::T1b ? check_T1b(interp, f0, f1)
                                 : check_TypoT1(interp, f0, f1);
      break;
    }
    case ClaimId::T1c: {
      Signature sig = signature_from_json(inst.at("sig"));
      Interpretation interp = interpretation_from_json(inst.at("interp"), sig);
      out = check_T1c(interp,
                      parse_formula(inst.at("f").get<std::string>(), sig));
      break;
    }
    case ClaimId::T2: {
      Signature sig = signature_from_json(inst.at("sig"));
      Interpretation interp = interpretation_from_json(inst.at("interp"), sig);
      Formula f = parse_formula(inst.at("f").get<std::string>(), sig);
      std::set<std::string> vp;
      for (const auto& v : inst.at("vprime")) vp.insert(v.get<std::string>());
      out = check_T2(interp, f, vp);
      break;
    }
    case ClaimId::T3:
    case ClaimId::T4:
    case ClaimId::C1: {
      Signature sig = signature_from_json(inst.at("sig"));
      Interpretation interp = interpretation_from_json(inst.at("interp"), sig);
      TermTuple args;
      for (const auto& t : inst.at("args")) {
        args.push_back(parse_term(t.get<std::string>(), sig));
      }
      std::string pred = inst.at("pred").get<std::string>();
      out = id == ClaimId::T3   ? check_T3(sig, interp, pred, args)
            : id == ClaimId::T4 ? check_T4(sig, interp, pred, args)
                                : check_C1(sig, interp, pred, args);
      break;
    }
    case ClaimId::T5flat:
    case ClaimId::T5nested: {
      Signature sig = signature_from_json(inst.at("sig"));
      Interpretation interp = interpretation_from_json(inst.at("interp"), sig);
      TermTuple args;
      for (const auto& t : inst.at("args")) {
        args.push_back(parse_term(t.get<std::string>(), sig));
      }
      out = check_T5(sig, interp, inst.at("fun").get<std::string>(), args,
                     id == ClaimId::T5flat);
      break;
    }
  }
  return out.pass ? ReplayOutcome::Stale : ReplayOutcome::FailReproduced;
}

// ---------------------------------------------------------------------------
// Report and findings rendering. Both are pure functions of the report so
// reruns are byte-identical; wall times never appear here.
// ---------------------------------------------------------------------------
inline std::string render_report(const AuditReport& report) {
  std::string out;
  for (const auto& r : report.results) {
    out += "CLAIM\t" + claim_name(r.id) + "\tMODE\t" + mode_name(r.mode) +
           "\tN\t" + std::to_string(r.checked) + "\tSEED\t" +
           std::to_string(r.seed) + "\tVERDICT\t" + (r.pass ? "PASS" : "FAIL");
    if (r.witness) {
      out += "\tWITNESS\t" + r.witness->dump();
    }
    out += "\n";
  }
  return out;
}

inline std::string render_findings(const AuditReport& report) {
  std::string out;
  out += "# Findings\n\n";
  out += "Claim-by-claim audit of the relation-algebra and denotation "
         "identities\nthis engine is built around, on small finite "
         "instances. Every checker\nevaluates both sides of its identity "
         "literally; a FAIL records the first\ncounterexample found, and "
         "replaying a counterexample reproduces the\nfailure.\n\n";
  out += "- mode: " + mode_name(report.mode) + "\n";
  out += "- seed: " + std::to_string(report.seed) + "\n";
  if (report.mode == Mode::Random) {
    out += "- instances per claim: " + std::to_string(report.budget) + "\n";
  }
  out += "- caps: domain size <= " + std::to_string(report.caps.max_domain) +
         ", variables <= " + std::to_string(report.caps.max_vars) +
         ", arity <= " + std::to_string(report.caps.max_arity) +
         ", formula depth <= " + std::to_string(report.caps.max_depth) +
         "\n\n";
  out += "| Claim | Identity | Instances | Verdict |\n";
  out += "|-------|----------|-----------|---------|\n";
  for (const auto& r : report.results) {
    out += "| " + claim_name(r.id) + " | " + claim_identity(r.id) + " | " +
           std::to_string(r.checked) + " | " + (r.pass ? "PASS" : "FAIL") +
           " |\n";
  }
  bool any_fail = false;
  for (const auto& r : report.results) any_fail |= !r.pass;
  if (any_fail) {
    out += "\n## Counterexamples\n";
    for (const auto& r : report.results) {
      if (r.pass || !r.witness) continue;
      out += "\n### " + claim_name(r.id) + "\n\n";
      out += "Identity: " + claim_identity(r.id) + "\n\n";
      out += "- left: `" + r.witness->at("lhs").get<std::string>() + "`\n";
      out += "- right: `" + r.witness->at("rhs").get<std::string>() + "`\n";
      out += "- instance: `" + r.witness->at("instance").dump() + "`\n";
    }
  }
  out += "\nRegenerate with: `relsem audit --claims all --mode " +
         mode_name(report.mode) + " --seed " + std::to_string(report.seed) +
         "`\n";
  return out;
}

}  // namespace relsem::audit

#endif  // RELSEM_AUDIT_HPP
