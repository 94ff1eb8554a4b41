#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "relsem/direct.hpp"

using namespace relsem;
using testutil::lbls;
using testutil::tup;

namespace {

// D = {a,b}, c = a, f = swap, p = {(a,b),(b,a)}, q = {a}.
const char* kSwap =
    "domain: a b\n"
    "const c = a\n"
    "func f/1 = { (a)->b (b)->a }\n"
    "pred p/2 = { (a,b) (b,a) }\n"
    "pred q/1 = { (a) }\n";

Signature swap_sig() {
  return testutil::sig({"c"}, {{"p", 2}, {"q", 1}}, {{"f", 1}});
}

Interpretation swap_interp() { return load_structure(kSwap, swap_sig()); }

}  // namespace

TEST_CASE("term evaluation") {
  Interpretation interp = swap_interp();
  CHECK(eval_term(Term::constant("c"), interp, Tuple()) == "a");
  CHECK(eval_term(Term::apply("f", {Term::variable("x")}), interp,
                  tup({{"x", "a"}})) == "b");
  CHECK_THROWS_AS(eval_term(Term::variable("x"), interp, Tuple()),
                  UnboundVariableError);
  // Extra bindings are ignored.
  CHECK(eval_term(Term::variable("x"), interp,
                  tup({{"x", "b"}, {"y", "a"}})) == "b");
}

TEST_CASE("tuple evaluation is componentwise") {
  Interpretation interp = swap_interp();
  TermTuple xx = {Term::variable("x"), Term::variable("x")};
  CHECK(eval_tuple(xx, interp, tup({{"x", "a"}})) ==
        tup({{"0", "a"}, {"1", "a"}}));

  TermTuple cf = {Term::constant("c"), Term::apply("f", {Term::variable("x")})};
  CHECK(eval_tuple(cf, interp, tup({{"x", "a"}})) ==
        tup({{"0", "a"}, {"1", "b"}}));

  CHECK(eval_tuple({}, interp, Tuple()) == Tuple());
}

TEST_CASE("satisfaction") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  Formula pxy = parse_formula("p(x,y)", sg);
  CHECK(satisfies(pxy, interp, tup({{"x", "a"}, {"y", "b"}})));
  CHECK_FALSE(satisfies(pxy, interp, tup({{"x", "a"}, {"y", "a"}})));

  Formula some = parse_formula("exists y. p(x,y)", sg);
  CHECK(satisfies(some, interp, tup({{"x", "a"}})));
  CHECK(satisfies(some, interp, tup({{"x", "b"}})));

  Formula no_diag = parse_formula("forall x. p(x,x)", sg);
  CHECK_FALSE(satisfies(no_diag, interp, Tuple()));
  Formula mirror = parse_formula("forall x. (exists y. p(x,y))", sg);
  CHECK(satisfies(mirror, interp, Tuple()));
}

TEST_CASE("formula denotation by enumeration") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();

  Relation truth = denote_formula(parse_formula("exists x. q(x)", sg), interp);
  CHECK(truth.index_set().empty());
  CHECK(truth.truth());

  Relation rows = denote_formula(parse_formula("p(x,y)", sg), interp);
  CHECK(rows == testutil::rel({"x", "y"}, {"a", "b"},
                              {{"a", "b"}, {"b", "a"}}));

  Relation none =
      denote_formula(parse_formula("q(x) & !q(x)", sg), interp);
  CHECK(none.index_set() == lbls({"x"}));
  CHECK(none.content().empty());
}

TEST_CASE("term denotation tables") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();

  FunctionTable identity = denote_term(parse_term("x", sg), interp);
  CHECK(identity(tup({{"x", "a"}})) == "a");
  CHECK(identity(tup({{"x", "b"}})) == "b");

  FunctionTable constant = denote_term(parse_term("c", sg), interp);
  CHECK(constant.graph().size() == 1);
  CHECK(constant(Tuple()) == "a");

  FunctionTable swapped = denote_term(parse_term("f(x)", sg), interp);
  CHECK(swapped(tup({{"x", "a"}})) == "b");
  CHECK(swapped(tup({{"x", "b"}})) == "a");
}

TEST_CASE("tuple denotations: diagonal, full space, singleton") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();

  TermTuple diag = {Term::variable("x"), Term::variable("x"),
                    Term::variable("x")};
  CHECK(denote_tuple(diag, interp) ==
        testutil::rel({"0", "1", "2"}, {"a", "b"},
                      {{"a", "a", "a"}, {"b", "b", "b"}}));

  TermTuple open = {Term::variable("x"), Term::variable("y"),
                    Term::variable("z")};
  Relation all = denote_tuple(open, interp);
  CHECK(all.content().size() == 8);
  CHECK(all == full_relation(lbls({"0", "1", "2"}), interp.universe));

  TermTuple just_c = {Term::constant("c")};
  CHECK(denote_tuple(just_c, interp) ==
        testutil::rel({"0"}, {"a", "b"}, {{"a"}}));
}

TEST_CASE("budget guard trips on oversized enumerations") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  Formula wide = parse_formula("p(v1,v2) & p(v3,v4)", sg);
  CHECK_THROWS_AS(denote_formula(wide, interp, 8), BudgetExceededError);
}

TEST_CASE("property: satisfaction matches denotation membership") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  std::vector<Formula> corpus = {
      parse_formula("p(x,y)", sg),
      parse_formula("p(x,y) & q(y)", sg),
      parse_formula("!p(x,y) | q(x)", sg),
      parse_formula("exists x. p(x,y)", sg),
      parse_formula("forall y. (p(x,y) | q(y))", sg),
  };
  for (const auto& f : corpus) {
    Relation den = denote_formula(f, interp);
    for (const auto& alpha : all_assignments(free_vars(f), interp.universe)) {
      CHECK(satisfies(f, interp, alpha) == den.contains(alpha));
    }
  }
}

TEST_CASE("property: application evaluates through the tuple clause") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  TermTuple inner = {Term::apply("f", {Term::variable("x")})};
  Term whole = Term::apply("f", inner);
  for (const auto& alpha : all_assignments({"x"}, interp.universe)) {
    CHECK(eval_term(whole, interp, alpha) ==
          interp.function("f")(eval_tuple(inner, interp, alpha)));
  }
}

TEST_CASE("property: negation denotes the complement") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  for (const char* text : {"p(x,y)", "q(x)", "p(x,x) & q(x)",
                           "exists y. p(x,y)"}) {
    Formula f = parse_formula(text, sg);
    CHECK(denote_formula(Formula::negation(f), interp) ==
          complement(denote_formula(f, interp)));
  }
}

TEST_CASE("property: the quantifiers are De Morgan duals") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  for (const char* text : {"p(x,y)", "p(x,y) & q(x)", "p(x,y) | q(y)"}) {
    Formula body = parse_formula(text, sg);
    Formula all_x = Formula::forall({"x"}, body);
    Formula none_x =
        Formula::negation(Formula::exists({"x"}, Formula::negation(body)));
    for (const auto& alpha : all_assignments(free_vars(all_x),
                                             interp.universe)) {
      CHECK(satisfies(all_x, interp, alpha) ==
            satisfies(none_x, interp, alpha));
    }
  }
}

TEST_CASE("property: restricting the assignment never changes the verdict") {
  Signature sg = swap_sig();
  Interpretation interp = swap_interp();
  Formula f = parse_formula("p(x,y) & q(y)", sg);
  for (const auto& alpha :
       all_assignments({"x", "y", "z"}, interp.universe)) {
    Tuple restricted = alpha.restrict_to(lbls({"x", "y"}));
    CHECK(satisfies(f, interp, alpha) == satisfies(f, interp, restricted));
    CHECK(satisfies(f.child(0), interp, alpha) ==
          satisfies(f.child(0), interp,
                    alpha.restrict_to(lbls({"x", "y"}))));
  }
}
