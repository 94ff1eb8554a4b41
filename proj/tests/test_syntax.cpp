#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "relsem/generator.hpp"
#include "relsem/rng.hpp"
#include "relsem/syntax.hpp"

using namespace relsem;

namespace {

Signature test_sig() {
  return testutil::sig({"c"}, {{"p", 2}, {"q", 1}, {"r", 1}, {"s", 0}},
                       {{"f", 1}, {"g", 1}});
}

}  // namespace

TEST_CASE("parsing atoms and applications") {
  Signature sg = test_sig();
  Formula f = parse_formula("p(f(x),c)", sg);
  REQUIRE(f.kind() == Formula::Kind::Atom);
  CHECK(f.predicate() == "p");
  REQUIRE(f.args().size() == 2);
  CHECK(f.args()[0] == Term::apply("f", {Term::variable("x")}));
  CHECK(f.args()[1] == Term::constant("c"));
}

TEST_CASE("parsing quantifiers and connectives") {
  Signature sg = test_sig();
  Formula f = parse_formula("exists x y. p(x,y) & q(y)", sg);
  REQUIRE(f.kind() == Formula::Kind::Exists);
  CHECK(f.bound_vars() == std::vector<std::string>{"x", "y"});
  CHECK(f.child().kind() == Formula::Kind::And);
}

TEST_CASE("precedence: not over and over or, left associative") {
  Signature sg = test_sig();
  Formula f = parse_formula("!q(x) & r(x) | q(y)", sg);
  REQUIRE(f.kind() == Formula::Kind::Or);
  CHECK(f.child(0).kind() == Formula::Kind::And);
  CHECK(f.child(0).child(0).kind() == Formula::Kind::Not);

  Formula chain = parse_formula("q(x) & r(x) & q(y)", sg);
  REQUIRE(chain.kind() == Formula::Kind::And);
  CHECK(chain.child(0).kind() == Formula::Kind::And);
}

TEST_CASE("syntax errors carry offsets") {
  Signature sg = test_sig();
  try {
    parse_formula("p(x", sg);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_formula("exists . p(x,y)", sg), SyntaxError);
  CHECK_THROWS_AS(parse_formula("exists x x. p(x,x)", sg), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p(x,y) &", sg), SyntaxError);
  CHECK_THROWS_AS(parse_formula("q(x) | forall x. q(x)", sg), SyntaxError);
}

TEST_CASE("arity and symbol errors") {
  Signature sg = test_sig();
  CHECK_THROWS_AS(parse_formula("p(x)", sg), ArityError);
  CHECK_THROWS_AS(parse_formula("f(x)", sg), UnknownSymbolError);  // f is a function
  CHECK_THROWS_AS(parse_formula("t(x)", sg), UnknownSymbolError);
  CHECK_THROWS_AS(parse_term("u(x)", sg), UnknownSymbolError);
  CHECK_THROWS_AS(parse_term("f(x,y)", sg), ArityError);
  CHECK_THROWS_AS(parse_term("p", sg), SyntaxError);  // predicate as a term
}

TEST_CASE("zero-ary predicates parse") {
  Signature sg = test_sig();
  Formula f = parse_formula("s()", sg);
  CHECK(f.kind() == Formula::Kind::Atom);
  CHECK(f.args().empty());
  CHECK(free_vars(f).empty());
}

TEST_CASE("free variables") {
  Signature sg = test_sig();
  CHECK(free_vars(parse_formula("exists x. p(x,y)", sg)) ==
        std::set<std::string>{"y"});
  CHECK(term_vars(parse_term("f(g(x))", sg)) == std::set<std::string>{"x"});
  CHECK(term_vars(parse_term("f(c)", sg)).empty());
}

TEST_CASE("printing with minimal parentheses") {
  Signature sg = test_sig();
  Formula lhs = Formula::conjunction(
      Formula::atom("q", {Term::variable("x")}),
      Formula::negation(Formula::atom("r", {Term::variable("y")})));
  CHECK(print_formula(lhs) == "q(x) & !r(y)");

  Formula ex = Formula::exists({"x"}, Formula::atom("q", {Term::variable("x")}));
  CHECK(print_formula(ex) == "exists x. q(x)");

  Formula grouped = Formula::conjunction(
      Formula::disjunction(Formula::atom("q", {Term::variable("x")}),
                           Formula::atom("r", {Term::variable("x")})),
      Formula::atom("q", {Term::variable("y")}));
  CHECK(print_formula(grouped) == "(q(x) | r(x)) & q(y)");

  // Right-nested same-connective trees keep their grouping.
  Formula right = Formula::conjunction(
      Formula::atom("q", {Term::variable("x")}),
      Formula::conjunction(Formula::atom("r", {Term::variable("x")}),
                           Formula::atom("q", {Term::variable("y")})));
  CHECK(print_formula(right) == "q(x) & (r(x) & q(y))");
}

TEST_CASE("vacuous quantification is accepted") {
  Signature sg = test_sig();
  Formula f = parse_formula("exists x. q(y)", sg);
  CHECK(free_vars(f) == std::set<std::string>{"y"});
}

TEST_CASE("property: print/parse round trip on random trees") {
  Signature sg = test_sig();
  std::vector<std::string> vars = {"x", "y", "z"};
  Xorshift64Star rng(31337);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, sg, vars, 4);
    Formula back = parse_formula(print_formula(f), sg);
    REQUIRE(back == f);
  }
}

TEST_CASE("property: free variable laws") {
  Signature sg = test_sig();
  std::vector<std::string> vars = {"x", "y"};
  Xorshift64Star rng(4242);
  for (int i = 0; i < 200; ++i) {
    Formula f0 = random_formula(rng, sg, vars, 3);
    Formula f1 = random_formula(rng, sg, vars, 3);
    auto v0 = free_vars(f0);
    auto v1 = free_vars(f1);
    std::set<std::string> both = v0;
    both.insert(v1.begin(), v1.end());
    CHECK(free_vars(Formula::conjunction(f0, f1)) == both);

    std::set<std::string> minus = v0;
    minus.erase("x");
    CHECK(free_vars(Formula::exists({"x"}, f0)) == minus);
  }
}
