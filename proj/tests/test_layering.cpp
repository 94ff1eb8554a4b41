// The compositional evaluator must be buildable without the satisfaction
// oracle: composite nodes are relation algebra over child denotations, and
// the only way to guarantee no call path reaches the oracle is to keep its
// header out of this translation unit entirely.

#include "relsem/compositional.hpp"

#ifdef RELSEM_DIRECT_HPP
#error "compositional.hpp must not pull in the satisfaction oracle"
#endif

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace relsem;

TEST_CASE("the compositional engine runs without the oracle header") {
  Signature sg = testutil::sig({}, {{"p", 2}}, {});
  Interpretation interp;
  interp.universe = {"a", "b"};
  interp.predicates.emplace(
      "p", testutil::rel({"0", "1"}, {"a", "b"}, {{"a", "b"}}));
  Relation den = comp_denote(parse_formula("exists y. p(x,y)", sg), interp);
  CHECK(den == testutil::rel({"x"}, {"a", "b"}, {{"a"}}));
}
