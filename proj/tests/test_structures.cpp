#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "relsem/interpretation.hpp"

using namespace relsem;
using testutil::lbls;
using testutil::tup;

namespace {

const char* kStructure =
    "# sample structure\n"
    "domain: a b\n"
    "const c = a\n"
    "pred p/2 = { (a,b) (b,a) }\n"
    "func f/1 = { (a)->b (b)->a }\n";

Signature structure_sig() {
  return testutil::sig({"c"}, {{"p", 2}}, {{"f", 1}});
}

}  // namespace

TEST_CASE("loading the documented structure format") {
  Interpretation interp = load_structure(kStructure, structure_sig());
  CHECK(interp.universe == ElementSet{"a", "b"});
  CHECK(interp.constant("c") == "a");
  CHECK(interp.predicate("p").content() ==
        TupleSet{tup({{"0", "a"}, {"1", "b"}}), tup({{"0", "b"}, {"1", "a"}})});
  CHECK(interp.function("f")(tup({{"0", "a"}})) == "b");
  CHECK(interp.function("f")(tup({{"0", "b"}})) == "a");
}

TEST_CASE("structure load failure modes") {
  Signature sg = structure_sig();
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst c = a\nfunc f/1 = { (a)->b (b)->a }\n",
                     sg),
      MissingSymbolError);
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst c = a\npred p/2 = { }\n"
                     "func f/1 = { (q)->a (b)->a }\n",
                     sg),
      OutOfDomainError);
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst c = a\npred p/2 = { }\n"
                     "func f/1 = { (a)->b }\n",
                     sg),
      PartialFunctionError);
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst c = a\nconst c = b\n", sg),
      SyntaxError);
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst c = a\npred p/1 = { }\n"
                     "func f/1 = { (a)->b (b)->a }\n",
                     sg),
      ArityError);
  CHECK_THROWS_AS(
      load_structure("domain: a b\nconst zz = a\n", sg), UnknownSymbolError);
  CHECK_THROWS_AS(load_structure("const c = a\n", sg), SyntaxError);
}

TEST_CASE("signature files parse and validate") {
  Signature sg = parse_signature("# decls\nconst c\npred p/2\nfunc f/1\n");
  CHECK(sg == structure_sig());
  CHECK_THROWS_AS(parse_signature("func f/0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_signature("const c\npred c/1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_signature("widget w\n"), SyntaxError);
}

TEST_CASE("a structure file is self-describing") {
  Signature sg = signature_of_structure(kStructure);
  CHECK(sg == structure_sig());
}

TEST_CASE("assignment enumeration is canonical") {
  ElementSet d = {"a", "b"};
  auto two = all_assignments({"x"}, d);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == tup({{"x", "a"}}));
  CHECK(two[1] == tup({{"x", "b"}}));

  auto none = all_assignments({}, d);
  REQUIRE(none.size() == 1);
  CHECK(none[0] == Tuple());

  CHECK(all_assignments({"x", "y"}, {"a"}).size() == 1);
}

TEST_CASE("interpretation sweep counts") {
  ElementSet d = {"a", "b"};
  auto count_over = [&](const Signature& sg) {
    std::uint64_t seen = 0;
    for_each_interpretation(sg, d, [&](const Interpretation&) {
      ++seen;
      return true;
    });
    return seen;
  };
  CHECK(count_over(testutil::sig({}, {{"p", 1}}, {})) == 4);
  CHECK(count_over(testutil::sig({}, {}, {{"f", 1}})) == 4);
  CHECK(count_over(testutil::sig({"c"}, {}, {})) == 2);

  Signature mixed = testutil::sig({"c"}, {{"p", 2}, {"q", 1}}, {{"f", 1}});
  CHECK(count_over(mixed) == interpretation_count(mixed, 2));
  CHECK(interpretation_count(mixed, 2) == 2ull * 4 * 16 * 4);
}

TEST_CASE("interpretation sweep validates and guards") {
  Signature sg = testutil::sig({"c"}, {{"p", 2}}, {{"f", 1}});
  ElementSet d = {"a", "b"};
  for_each_interpretation(sg, d, [&](const Interpretation& interp) {
    validate_interpretation(interp, sg);
    return true;
  });

  Signature huge = testutil::sig({}, {}, {{"f", 3}});
  ElementSet five = {"a", "b", "c", "d", "e"};
  CHECK_THROWS_AS(interpretation_count(huge, five.size()),
                  BudgetExceededError);
}

TEST_CASE("random interpretations are seeded and valid") {
  GeneratorConfig cfg;
  cfg.seed = 99;
  cfg.max_universe = 3;
  cfg.signature = testutil::sig({"c"}, {{"p", 2}, {"q", 1}}, {{"f", 1}});
  Interpretation first = random_interpretation(cfg);
  Interpretation second = random_interpretation(cfg);
  CHECK(first.universe == second.universe);
  CHECK(first.constants == second.constants);
  CHECK(first.predicates.at("p") == second.predicates.at("p"));
  CHECK(first.functions.at("f") == second.functions.at("f"));
  validate_interpretation(first, cfg.signature);

  cfg.max_universe = 1;
  Interpretation tiny = random_interpretation(cfg);
  CHECK(tiny.universe.size() == 1);
  validate_interpretation(tiny, cfg.signature);

  // Different seeds eventually differ.
  cfg.max_universe = 3;
  bool differs = false;
  for (std::uint64_t s = 0; s < 16 && !differs; ++s) {
    GeneratorConfig other = cfg;
    other.seed = 1000 + s;
    differs = !(random_interpretation(other).predicates.at("p") ==
                first.predicates.at("p"));
  }
  CHECK(differs);
}
