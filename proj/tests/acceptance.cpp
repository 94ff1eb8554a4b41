// Acceptance suite: every criterion is exact-value or property-based and runs
// at desk scale. One line per criterion; exit code is the number of failures.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relsem/relsem.hpp"

namespace {

using namespace relsem;

std::string repo_file(const std::string& rel_path) {
  return std::string(RELSEM_SOURCE_DIR) + "/" + rel_path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

Tuple named(std::initializer_list<std::pair<const char*, const char*>> cells) {
  std::vector<std::pair<Label, Element>> out;
  for (const auto& [l, v] : cells) out.emplace_back(Label::name(l), v);
  return Tuple(std::move(out));
}

// --- criterion 1: worked bowtie/oplus tables, byte-exact ------------------

void criterion_example1() {
  Relation r0({Label::name("x"), Label::name("y")}, {"a", "b"},
              {named({{"x", "a"}, {"y", "b"}}), named({{"x", "b"}, {"y", "a"}})});
  Relation r1({Label::name("y"), Label::name("z")}, {"a", "b"},
              {named({{"y", "a"}, {"z", "a"}}), named({{"y", "b"}, {"z", "a"}})});
  expect(render_table(bowtie(r0, r1)) ==
             "x | y | z\n"
             "---------\n"
             "a | b | a\n"
             "b | a | a",
         "bowtie table mismatch");
  expect(render_table(oplus(r0, r1)) ==
             "x | y | z\n"
             "---------\n"
             "a | a | a\n"
             "a | b | a\n"
             "a | b | b\n"
             "b | a | a\n"
             "b | a | b\n"
             "b | b | a",
         "oplus table mismatch");
}

// --- criterion 2: worked projection/cylinder tables, byte-exact ------------

void criterion_example2() {
  Relation wide({Label::name("x"), Label::name("y")}, {"a", "b"},
                {named({{"x", "a"}, {"y", "a"}}), named({{"x", "a"}, {"y", "b"}}),
                 named({{"x", "b"}, {"y", "b"}})});
  expect(render_table(project(wide, {Label::name("y")})) ==
             "y\n"
             "-\n"
             "a\n"
             "b",
         "projection table mismatch");

  Relation narrow({Label::name("y")}, {"a", "b"},
                  {named({{"y", "a"}}), named({{"y", "b"}})});
  expect(render_table(cylinder(narrow, {Label::name("x"), Label::name("y")})) ==
             "x | y\n"
             "-----\n"
             "a | a\n"
             "a | b\n"
             "b | a\n"
             "b | b",
         "cylinder table mismatch");
}

// --- criterion 3: diagonal and full tuple denotations, both engines --------

void criterion_tuple_denotations() {
  Interpretation interp;
  interp.universe = {"a", "b"};

  TermTuple diag = {Term::variable("x"), Term::variable("x"),
                    Term::variable("x")};
  TupleSet diag_rows = {
      Tuple({{Label::index(0), "a"}, {Label::index(1), "a"}, {Label::index(2), "a"}}),
      Tuple({{Label::index(0), "b"}, {Label::index(1), "b"}, {Label::index(2), "b"}})};
  Relation expected_diag(index_labels(3), interp.universe, diag_rows);
  expect(denote_tuple(diag, interp) == expected_diag,
         "direct diagonal mismatch");
  expect(comp_denote_tuple(diag, interp).relation == expected_diag,
         "compositional diagonal mismatch");

  TermTuple open = {Term::variable("x"), Term::variable("y"),
                    Term::variable("z")};
  Relation expected_full = full_relation(index_labels(3), interp.universe);
  expect(expected_full.content().size() == 8, "full space should have 8 rows");
  expect(denote_tuple(open, interp) == expected_full,
         "direct full-space mismatch");
  expect(comp_denote_tuple(open, interp).relation == expected_full,
         "compositional full-space mismatch");
}

// --- criterion 4: master oracle equivalence over all 512 interpretations ---

void criterion_master_equivalence() {
  Signature sig = parse_signature(read_file(repo_file("data/signature.txt")));
  std::vector<Formula> corpus;
  std::vector<Term> terms;
  std::istringstream lines(read_file(repo_file("data/corpus.txt")));
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = true;
    for (char c : line) blank &= (c == ' ' || c == '\t' || c == '\r');
    if (blank) continue;
    corpus.push_back(parse_formula(line, sig));
    for (const auto& t : all_subterms(corpus.back())) terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  expect(corpus.size() >= 20, "corpus must list at least 20 formulas");

  ElementSet universe = {"e0", "e1"};
  expect(interpretation_count(sig, universe.size()) == 512,
         "expected exactly 512 interpretations at |D|=2");

  std::uint64_t seen = 0;
  std::uint64_t mismatches = 0;
  for_each_interpretation(sig, universe, [&](const Interpretation& interp) {
    ++seen;
    for (const auto& f : corpus) {
      if (!(comp_denote(f, interp) == denote_formula(f, interp))) {
        ++mismatches;
        return false;
      }
    }
    for (const auto& t : terms) {
      if (!(comp_denote_term(t, interp) == denote_term(t, interp))) {
        ++mismatches;
        return false;
      }
    }
    return true;
  });
  expect(seen == 512, "sweep visited " + std::to_string(seen) +
                          " interpretations instead of 512");
  expect(mismatches == 0, "the engines disagreed");
}

// --- criterion 5: relied-upon identities pass exhaustively and randomly ----

void criterion_relied_identities() {
  namespace au = relsem::audit;
  std::set<au::ClaimId> relied = {
      au::ClaimId::L1a, au::ClaimId::L2,  au::ClaimId::L3a,
      au::ClaimId::L3b, au::ClaimId::T1a, au::ClaimId::T1b,
      au::ClaimId::T1c, au::ClaimId::T2,  au::ClaimId::T5flat};

  au::AuditReport sweep = au::run_audit(relied, au::Mode::Exhaustive, 1, 42);
  for (const auto& r : sweep.results) {
    expect(r.pass, au::claim_name(r.id) + " failed the exhaustive sweep");
  }

  au::AuditReport trials = au::run_audit(relied, au::Mode::Random, 1000, 42);
  for (const auto& r : trials.results) {
    expect(r.pass, au::claim_name(r.id) + " failed a random trial");
    expect(r.checked == 1000, "random trial count off");
  }

  // Corrected single-enumeration property: routing an atom's denotation
  // through the canonical listing of its (canonically ordered, distinct)
  // variables recovers the predicate meaning exactly.
  for (std::size_t arity = 1; arity <= 2; ++arity) {
    Signature sig;
    sig.predicates["p"] = arity;
    TermTuple args;
    std::set<std::string> vars;
    for (std::size_t i = 0; i < arity; ++i) {
      std::string v(1, static_cast<char>('x' + i));
      args.push_back(Term::variable(v));
      vars.insert(v);
    }
    for (std::size_t d = 1; d <= 2; ++d) {
      ElementSet universe;
      for (std::size_t i = 0; i < d; ++i) {
        universe.insert(std::string(1, static_cast<char>('a' + i)));
      }
      for_each_interpretation(sig, universe, [&](const Interpretation& interp) {
        Relation den = comp_denote_atom("p", args, interp);
        expect(compose(canonical_enumeration(vars), den) ==
                   interp.predicate("p"),
               "single canonical enumeration did not recover I(p)");
        return true;
      });
    }
  }
}

// --- criterion 6: findings determinism, witness soundness, committed file --

void criterion_findings_determinism() {
  namespace au = relsem::audit;
  std::set<au::ClaimId> all(au::kAllClaims.begin(), au::kAllClaims.end());

  au::AuditReport first = au::run_audit(all, au::Mode::Exhaustive, 1, 42);
  au::AuditReport second = au::run_audit(all, au::Mode::Exhaustive, 1, 42);
  expect(au::render_report(first) == au::render_report(second),
         "reports differ between identical runs");

  for (const auto& r : first.results) {
    if (r.pass) continue;
    expect(r.witness.has_value(), "FAIL without a witness");
    expect(au::replay(*r.witness) == au::ReplayOutcome::FailReproduced,
           au::claim_name(r.id) + " witness did not replay to FAIL");
  }

  std::string committed = read_file(repo_file("FINDINGS.md"));
  expect(au::render_findings(first) == committed,
         "committed FINDINGS.md does not match regeneration");
}

// --- criterion 7: parser round trip over seeded random trees ---------------

void criterion_parser_roundtrip() {
  Signature sig;
  sig.constants.insert("c");
  sig.functions["f"] = 1;
  sig.predicates["p"] = 2;
  sig.predicates["q"] = 1;
  std::vector<std::string> vars = {"x", "y", "z"};
  Xorshift64Star rng(20240717);
  for (int i = 0; i < 1000; ++i) {
    Formula ast = random_formula(rng, sig, vars, 4);
    Formula back = parse_formula(print_formula(ast), sig);
    expect(back == ast, "round trip diverged on: " + print_formula(ast));
  }
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1. worked bowtie/oplus tables reproduce byte-exactly", 1.0,
       criterion_example1},
      {"2. worked projection/cylinder tables reproduce byte-exactly", 1.0,
       criterion_example2},
      {"3. diagonal and full tuple denotations at |D|=2, n=3", 1.0,
       criterion_tuple_denotations},
      {"4. master oracle equivalence: 512 interpretations x corpus", 60.0,
       criterion_master_equivalence},
      {"5. relied-upon identities pass exhaustive + 1000 random trials", 120.0,
       criterion_relied_identities},
      {"6. audit determinism, witness replay, committed findings", 120.0,
       criterion_findings_determinism},
      {"7. parser round trip on 1000 seeded trees", 5.0,
       criterion_parser_roundtrip},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.body();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (failure.empty() && elapsed > c.limit_seconds) {
      failure = "exceeded the " + std::to_string(c.limit_seconds) +
                " s budget (" + std::to_string(elapsed) + " s)";
    }
    if (failure.empty()) {
      std::cout << "[PASS] " << c.name << " (" << elapsed << " s)\n";
    } else {
      std::cout << "[FAIL] " << c.name << ": " << failure << "\n";
      ++failures;
    }
  }
  return failures;
}
