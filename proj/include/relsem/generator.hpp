#ifndef RELSEM_GENERATOR_HPP
#define RELSEM_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "relsem/rng.hpp"
#include "relsem/syntax.hpp"

// Seeded random terms and formulas, used by the round-trip tests and the
// randomized audit mode. Output is always well-formed for the given
// signature and reproducible from the seed.

namespace relsem {

inline Term random_term(Xorshift64Star& rng, const Signature& sig,
                        const std::vector<std::string>& vars,
                        std::size_t max_depth) {
  bool can_apply = max_depth > 1 && !sig.functions.empty();
  std::uint64_t pick = rng.below(can_apply ? 3 : 2);
  if (can_apply && pick == 2) {
    std::size_t which = static_cast<std::size_t>(rng.below(sig.functions.size()));
    auto it = sig.functions.begin();
    std::advance(it, which);
    std::vector<Term> args;
    for (std::size_t i = 0; i < it->second; ++i) {
      args.push_back(random_term(rng, sig, vars, max_depth - 1));
    }
    return Term::apply(it->first, std::move(args));
  }
  if (pick == 1 && !sig.constants.empty()) {
    std::size_t which = static_cast<std::size_t>(rng.below(sig.constants.size()));
    auto it = sig.constants.begin();
    std::advance(it, which);
    return Term::constant(*it);
  }
  if (vars.empty()) {
    if (!sig.constants.empty()) return Term::constant(*sig.constants.begin());
    throw InvariantError("term generator needs variables or constants");
  }
  return Term::variable(vars[rng.below(vars.size())]);
}

inline Formula random_atom(Xorshift64Star& rng, const Signature& sig,
                           const std::vector<std::string>& vars,
                           std::size_t term_depth) {
  if (sig.predicates.empty()) {
    throw InvariantError("formula generator needs at least one predicate");
  }
  std::size_t which = static_cast<std::size_t>(rng.below(sig.predicates.size()));
  auto it = sig.predicates.begin();
  std::advance(it, which);
  TermTuple args;
  for (std::size_t i = 0; i < it->second; ++i) {
    args.push_back(random_term(rng, sig, vars, term_depth));
  }
  return Formula::atom(it->first, std::move(args));
}

inline Formula random_formula(Xorshift64Star& rng, const Signature& sig,
                              const std::vector<std::string>& vars,
                              std::size_t max_depth) {
  if (max_depth <= 1) return random_atom(rng, sig, vars, 2);
  std::uint64_t pick = rng.below(vars.empty() ? 4 : 6);
  switch (pick) {
    case 0:
      return random_atom(rng, sig, vars, 2);
    case 1:
      return Formula::negation(random_formula(rng, sig, vars, max_depth - 1));
    case 2:
      return Formula::conjunction(
          random_formula(rng, sig, vars, max_depth - 1),
          random_formula(rng, sig, vars, max_depth - 1));
    case 3:
      return Formula::disjunction(
          random_formula(rng, sig, vars, max_depth - 1),
          random_formula(rng, sig, vars, max_depth - 1));
    default: {
      // Nonempty, duplicate-free bound list drawn from the pool.
      std::vector<std::string> bound;
      for (const auto& v : vars) {
        if (rng.coin()) bound.push_back(v);
      }
      if (bound.empty()) bound.push_back(vars[rng.below(vars.size())]);
      Formula body = random_formula(rng, sig, vars, max_depth - 1);
      return pick == 4 ? Formula::exists(std::move(bound), std::move(body))
                       : Formula::forall(std::move(bound), std::move(body));
    }
  }
}

}  // namespace relsem

#endif  // RELSEM_GENERATOR_HPP
