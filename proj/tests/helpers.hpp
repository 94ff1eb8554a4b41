#ifndef RELSEM_TESTS_HELPERS_HPP
#define RELSEM_TESTS_HELPERS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "relsem/relation.hpp"
#include "relsem/syntax.hpp"

// Terse constructors for test fixtures. Label strings made of digits become
// numeric labels.

namespace testutil {

inline relsem::Label lbl(const std::string& s) {
  bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  if (digits) return relsem::Label::index(std::stoul(s));
  return relsem::Label::name(s);
}

inline relsem::LabelSet lbls(const std::vector<std::string>& names) {
  relsem::LabelSet out;
  for (const auto& n : names) out.insert(lbl(n));
  return out;
}

inline relsem::ElementSet elems(const std::vector<std::string>& names) {
  return relsem::ElementSet(names.begin(), names.end());
}

inline relsem::Tuple tup(
    const std::vector<std::pair<std::string, std::string>>& cells) {
  std::vector<std::pair<relsem::Label, relsem::Element>> out;
  for (const auto& [l, v] : cells) out.emplace_back(lbl(l), v);
  return relsem::Tuple(std::move(out));
}

// Rows list cell values in the order the labels are given here.
inline relsem::Relation rel(const std::vector<std::string>& labels,
                            const std::vector<std::string>& domain,
                            const std::vector<std::vector<std::string>>& rows) {
  relsem::TupleSet content;
  for (const auto& row : rows) {
    std::vector<std::pair<relsem::Label, relsem::Element>> cells;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      cells.emplace_back(lbl(labels[i]), row[i]);
    }
    content.insert(relsem::Tuple(std::move(cells)));
  }
  return relsem::Relation(lbls(labels), elems(domain), std::move(content));
}

inline relsem::FunctionTable ftab(
    const std::vector<std::string>& source,
    const std::vector<std::string>& domain,
    const std::vector<std::pair<std::vector<std::string>, std::string>>& rows) {
  std::map<relsem::Tuple, relsem::Element> graph;
  for (const auto& [args, value] : rows) {
    std::vector<std::pair<relsem::Label, relsem::Element>> cells;
    for (std::size_t i = 0; i < source.size(); ++i) {
      cells.emplace_back(lbl(source[i]), args[i]);
    }
    graph.emplace(relsem::Tuple(std::move(cells)), value);
  }
  return relsem::FunctionTable(lbls(source), elems(domain), std::move(graph));
}

inline relsem::Signature sig(
    const std::vector<std::string>& constants,
    const std::vector<std::pair<std::string, std::size_t>>& predicates,
    const std::vector<std::pair<std::string, std::size_t>>& functions) {
  relsem::Signature out;
  for (const auto& c : constants) out.constants.insert(c);
  for (const auto& [p, a] : predicates) out.predicates[p] = a;
  for (const auto& [f, a] : functions) out.functions[f] = a;
  return out;
}

}  // namespace testutil

#endif  // RELSEM_TESTS_HELPERS_HPP
