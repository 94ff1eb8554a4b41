#ifndef RELSEM_RELATION_HPP
#define RELSEM_RELATION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relsem/errors.hpp"

namespace relsem {

// Universe elements are plain strings; domains are lexicographically ordered
// so every enumeration and rendering in the library is canonical.
using Element = std::string;
using ElementSet = std::set<Element>;

// Hard ceiling for materializing a tuple space |D|^|I|. Everything in this
// library is desk-scale by design; the guard turns an accidental blow-up into
// a clean error instead of an OOM.
inline constexpr std::uint64_t kSpaceBudget = 1'000'000;

// ---------------------------------------------------------------------------
// Label: one position of an index set. Either a variable name or a numeric
// argument position. A single index set never mixes the two kinds: positional
// (numeric) relations interpret predicate symbols, name-indexed relations are
// formula denotations.
// ---------------------------------------------------------------------------
class Label {
 public:
  static Label name(std::string n) { return Label(kName, 0, std::move(n)); }
  static Label index(std::size_t i) { return Label(kIndex, i, {}); }

  bool is_name() const { return kind_ == kName; }
  bool is_index() const { return kind_ == kIndex; }

  const std::string& name_value() const { return name_; }
  std::size_t index_value() const { return index_; }

  // Canonical textual form: the name itself, or the decimal position. This is
  // also the element identifier the label turns into at composition
  // boundaries.
  std::string text() const {
    return kind_ == kName ? name_ : std::to_string(index_);
  }

  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ == kIndex) return a.index_ <=> b.index_;
    return a.name_ <=> b.name_;
  }
  friend bool operator==(const Label& a, const Label& b) = default;

 private:
  enum Kind : int { kIndex = 0, kName = 1 };

  Label(Kind kind, std::size_t index, std::string name)
      : kind_(kind), index_(index), name_(std::move(name)) {}

  Kind kind_;
  std::size_t index_;
  std::string name_;
};

using LabelSet = std::set<Label>;

inline LabelSet name_labels(const std::set<std::string>& names) {
  LabelSet out;
  for (const auto& n : names) out.insert(Label::name(n));
  return out;
}

inline LabelSet index_labels(std::size_t n) {
  LabelSet out;
  for (std::size_t i = 0; i < n; ++i) out.insert(Label::index(i));
  return out;
}

inline bool mixes_kinds(const LabelSet& labels) {
  bool has_name = false, has_index = false;
  for (const auto& l : labels) (l.is_name() ? has_name : has_index) = true;
  return has_name && has_index;
}

// ---------------------------------------------------------------------------
// Tuple: a total finite map from labels to elements, the inhabitant of an
// index-set-to-domain function space. Assignments of variables are Tuples
// with name labels; predicate rows are Tuples with numeric labels.
// ---------------------------------------------------------------------------
class Tuple {
 public:
  Tuple() = default;

  explicit Tuple(std::vector<std::pair<Label, Element>> cells)
      : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    for (std::size_t i = 1; i < cells_.size(); ++i) {
      if (cells_[i - 1].first == cells_[i].first) {
        throw InvariantError("duplicate label in tuple: " +
                             cells_[i].first.text());
      }
    }
  }

  Tuple(std::initializer_list<std::pair<Label, Element>> cells)
      : Tuple(std::vector<std::pair<Label, Element>>(cells)) {}

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool defined_at(const Label& l) const { return find(l) != nullptr; }

  const Element& at(const Label& l) const {
    if (const Element* e = find(l)) return *e;
    throw RestrictionError("tuple not defined at label " + l.text());
  }

  LabelSet labels() const {
    LabelSet out;
    for (const auto& [l, v] : cells_) out.insert(l);
    return out;
  }

  ElementSet values() const {
    ElementSet out;
    for (const auto& [l, v] : cells_) out.insert(v);
    return out;
  }

  // The restriction to a sub-index-set; everything outside `sub` is dropped.
  Tuple restrict_to(const LabelSet& sub) const {
    std::vector<std::pair<Label, Element>> kept;
    kept.reserve(sub.size());
    for (const auto& l : sub) {
      const Element* e = find(l);
      if (e == nullptr) {
        throw RestrictionError("restriction to label " + l.text() +
                               " outside the tuple's index set");
      }
      kept.emplace_back(l, *e);
    }
    return Tuple(std::move(kept));
  }

  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  // Cells are kept sorted by label, so tuple order on a fixed index set is
  // exactly lexicographic order of the cell values.
  friend std::strong_ordering operator<=>(const Tuple& a, const Tuple& b) {
    return a.cells_ <=> b.cells_;
  }
  friend bool operator==(const Tuple& a, const Tuple& b) = default;

 private:
  const Element* find(const Label& l) const {
    auto it = std::lower_bound(
        cells_.begin(), cells_.end(), l,
        [](const auto& cell, const Label& key) { return cell.first < key; });
    if (it != cells_.end() && it->first == l) return &it->second;
    return nullptr;
  }

  std::vector<std::pair<Label, Element>> cells_;
};

using TupleSet = std::set<Tuple>;

// All of index_set -> domain, in canonical order. Throws EmptyDomainError for
// an uninhabitable space and BudgetExceededError past `budget` tuples.
inline std::vector<Tuple> full_tuple_space(const LabelSet& index_set,
                                           const ElementSet& domain,
                                           std::uint64_t budget = kSpaceBudget) {
  if (domain.empty()) {
    throw EmptyDomainError("tuple space over an empty domain");
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    count *= domain.size();
    if (count > budget) {
      throw BudgetExceededError("tuple space larger than budget of " +
                                std::to_string(budget));
    }
  }
  std::vector<Label> labels(index_set.begin(), index_set.end());
  std::vector<Element> elems(domain.begin(), domain.end());
  std::vector<Tuple> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> odo(labels.size(), 0);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<std::pair<Label, Element>> cells;
    cells.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      cells.emplace_back(labels[i], elems[odo[i]]);
    }
    out.push_back(Tuple(std::move(cells)));
    // Advance the odometer with the last label fastest: output order is
    // lexicographic by cell values.
    for (std::size_t i = labels.size(); i-- > 0;) {
      if (++odo[i] < elems.size()) break;
      odo[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation: an index set, a nonempty element domain, and a content set of
// total tuples. Two relations are equal only if all three parts agree; same
// content over a different declared domain is a different relation.
// ---------------------------------------------------------------------------
class Relation {
 public:
  Relation(LabelSet index_set, ElementSet domain, TupleSet content)
      : index_(std::move(index_set)),
        domain_(std::move(domain)),
        content_(std::move(content)) {
    if (domain_.empty()) {
      throw EmptyDomainError("relation over an empty domain");
    }
    if (mixes_kinds(index_)) {
      throw InvariantError("index set mixes name and numeric labels");
    }
    for (const auto& t : content_) {
      if (t.labels() != index_) {
        throw InvariantError("content tuple not total over the index set");
      }
      for (const auto& [l, v] : t) {
        if (!domain_.contains(v)) {
          throw InvariantError("content value '" + v +
                               "' outside the declared domain");
        }
      }
    }
  }

  const LabelSet& index_set() const { return index_; }
  const ElementSet& domain() const { return domain_; }
  const TupleSet& content() const { return content_; }

  bool contains(const Tuple& t) const { return content_.contains(t); }

  // Sentence denotations live on the empty index set: content {()} is truth,
  // empty content is falsity.
  bool truth() const { return !content_.empty(); }

  friend std::strong_ordering operator<=>(const Relation&,
                                          const Relation&) = default;
  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  LabelSet index_;
  ElementSet domain_;
  TupleSet content_;
};

inline Relation full_relation(const LabelSet& index_set,
                              const ElementSet& domain,
                              std::uint64_t budget = kSpaceBudget) {
  auto space = full_tuple_space(index_set, domain, budget);
  return Relation(index_set, domain, TupleSet(space.begin(), space.end()));
}

inline Relation empty_relation(const LabelSet& index_set,
                               const ElementSet& domain) {
  return Relation(index_set, domain, {});
}

namespace detail {
inline void require_same_type(const Relation& r0, const Relation& r1,
                              const char* op) {
  if (r0.index_set() != r1.index_set() || r0.domain() != r1.domain()) {
    throw TypeMismatchError(std::string(op) +
                            " requires identical index sets and domains");
  }
}
}  // namespace detail

// Intersection, union, difference, and containment lift from content once the
// two relations share a type.
inline Relation operator&(const Relation& r0, const Relation& r1) {
  detail::require_same_type(r0, r1, "intersection");
  TupleSet out;
  for (const auto& t : r0.content()) {
    if (r1.contains(t)) out.insert(t);
  }
  return Relation(r0.index_set(), r0.domain(), std::move(out));
}

inline Relation operator|(const Relation& r0, const Relation& r1) {
  detail::require_same_type(r0, r1, "union");
  TupleSet out = r0.content();
  out.insert(r1.content().begin(), r1.content().end());
  return Relation(r0.index_set(), r0.domain(), std::move(out));
}

inline Relation operator-(const Relation& r0, const Relation& r1) {
  detail::require_same_type(r0, r1, "difference");
  TupleSet out;
  for (const auto& t : r0.content()) {
    if (!r1.contains(t)) out.insert(t);
  }
  return Relation(r0.index_set(), r0.domain(), std::move(out));
}

inline bool subset(const Relation& r0, const Relation& r1) {
  detail::require_same_type(r0, r1, "containment");
  return std::includes(r1.content().begin(), r1.content().end(),
                       r0.content().begin(), r0.content().end());
}

// Content complement within the full space index_set -> domain.
inline Relation complement(const Relation& r,
                           std::uint64_t budget = kSpaceBudget) {
  TupleSet out;
  for (const auto& t : full_tuple_space(r.index_set(), r.domain(), budget)) {
    if (!r.contains(t)) out.insert(t);
  }
  return Relation(r.index_set(), r.domain(), std::move(out));
}

inline Relation operator~(const Relation& r) { return complement(r); }

namespace detail {
inline void require_same_domain(const Relation& r0, const Relation& r1,
                                const char* op) {
  if (r0.domain() != r1.domain()) {
    throw DomainMismatchError(std::string(op) +
                              " requires a common element domain");
  }
}
}  // namespace detail

// Bowtie: tuples over the union index set whose restrictions land in both
// operands. On equal index sets this degenerates to intersection; in general
// it is the natural join of the two contents.
inline Relation bowtie(const Relation& r0, const Relation& r1,
                       std::uint64_t budget = kSpaceBudget) {
  detail::require_same_domain(r0, r1, "bowtie");
  LabelSet joint = r0.index_set();
  joint.insert(r1.index_set().begin(), r1.index_set().end());
  TupleSet out;
  for (const auto& t : full_tuple_space(joint, r0.domain(), budget)) {
    if (r0.contains(t.restrict_to(r0.index_set())) &&
        r1.contains(t.restrict_to(r1.index_set()))) {
      out.insert(t);
    }
  }
  return Relation(std::move(joint), r0.domain(), std::move(out));
}

// Oplus: the "or" counterpart of bowtie, degenerating to union on equal
// index sets.
inline Relation oplus(const Relation& r0, const Relation& r1,
                      std::uint64_t budget = kSpaceBudget) {
  detail::require_same_domain(r0, r1, "oplus");
  LabelSet joint = r0.index_set();
  joint.insert(r1.index_set().begin(), r1.index_set().end());
  TupleSet out;
  for (const auto& t : full_tuple_space(joint, r0.domain(), budget)) {
    if (r0.contains(t.restrict_to(r0.index_set())) ||
        r1.contains(t.restrict_to(r1.index_set()))) {
      out.insert(t);
    }
  }
  return Relation(std::move(joint), r0.domain(), std::move(out));
}

// Projection onto a sub-index-set: restrict every content tuple.
inline Relation project(const Relation& r, const LabelSet& onto) {
  if (!std::includes(r.index_set().begin(), r.index_set().end(), onto.begin(),
                     onto.end())) {
    throw RestrictionError("projection target is not a sub-index-set");
  }
  TupleSet out;
  for (const auto& t : r.content()) out.insert(t.restrict_to(onto));
  return Relation(onto, r.domain(), std::move(out));
}

// Cylinder into a super-index-set: all tuples whose restriction lies in r.
inline Relation cylinder(const Relation& r, const LabelSet& into,
                         std::uint64_t budget = kSpaceBudget) {
  if (!std::includes(into.begin(), into.end(), r.index_set().begin(),
                     r.index_set().end())) {
    throw RestrictionError("cylinder target is not a super-index-set");
  }
  TupleSet out;
  for (const auto& t : full_tuple_space(into, r.domain(), budget)) {
    if (r.contains(t.restrict_to(r.index_set()))) out.insert(t);
  }
  return Relation(into, r.domain(), std::move(out));
}

// ---------------------------------------------------------------------------
// Composition. The left operand's values act as index labels of the right
// operand; numeric labels convert to and from their decimal strings at this
// boundary. The left domain must cover the right index set exactly.
// ---------------------------------------------------------------------------
namespace detail {
inline std::map<Element, Label> composition_bridge(const Relation& r0,
                                                   const Relation& r1) {
  std::map<Element, Label> bridge;
  for (const auto& l : r1.index_set()) bridge.emplace(l.text(), l);
  ElementSet bridged;
  for (const auto& [e, l] : bridge) bridged.insert(e);
  if (bridged != r0.domain()) {
    throw CompositionError(
        "left domain does not name the right index set exactly");
  }
  return bridge;
}
}  // namespace detail

inline Relation compose(const Relation& r0, const Relation& r1) {
  auto bridge = detail::composition_bridge(r0, r1);
  TupleSet out;
  for (const auto& d0 : r0.content()) {
    for (const auto& d1 : r1.content()) {
      std::vector<std::pair<Label, Element>> cells;
      cells.reserve(d0.size());
      for (const auto& [s, via] : d0) {
        cells.emplace_back(s, d1.at(bridge.at(via)));
      }
      out.insert(Tuple(std::move(cells)));
    }
  }
  return Relation(r0.index_set(), r1.domain(), std::move(out));
}

// g composed on the left: relabels/merges r's positions through the single
// map g. g's values must name r's index set.
inline Relation compose(const Tuple& g, const Relation& r) {
  ElementSet left_domain;
  for (const auto& l : r.index_set()) left_domain.insert(l.text());
  for (const auto& [l, v] : g) {
    if (!left_domain.contains(v)) {
      throw CompositionError("map value '" + v +
                             "' does not name a label of the right operand");
    }
  }
  return compose(Relation(g.labels(), left_domain, {g}), r);
}

// g composed on the right; the target domain is taken to be g's value range
// (no wider target is recoverable from a bare map).
inline Relation compose(const Relation& r, const Tuple& g) {
  ElementSet range = g.values();
  if (range.empty()) range.insert(std::string());
  return compose(r, Relation(g.labels(), range, {g}));
}

// Single-tuple composition: (g . h)(s) = h(g(s)), with g's values naming h's
// labels under the same numeric/string bridge as relation composition.
inline Tuple compose(const Tuple& g, const Tuple& h) {
  std::map<Element, Label> bridge;
  for (const auto& [l, v] : h) bridge.emplace(l.text(), l);
  std::vector<std::pair<Label, Element>> cells;
  cells.reserve(g.size());
  for (const auto& [s, via] : g) {
    auto it = bridge.find(via);
    if (it == bridge.end()) {
      throw CompositionError("map value '" + via +
                             "' does not name a label of the second map");
    }
    cells.emplace_back(s, h.at(it->second));
  }
  return Tuple(std::move(cells));
}

// ---------------------------------------------------------------------------
// FunctionTable: an explicit finite function from a tuple space into the same
// element domain. Interpretations of function symbols and denotations of
// terms both live here.
// ---------------------------------------------------------------------------
class FunctionTable {
 public:
  FunctionTable(LabelSet source_index_set, ElementSet domain,
                std::map<Tuple, Element> graph)
      : source_(std::move(source_index_set)),
        domain_(std::move(domain)),
        graph_(std::move(graph)) {
    if (mixes_kinds(source_)) {
      throw InvariantError("source index set mixes name and numeric labels");
    }
    auto space = full_tuple_space(source_, domain_);
    if (graph_.size() != space.size()) {
      throw PartialFunctionError("function graph does not cover " +
                                 std::to_string(space.size()) +
                                 " source tuples");
    }
    for (const auto& t : space) {
      auto it = graph_.find(t);
      if (it == graph_.end()) {
        throw PartialFunctionError("function graph missing a source tuple");
      }
      if (!domain_.contains(it->second)) {
        throw OutOfDomainError("function value '" + it->second +
                               "' outside the domain");
      }
    }
  }

  const LabelSet& source_index_set() const { return source_; }
  const ElementSet& domain() const { return domain_; }
  const std::map<Tuple, Element>& graph() const { return graph_; }

  const Element& operator()(const Tuple& arg) const {
    auto it = graph_.find(arg);
    if (it == graph_.end()) {
      throw RestrictionError("argument tuple outside the function's source");
    }
    return it->second;
  }

  ElementSet range() const {
    ElementSet out;
    for (const auto& [t, v] : graph_) out.insert(v);
    return out;
  }

  friend std::strong_ordering operator<=>(const FunctionTable&,
                                          const FunctionTable&) = default;
  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  LabelSet source_;
  ElementSet domain_;
  std::map<Tuple, Element> graph_;
};

// Image and preimage of subsets under an arbitrary finite map.
template <class K, class V>
std::set<V> image(const std::map<K, V>& graph, const std::set<K>& args) {
  std::set<V> out;
  for (const auto& a : args) {
    auto it = graph.find(a);
    if (it == graph.end()) {
      throw RestrictionError("argument outside the function's source");
    }
    out.insert(it->second);
  }
  return out;
}

template <class K, class V>
std::set<K> preimage(const std::map<K, V>& graph, const std::set<V>& targets) {
  std::set<K> out;
  for (const auto& [k, v] : graph) {
    if (targets.contains(v)) out.insert(k);
  }
  return out;
}

inline ElementSet set_extension(const FunctionTable& f, const TupleSet& args) {
  return image(f.graph(), args);
}

inline TupleSet inverse_set_extension(const FunctionTable& f,
                                      const ElementSet& targets) {
  for (const auto& t : targets) {
    if (!f.domain().contains(t)) {
      throw RestrictionError("target '" + t +
                             "' outside the function's domain");
    }
  }
  return preimage(f.graph(), targets);
}

// ---------------------------------------------------------------------------
// Rendering. The table form is the bit-exact CLI output: canonical header,
// a dashed rule as wide as the header, rows in lexicographic cell order.
// Empty-index-set relations print as their truth value.
// ---------------------------------------------------------------------------
namespace detail {
inline std::string join_cells(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out += " | ";
    out += cells[i];
  }
  return out;
}
}  // namespace detail

inline std::string render_table(const Relation& r) {
  if (r.index_set().empty()) return r.truth() ? "true" : "false";
  std::vector<std::string> header;
  for (const auto& l : r.index_set()) header.push_back(l.text());
  std::string head = detail::join_cells(header);
  std::string out = head + "\n" + std::string(head.size(), '-');
  for (const auto& t : r.content()) {
    std::vector<std::string> cells;
    for (const auto& [l, v] : t) cells.push_back(v);
    out += "\n" + detail::join_cells(cells);
  }
  return out;
}

// Compact one-line forms used in witnesses and diagnostics.
inline std::string render_inline(const Tuple& t) {
  std::string out = "(";
  bool first = true;
  for (const auto& [l, v] : t) {
    if (!first) out += ",";
    out += v;
    first = false;
  }
  return out + ")";
}

inline std::string render_inline(const Relation& r) {
  std::string out = "<{";
  bool first = true;
  for (const auto& l : r.index_set()) {
    if (!first) out += ",";
    out += l.text();
    first = false;
  }
  out += "},{";
  first = true;
  for (const auto& e : r.domain()) {
    if (!first) out += ",";
    out += e;
    first = false;
  }
  out += "},{";
  first = true;
  for (const auto& t : r.content()) {
    if (!first) out += ",";
    out += render_inline(t);
    first = false;
  }
  return out + "}>";
}

inline std::string render_inline(const FunctionTable& f) {
  std::string out = "{";
  bool first = true;
  for (const auto& [t, v] : f.graph()) {
    if (!first) out += ",";
    out += render_inline(t) + "->" + v;
    first = false;
  }
  return out + "}";
}

}  // namespace relsem

#endif  // RELSEM_RELATION_HPP
