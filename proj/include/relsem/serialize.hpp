#ifndef RELSEM_SERIALIZE_HPP
#define RELSEM_SERIALIZE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relsem/interpretation.hpp"
#include "relsem/relation.hpp"
#include "relsem/syntax.hpp"

// JSON forms for the domain values, compact and canonical: labels are JSON
// strings (names) or numbers (positions); tuple rows are value arrays in
// canonical label order. Used by audit witnesses, which must survive a
// round trip bit-for-bit.

namespace relsem {

using Json = nlohmann::json;

inline Json to_json(const Label& l) {
  if (l.is_name()) return Json(l.name_value());
  return Json(l.index_value());
}

inline Label label_from_json(const Json& j) {
  if (j.is_string()) return Label::name(j.get<std::string>());
  if (j.is_number_unsigned()) return Label::index(j.get<std::size_t>());
  throw Error("label JSON must be a string or an unsigned number");
}

inline Json to_json(const LabelSet& labels) {
  Json out = Json::array();
  for (const auto& l : labels) out.push_back(to_json(l));
  return out;
}

inline LabelSet labels_from_json(const Json& j) {
  LabelSet out;
  for (const auto& item : j) out.insert(label_from_json(item));
  return out;
}

inline Json row_from_tuple(const Tuple& t) {
  Json out = Json::array();
  for (const auto& [l, v] : t) out.push_back(v);
  return out;
}

inline Tuple tuple_from_row(const LabelSet& index, const Json& row) {
  if (row.size() != index.size()) {
    throw Error("tuple row does not match the index set");
  }
  std::vector<std::pair<Label, Element>> cells;
  std::size_t i = 0;
  for (const auto& l : index) {
    cells.emplace_back(l, row[i++].get<Element>());
  }
  return Tuple(std::move(cells));
}

inline Json to_json(const Relation& r) {
  Json out;
  out["index"] = to_json(r.index_set());
  out["domain"] = Json(std::vector<Element>(r.domain().begin(),
                                            r.domain().end()));
  Json rows = Json::array();
  for (const auto& t : r.content()) rows.push_back(row_from_tuple(t));
  out["rows"] = std::move(rows);
  return out;
}

inline Relation relation_from_json(const Json& j) {
  LabelSet index = labels_from_json(j.at("index"));
  ElementSet domain;
  for (const auto& e : j.at("domain")) domain.insert(e.get<Element>());
  TupleSet content;
  for (const auto& row : j.at("rows")) {
    content.insert(tuple_from_row(index, row));
  }
  return Relation(std::move(index), std::move(domain), std::move(content));
}

inline Json to_json(const FunctionTable& f) {
  Json out;
  out["source"] = to_json(f.source_index_set());
  out["domain"] = Json(std::vector<Element>(f.domain().begin(),
                                            f.domain().end()));
  Json rows = Json::array();
  for (const auto& [args, value] : f.graph()) {
    Json row = row_from_tuple(args);
    row.push_back(value);
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

inline FunctionTable table_from_json(const Json& j) {
  LabelSet source = labels_from_json(j.at("source"));
  ElementSet domain;
  for (const auto& e : j.at("domain")) domain.insert(e.get<Element>());
  std::map<Tuple, Element> graph;
  for (const auto& row : j.at("rows")) {
    if (row.empty()) throw Error("function row is empty");
    Json args = Json::array();
    for (std::size_t i = 0; i + 1 < row.size(); ++i) args.push_back(row[i]);
    graph.emplace(tuple_from_row(source, args),
                  row[row.size() - 1].get<Element>());
  }
  return FunctionTable(std::move(source), std::move(domain), std::move(graph));
}

inline Json to_json(const Signature& sig) {
  Json out;
  out["const"] = Json(std::vector<std::string>(sig.constants.begin(),
                                               sig.constants.end()));
  out["pred"] = Json(sig.predicates);
  out["func"] = Json(sig.functions);
  return out;
}

inline Signature signature_from_json(const Json& j) {
  Signature sig;
  for (const auto& c : j.at("const")) sig.constants.insert(c.get<std::string>());
  sig.predicates = j.at("pred").get<std::map<std::string, std::size_t>>();
  sig.functions = j.at("func").get<std::map<std::string, std::size_t>>();
  sig.validate();
  return sig;
}

inline Json to_json(const Interpretation& interp) {
  Json out;
  out["domain"] = Json(std::vector<Element>(interp.universe.begin(),
                                            interp.universe.end()));
  out["const"] = Json(interp.constants);
  Json funcs = Json::object();
  for (const auto& [f, table] : interp.functions) {
    Json rows = Json::array();
    for (const auto& [args, value] : table.graph()) {
      Json row = row_from_tuple(args);
      row.push_back(value);
      rows.push_back(std::move(row));
    }
    funcs[f] = std::move(rows);
  }
  out["func"] = std::move(funcs);
  Json preds = Json::object();
  for (const auto& [p, rel] : interp.predicates) {
    Json rows = Json::array();
    for (const auto& t : rel.content()) rows.push_back(row_from_tuple(t));
    preds[p] = std::move(rows);
  }
  out["pred"] = std::move(preds);
  return out;
}

inline Interpretation interpretation_from_json(const Json& j,
                                               const Signature& sig) {
  Interpretation interp;
  for (const auto& e : j.at("domain")) interp.universe.insert(e.get<Element>());
  interp.constants = j.at("const").get<std::map<std::string, Element>>();
  for (const auto& [f, arity] : sig.functions) {
    LabelSet source = index_labels(arity);
    std::map<Tuple, Element> graph;
    for (const auto& row : j.at("func").at(f)) {
      Json args = Json::array();
      for (std::size_t i = 0; i + 1 < row.size(); ++i) args.push_back(row[i]);
      graph.emplace(tuple_from_row(source, args),
                    row[row.size() - 1].get<Element>());
    }
    interp.functions.emplace(
        f, FunctionTable(std::move(source), interp.universe, std::move(graph)));
  }
  for (const auto& [p, arity] : sig.predicates) {
    LabelSet index = index_labels(arity);
    TupleSet rows;
    for (const auto& row : j.at("pred").at(p)) {
      rows.insert(tuple_from_row(index, row));
    }
    interp.predicates.emplace(
        p, Relation(std::move(index), interp.universe, std::move(rows)));
  }
  validate_interpretation(interp, sig);
  return interp;
}

}  // namespace relsem

#endif  // RELSEM_SERIALIZE_HPP
