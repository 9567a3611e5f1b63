#include "taylorlab/json_io.hpp"

#include <fstream>

namespace taylorlab {

Algebra algebra_from_json(const json& j, bool allow_non_idempotent) {
  if (!j.is_object() || !j.contains("size") || !j.contains("operations"))
    throw argument_error("algebra json needs \"size\" and \"operations\"");
  int size = j.at("size").get<int>();
  std::string name = j.value("name", "");
  std::vector<OperationTable> ops;
  for (const auto& oj : j.at("operations")) {
    OperationTable op;
    op.name = oj.value("name", "f" + std::to_string(ops.size()));
    op.arity = oj.at("arity").get<int>();
    for (const auto& v : oj.at("table")) op.table.push_back(v.get<uint8_t>());
    ops.push_back(std::move(op));
  }
  return Algebra(size, std::move(ops), name, !allow_non_idempotent);
}

json algebra_to_json(const Algebra& alg) {
  json j;
  j["name"] = alg.name();
  j["size"] = alg.size();
  j["operations"] = json::array();
  for (const auto& op : alg.operations()) {
    json oj;
    oj["name"] = op.name;
    oj["arity"] = op.arity;
    oj["table"] = json::array();
    for (uint8_t v : op.table) oj["table"].push_back((int)v);
    j["operations"].push_back(oj);
  }
  return j;
}

Algebra load_algebra(const std::string& path, bool allow_non_idempotent) {
  std::ifstream in(path);
  if (!in) throw argument_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw argument_error("malformed json in " + path + ": " + e.what());
  }
  // Fixture files wrap the algebra next to an expectation manifest.
  if (j.contains("algebra")) return algebra_from_json(j.at("algebra"), allow_non_idempotent);
  return algebra_from_json(j, allow_non_idempotent);
}

Relation relation_from_json(const json& j) {
  int arity = j.at("arity").get<int>();
  int size = j.at("size").get<int>();
  std::vector<std::vector<Element>> tuples;
  for (const auto& tj : j.at("tuples")) {
    std::vector<Element> t;
    for (const auto& v : tj) t.push_back(v.get<Element>());
    tuples.push_back(std::move(t));
  }
  return Relation::from_tuples(size, arity, tuples);
}

json relation_to_json(const Relation& r) {
  json j;
  j["arity"] = r.arity();
  j["size"] = r.domain_size();
  j["tuples"] = json::array();
  for (const auto& t : r.tuples()) {
    json tj = json::array();
    for (Element x : t) tj.push_back(x);
    j["tuples"].push_back(tj);
  }
  return j;
}

std::map<std::string, Relation> relations_from_json(const json& j) {
  std::map<std::string, Relation> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace(it.key(), relation_from_json(it.value()));
  return out;
}

}  // namespace taylorlab
