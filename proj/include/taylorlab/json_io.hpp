#ifndef TAYLORLAB_JSON_IO_HPP
#define TAYLORLAB_JSON_IO_HPP

#include <json.hpp>

#include "taylorlab/relation.hpp"

namespace taylorlab {

using json = nlohmann::json;

// {"name": str, "size": n, "operations": [{"name", "arity", "table"}]}
Algebra algebra_from_json(const json& j, bool allow_non_idempotent = false);
json algebra_to_json(const Algebra& alg);
Algebra load_algebra(const std::string& path, bool allow_non_idempotent = false);

// {"arity": m, "size": n, "tuples": [[...], ...]}
Relation relation_from_json(const json& j);
json relation_to_json(const Relation& r);
std::map<std::string, Relation> relations_from_json(const json& j);

}  // namespace taylorlab

#endif
