#ifndef TAYLORLAB_ALGEBRA_HPP
#define TAYLORLAB_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "taylorlab/base.hpp"

namespace taylorlab {

struct OperationTable {
  std::string name;
  int arity = 0;
  Table table;  // length size^arity, entries in {0..size-1}

  Element apply(const Element* args, int size) const {
    size_t idx = 0;
    for (int i = 0; i < arity; ++i) idx = idx * size + args[i];
    return table[idx];
  }
};

// Finite idempotent algebra on {0..size-1}. Immutable after construction.
class Algebra {
 public:
  Algebra(int size, std::vector<OperationTable> ops, std::string name = "",
          bool require_idempotent = true);

  int size() const { return size_; }
  const std::string& name() const { return name_; }
  const std::vector<OperationTable>& operations() const { return ops_; }
  const OperationTable& op(size_t i) const { return ops_.at(i); }
  size_t num_ops() const { return ops_.size(); }
  bool idempotent() const { return idempotent_; }

  Element eval(size_t op_index, const std::vector<Element>& args) const;

  // Subalgebra on a closed subset; elements are reindexed in increasing order.
  Algebra restrict_to(const std::vector<Element>& carrier) const;

  // Content hash, used as a cache key.
  uint64_t key() const { return key_; }

  // Throws precondition_error when the algebra is not idempotent; guards
  // every analysis whose theory assumes idempotence.
  void require_idempotent(const char* who) const;

 private:
  int size_;
  std::vector<OperationTable> ops_;
  std::string name_;
  bool idempotent_;
  uint64_t key_;
};

std::vector<Element> full_domain(int size);

// Tuple <-> lexicographic index (leftmost most significant).
size_t tuple_index(const std::vector<Element>& t, int size);
void tuple_decode(size_t index, int size, int arity, Element* out);

}  // namespace taylorlab

#endif
