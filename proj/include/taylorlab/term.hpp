#ifndef TAYLORLAB_TERM_HPP
#define TAYLORLAB_TERM_HPP

#include <memory>
#include <optional>
#include <string>

#include "taylorlab/algebra.hpp"

namespace taylorlab {

// Derivation tree over basic-operation symbols and projections. Children are
// shared, so deep constructions stay small in memory; evaluation over a full
// input cube is memoized per node.
class Term {
 public:
  struct Node {
    int op_index = -1;                  // -1: projection
    int proj = -1;                      // projection coordinate when op_index < 0
    std::vector<std::shared_ptr<const Node>> children;
  };

  Term() = default;
  static Term projection(int coordinate, int arity);
  static Term apply(int op_index, std::vector<Term> children);
  static Term from_root(std::shared_ptr<const Node> root, int arity);

  bool valid() const { return root_ != nullptr; }
  int arity() const { return arity_; }

  Element eval(const Algebra& alg, const std::vector<Element>& args) const;

  // Table of the induced operation; memoizes whole subterm columns.
  Table table(const Algebra& alg) const;

  // Prefix expression, e.g. (m (m x y z) y z). Variables are named
  // x y z w x5 x6 ... Shared subterms are expanded; expansion is truncated
  // with an ellipsis once max_len characters are exceeded.
  std::string to_string(const Algebra& alg, size_t max_len = 4096) const;

  size_t node_count() const;

  const std::shared_ptr<const Node>& root() const { return root_; }

 private:
  std::shared_ptr<const Node> root_;
  int arity_ = 0;
};

}  // namespace taylorlab

#endif
