#ifndef TAYLORLAB_CATALOGUE_HPP
#define TAYLORLAB_CATALOGUE_HPP

#include "taylorlab/clone.hpp"

namespace taylorlab {

// Canonical key of a minimal Taylor algebra: the lexicographically least
// encoding, over all domain permutations, of the sorted ternary clone slice.
// Permutation-isomorphic, term-equivalent algebras share one key.
struct CanonicalForm {
  std::vector<Table> key;        // sorted Clo_3 of the best permuted copy
  Table representative;          // least ternary generator table of that copy
  std::string hex_digest() const;

  bool operator==(const CanonicalForm& o) const { return key == o.key; }
  bool operator<(const CanonicalForm& o) const { return key < o.key; }
};

CanonicalForm canonicalize(const Algebra& alg);

// Term-equivalence key without permutation minimization: the sorted ternary
// slice itself.
std::vector<Table> ternary_clone_key(const Algebra& alg);

struct CensusResult {
  int domain_size = 0;
  std::vector<CanonicalForm> forms;          // up to term equivalence + permutation
  size_t clones_up_to_term_equivalence = 0;  // without permutation quotient
  bool complete = false;                     // search mode may stop early
  size_t scanned = 0;                        // tables inspected
};

// Exhaustive census of minimal Taylor algebras generated by one idempotent
// ternary operation. size 2 is exhaustive and fast; size 3 iterates 3^24
// tables with permutation pruning and is meant to run in checkpointed
// slices (limit = number of canonical tables to inspect in this run).
CensusResult enumerate_minimal_taylor(int size, const std::string& mode,
                                      const std::string& checkpoint_path = "",
                                      size_t limit = 0);

}  // namespace taylorlab

#endif
