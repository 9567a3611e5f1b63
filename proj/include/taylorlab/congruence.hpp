#ifndef TAYLORLAB_CONGRUENCE_HPP
#define TAYLORLAB_CONGRUENCE_HPP

#include "taylorlab/algebra.hpp"

namespace taylorlab {

// Partition of a carrier set; blocks are sorted by least element.
struct Partition {
  std::vector<Element> carrier;               // sorted
  std::vector<std::vector<Element>> blocks;   // sorted blocks, by least element
  std::vector<int> block_of;                  // domain-size array, -1 off carrier

  size_t num_blocks() const { return blocks.size(); }
  bool same_block(Element a, Element b) const { return block_of[a] == block_of[b] && block_of[a] >= 0; }
  bool is_equality() const { return blocks.size() == carrier.size(); }
  bool is_full() const { return blocks.size() == 1; }
  bool operator==(const Partition& o) const { return block_of == o.block_of; }
  bool operator<(const Partition& o) const { return block_of < o.block_of; }

  static Partition from_block_of(int domain_size, const std::vector<int>& raw);
  static Partition equality_on(int domain_size, const std::vector<Element>& carrier);
  static Partition full_on(int domain_size, const std::vector<Element>& carrier);
};

// Partition compatible with all operations. The carrier must be a subuniverse.
using Congruence = Partition;

// True iff componentwise block-equal argument tuples give block-equal results,
// for every basic operation restricted to the carrier.
bool is_congruence(const Algebra& alg, const Partition& p);

// Smallest congruence of the carrier-restricted algebra identifying a and b.
Congruence principal_congruence(const Algebra& alg, const std::vector<Element>& carrier,
                                Element a, Element b);

// Smallest congruence identifying every listed pair.
Congruence congruence_generated(const Algebra& alg, const std::vector<Element>& carrier,
                                const std::vector<std::pair<Element, Element>>& pairs);

// All congruences on the carrier, equality and full included, sorted by
// number of blocks descending (equality first) then lexicographically.
// Results are cached per (algebra, carrier).
std::vector<Congruence> all_congruences(const Algebra& alg, const std::vector<Element>& carrier);

// Proper congruences maximal under inclusion.
std::vector<Congruence> maximal_congruences(const Algebra& alg, const std::vector<Element>& carrier);

bool finer_or_equal(const Partition& fine, const Partition& coarse);

// Quotient algebra on block indices; requires carrier = full domain.
Algebra quotient(const Algebra& alg, const Congruence& cong);

// Connected-by-subuniverses equivalence: transitive closure of the pairs
// generating a proper subuniverse. Not a congruence in general.
Partition mu(const Algebra& alg);

// Exactly two congruences. One-element algebras report false.
bool is_simple(const Algebra& alg);

}  // namespace taylorlab

#endif
