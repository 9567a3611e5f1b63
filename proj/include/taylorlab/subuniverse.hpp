#ifndef TAYLORLAB_SUBUNIVERSE_HPP
#define TAYLORLAB_SUBUNIVERSE_HPP

#include <optional>

#include "taylorlab/relation.hpp"
#include "taylorlab/term.hpp"

namespace taylorlab {

// Closure record for one generated subpower. Members are tuple indices in
// insertion order; parents[i] describes how member i was produced
// (op_index = -1 for a generator).
struct SgResult {
  Relation relation;
  std::vector<size_t> members;
  struct Parent {
    int op_index = -1;
    std::vector<uint32_t> children;  // positions in members
  };
  std::vector<Parent> parents;          // parallel to members, filled when tracked
  std::vector<uint32_t> generator_member;  // member index of each input generator

  // Derivation of a member as a term over the input generators: generator i
  // becomes the i-th variable of a term of the given arity.
  class Term witness_term(const Algebra& alg, size_t member_index, int arity) const;
};

// Least subset of A^m containing the generators and closed under all basic
// operations applied coordinatewise. Empty generator set gives the empty
// relation. track_witnesses records the derivation of every member. An
// optional stop predicate (on the tuple index of each new member) aborts the
// closure early; the result is then a valid partial closure.
SgResult sg(const Algebra& alg, int power,
            const std::vector<std::vector<Element>>& generators,
            bool track_witnesses = false,
            const std::function<bool(size_t)>& stop = nullptr);

Relation sg_relation(const Algebra& alg, int power,
                     const std::vector<std::vector<Element>>& generators);

// One-dimensional convenience: generated subuniverse as an element list.
std::vector<Element> sg_subuniverse(const Algebra& alg, const std::vector<Element>& gens);

// All subuniverses of A (including the empty set and A itself), deterministic
// order (sorted by size, then lexicographic).
std::vector<std::vector<Element>> all_subuniverses(const Algebra& alg);

// All subuniverses of A^m, enumerated by closure BFS. When reflexive_only is
// set, only subpowers containing the diagonal are produced (starting from the
// closure of the diagonal). Throws resource_error past the configured cap.
std::vector<Relation> all_subpowers(const Algebra& alg, int power, bool reflexive_only = false);

}  // namespace taylorlab

#endif
