#ifndef TAYLORLAB_RELOPS_HPP
#define TAYLORLAB_RELOPS_HPP

#include <optional>

#include "taylorlab/clone.hpp"
#include "taylorlab/relation.hpp"

namespace taylorlab {

// Turns a linked proper subdirect invariant binary relation into an
// invariant, subdirect, proper, central relation that is symmetric or
// transitive. Every step is a pp-definition, so invariance is inherited;
// the postcondition is asserted on every call.
Relation centralize(const Algebra& alg, const Relation& r);

// Ternary: all three binary projections full, and any two coordinates
// determine the third.
bool is_strongly_functional(const Relation& r);

// Some invariant, proper, irredundant, subdirect binary relation; exact
// within the subpower-enumeration cap. Deterministic: fewest tuples first,
// then lexicographically least.
std::optional<Relation> find_binary_witness(const Algebra& alg);

// An invariant strongly functional ternary relation, searched over graphs
// {(x,y,q(x,y))} of quasigroup operations (complete by the determination
// property); or absent.
std::optional<Relation> find_strongly_functional(const Algebra& alg);

// Generates all Latin squares of the given order, in lexicographic order of
// their flat tables.
std::vector<Table> latin_squares(int order);

struct Trichotomy {
  int tag = 1;  // 1, 2, or 3
  std::optional<Relation> witness;
};

// (1) no proper irredundant subdirect subpowers, (2) binary witness,
// (3) ternary strongly functional witness. Tags 2 and 3 carry witnesses;
// tag 1 is
// sound because any proper irredundant subdirect subpower pp-defines one of
// the two witness shapes.
Trichotomy subdirect_trichotomy(const Algebra& alg);

// The diagonal of A^2 is a block of some congruence iff it is a block of the
// congruence generated by collapsing all diagonal pairs.
bool is_abelian(const Algebra& alg);

struct AbelianGroupStructure {
  Element zero = 0;
  Table add;                                   // binary table
  Table neg;                                   // unary table
  std::vector<std::pair<int, int>> decomposition;  // (prime, exponent) factors
  Term malcev;
};

// Recovers the affine-module structure of an abelian Taylor algebra: picks a
// Mal'cev term p, sets x+y = p(x,0,y), and verifies the group axioms and
// that every basic operation is a sum of integer-multiple unary traces.
// Absent (with no side effects) when some axiom fails.
std::optional<AbelianGroupStructure> affine_structure(const Algebra& alg);

}  // namespace taylorlab

#endif
