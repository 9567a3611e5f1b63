#ifndef TAYLORLAB_CYCLIC_HPP
#define TAYLORLAB_CYCLIC_HPP

#include "taylorlab/clone.hpp"

namespace taylorlab {

struct CyclicTermResult {
  Term term;    // shared DAG over the basic operations
  Table table;  // materialized p-ary table, verified cyclic
  int arity = 0;
};

// Constructs a p-ary cyclic term operation by repairing one shift-orbit at a
// time: the values of the current term on an orbit generate (inside A^p,
// together with their shifts) a constant tuple whenever the algebra is
// Taylor and p is a prime above |A|; wrapping the term with that derivation
// makes it constant on the orbit without disturbing already-repaired orbits.
// Returns nullopt when some orbit closure contains no constant tuple.
std::optional<CyclicTermResult> cyclic_term(const Algebra& alg, int p);

// f(x,y,z) = t(x,..,x, y,..,y, z,..,z) with block sizes k, l, m, where t is
// the star-iterated cyclic term. Arities and block sizes satisfy
// n = k + l + m = p^levels, n and k congruent to 1 mod |A|!, 2k >= l, so the
// same f witnesses the edge actions and the binary/ternary absorptions.
struct UnifiedOperation {
  Term term;
  Table table;  // ternary
  int cyclic_arity = 0;
  int base_arity = 0;  // p
  int levels = 0;
  long long k = 0, l = 0, m = 0;
};

// Construction only; the five-point verification lives with the edge
// machinery (see verify_unified_operation in classify.hpp).
UnifiedOperation build_unified_candidate(const Algebra& alg);

// Star composition of cyclic tables evaluated on a block pattern
// x^k y^l z^m; used by the candidate builder and by tests.
Element eval_star_on_blocks(const Table& base, int p, int levels, int domain_size,
                            long long k, long long l, Element x, Element y, Element z);

}  // namespace taylorlab

#endif
