#ifndef TAYLORLAB_ABSORPTION_HPP
#define TAYLORLAB_ABSORPTION_HPP

#include <optional>

#include "taylorlab/clone.hpp"
#include "taylorlab/relation.hpp"

namespace taylorlab {

// Witness search: first table in Clo_n with t(a) in B whenever at least n-1
// arguments lie in B. Exact at arity n.
std::optional<Term> is_n_absorbing(const Algebra& alg, const std::vector<Element>& b, int n);

// Verifies a concrete table against the n-absorption condition for B.
bool table_absorbs(const Table& t, int arity, int domain_size, const std::vector<Element>& b);

// Every basic operation has a coordinate whose B-membership forces the
// result into B. Complete for the clone since the property composes.
bool is_projective(const Algebra& alg, const std::vector<Element>& b);

// B(x) v (y = z) is invariant.
bool is_strongly_projective(const Algebra& alg, const std::vector<Element>& b);

// Exact, cap-free tests valid on minimal Taylor algebras:
// 2-absorption iff B(x) v B(y) v B(z) is invariant; 3-absorption (= being a
// center) iff B(x) v B(y) is invariant. Throw precondition_error otherwise.
bool min_taylor_2abs(const Algebra& alg, const std::vector<Element>& b);
bool min_taylor_3abs(const Algebra& alg, const std::vector<Element>& b);

// Intersection of all 2-absorbing subuniverses of a minimal Taylor algebra;
// verified 2-absorbing and with no proper 2-absorbing subuniverse inside.
std::vector<Element> minimal_2abs(const Algebra& alg);

// Three-valued unbounded-arity verdict.
enum class AbsorbingVerdict { yes, no, unknown_beyond_cap };
struct AbsorptionReport {
  AbsorbingVerdict verdict = AbsorbingVerdict::unknown_beyond_cap;
  int witness_arity = 0;
  std::optional<Term> witness;
  int searched_arity_bound = 0;
};

// Witness search up to the arity cap; on minimal Taylor algebras a negative
// answer is exact (absorption implies 3-absorption for singletons, and
// n-absorbing subsets that are not 3-absorbing do not occur among
// caps <= 3; for larger sets the relation tests at n = 2,3 plus the cap
// search decide yes/no/unknown).
AbsorptionReport absorbing_report(const Algebra& alg, const std::vector<Element>& b);

struct LinkedAbsorptionResult {
  std::vector<Element> subuniverse;
  Term witness;
};

// Taylor algebra + invariant, subdirect, proper, linked R on A^2: produces a
// nontrivial 3-absorbing subuniverse. Either a nontrivial 2-absorbing
// subuniverse exists (then it 3-absorbs via the composed witness), or the
// left center of the centralized relation is a center and hence 3-absorbs.
LinkedAbsorptionResult absorption_from_linked(const Algebra& alg, const Relation& r);

// Relational characterizations used both in the decision procedures and as
// independent cross-checks.
Relation union_membership_relation(int n, const std::vector<Element>& b, int arity);  // B(x1) v .. v B(xk)
Relation strong_projectivity_relation(int n, const std::vector<Element>& b);          // B(x) v (y = z)

// B-essential criterion for absorption: B <=_n A iff every family of n
// tuples with off-diagonal entries in B generates a relation meeting B^n.
bool b_essential_criterion(const Algebra& alg, const std::vector<Element>& b, int n);

}  // namespace taylorlab

#endif
