#ifndef TAYLORLAB_CLONE_HPP
#define TAYLORLAB_CLONE_HPP

#include <optional>
#include <unordered_map>

#include "taylorlab/congruence.hpp"
#include "taylorlab/term.hpp"

namespace taylorlab {

// The k-ary term operations of an algebra: the free algebra on k generators,
// materialized as tables with a witness term per table.
class CloneSlice {
 public:
  int arity = 0;
  std::vector<Table> tables;  // insertion order of the closure, projections first

  bool contains(const Table& t) const { return index_of_.count(t) > 0; }
  std::optional<size_t> index_of(const Table& t) const {
    auto it = index_of_.find(t);
    if (it == index_of_.end()) return std::nullopt;
    return it->second;
  }
  Term witness(size_t index) const;  // reconstructs the derivation tree
  size_t size() const { return tables.size(); }

 private:
  struct TableHash {
    size_t operator()(const Table& t) const {
      uint64_t h = t.size();
      for (uint8_t v : t) h = hash_combine(h, v);
      return (size_t)h;
    }
  };
  std::unordered_map<Table, size_t, TableHash> index_of_;
  struct Parent {
    int op_index = -1;  // -1: projection (children empty, proj = coordinate)
    int proj = -1;
    std::vector<uint32_t> children;
  };
  std::vector<Parent> parents_;

  friend CloneSlice clone_slice_uncached(const Algebra& alg, int k, size_t max_size);

// Materializes and caches Clo_k when it fits in the budget; false otherwise.
bool try_materialize_slice(const Algebra& alg, int k, size_t budget);

// Streams the closure of Clo_k and returns the witness of the first table
// satisfying the predicate; exact absence when the closure completes within
// the cap (the completed slice is then cached).
std::optional<Term> search_slice(const Algebra& alg, int k,
                                 const std::function<bool(const Table&)>& pred);
  friend class SliceBuilder;
};

// Exact Clo_k as tables, built by closure from the projections. Cached per
// (algebra, k). Throws resource_error when k or the slice size exceeds the
// configured caps.
const CloneSlice& clone_slice(const Algebra& alg, int k);
CloneSlice clone_slice_uncached(const Algebra& alg, int k, size_t max_size);

// Materializes and caches Clo_k when it fits in the budget; false otherwise.
bool try_materialize_slice(const Algebra& alg, int k, size_t budget);

// Streams the closure of Clo_k and returns the witness of the first table
// satisfying the predicate; exact absence when the closure completes within
// the cap (the completed slice is then cached).
std::optional<Term> search_slice(const Algebra& alg, int k,
                                 const std::function<bool(const Table&)>& pred);

// Membership test b in Clo_{arity(b)}(A; gens): closes the projections under
// the given generator tables only, stopping as soon as all targets appear.
// Returns true iff every target is reached. max_size guards the closure.
bool clone_membership(const Algebra& alg, const std::vector<Table>& generator_tables,
                      const std::vector<Table>& targets, size_t max_size = 0);

// Conjunction of universally quantified equalities between argument patterns.
// A pattern maps each argument position of the sought k-ary term to a
// variable (>= 0) or a fixed element (encoded < 0). Within a group, all
// patterns must evaluate equal for every assignment, and equal to the target
// variable/constant when one is set.
struct IdentitySpec {
  int arity = 0;
  struct Pattern {
    std::vector<int> slots;  // var id >= 0, or constant c encoded as -(c+1)
  };
  struct Group {
    std::vector<Pattern> patterns;
    int target_var = -1;
    int target_const = -1;
  };
  std::vector<Group> groups;

  static int constant(Element c) { return -(c + 1); }

  static IdentitySpec cyclic(int k);
  static IdentitySpec wnu(int k);
  static IdentitySpec malcev();
  static IdentitySpec majority();
  static IdentitySpec minority();
  static IdentitySpec commutative();
  static IdentitySpec three_edge();  // e(y,y,x,x)=e(y,x,y,x)=e(x,x,x,y)=x
  // t(a,a,b)=t(a,b,a)=t(b,a,a)=a for each listed pair (a,b).
  static IdentitySpec pointwise_majority_on(const std::vector<std::pair<Element, Element>>& pairs);
};

bool table_satisfies(const Table& t, int k, int domain_size, const IdentitySpec& spec);

// First table in Clo_k satisfying the spec, with its witness term; or absent
// (exact at that arity).
std::optional<Term> find_term(const Algebra& alg, const IdentitySpec& spec);

struct TaylorCertificate {
  bool verdict = false;
  // Non-Taylor witness: subuniverse E with a 2-block congruence on which
  // every basic operation acts as a projection.
  std::vector<Element> witness_subuniverse;
  Congruence witness_congruence;
  std::vector<int> projection_coordinates;  // per basic operation
  // Optional cyclic witness when Taylor (only filled when cheap to find).
  std::optional<Term> cyclic_term;
};

// Decides Taylorness by scanning subalgebras and their two-block congruences
// for an all-projections quotient; complete because composition of
// projections is a projection and powers are not needed for the local test.
// Verdicts are cached per algebra.
TaylorCertificate is_taylor(const Algebra& alg);

// A cyclic ternary witness when one exists (needs the ternary slice).
std::optional<Term> cyclic_ternary_witness(const Algebra& alg);

struct MinimalityResult {
  bool minimal = false;
  std::optional<Term> counterexample;  // ternary generator of a proper Taylor reduct
  Table counterexample_table;
};

// Taylor algebras only: quantifies over ternary members of Clo_3, complete
// because every minimal Taylor clone is generated by a single ternary term.
MinimalityResult is_minimal_taylor(const Algebra& alg);

struct ReductResult {
  Algebra algebra;
  Term generator;
  Table generator_table;
};

// Minimal Taylor reduct (A; g), g ternary; ties are broken by the
// lexicographically least generator table among minimal clones.
ReductResult minimal_taylor_reduct(const Algebra& alg);

// True iff every basic operation of alg lies in Clo(A; g) at its own arity.
bool generates_clone(const Algebra& alg, const Term& g);
bool generates_clone_table(const Algebra& alg, const Table& g_table, int g_arity);

}  // namespace taylorlab

#endif
