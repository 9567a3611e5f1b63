#ifndef TAYLORLAB_CLASSIFY_HPP
#define TAYLORLAB_CLASSIFY_HPP

#include <map>

#include "taylorlab/absorption.hpp"
#include "taylorlab/cyclic.hpp"
#include "taylorlab/edges.hpp"

namespace taylorlab {

struct FourTypesReport {
  bool one_element_convention = false;

  bool has_2abs = false;
  std::vector<Element> two_abs_set;
  std::optional<Term> two_abs_witness;

  bool has_center = false;
  std::vector<Element> center_set;
  std::optional<Term> center_witness;  // ternary absorption witness

  bool has_abelian_quotient = false;
  Congruence abelian_alpha;

  bool has_poly_complete_quotient = false;
  Congruence poly_complete_alpha;
  int reflexive_scan_arity_bound = 3;

  char primary_case = '?';  // first of a,b,c,d that holds
};

// Every flag evaluated with certificates; at least one holds for every
// algebra within the scan caps.
FourTypesReport four_types(const Algebra& alg);

// Simple + no proper irredundant subdirect subpowers: a ternary term with
// t(a,a,b) = t(a,b,a) = t(b,a,a) = a for all pairs outside mu.
std::optional<Term> produce_majority_term(const Algebra& alg);

struct SemilatticeBlockResult {
  std::vector<Element> block;  // a mu-class
  // per ordered pair (a outside, b inside): binary witness with f(a,b)=f(b,a)=b
  std::vector<std::tuple<Element, Element, Term>> witnesses;
};

// Simple, |A| > 2, with a proper irredundant subdirect binary subpower:
// some mu-class B such that every pair (a, b) with b in B, a outside is a
// semilattice edge witnessed by the identity congruence.
std::optional<SemilatticeBlockResult> produce_semilattice_block(const Algebra& alg);

enum class Maybe { no, yes, unknown };

struct OmittingTypesReport {
  bool minimal_taylor_input = false;

  bool a_free = true, s_free = true, m_free = true;
  bool sm_free = true, as_free = true, am_free = true;
  bool z2_edge_free = true;

  bool bounded_width = false;           // = a_free (holds for any algebra)
  Maybe few_subpowers = Maybe::unknown; // = s_free on minimal Taylor inputs

  std::optional<Term> malcev, majority, commutative_binary;
  Maybe has_3edge = Maybe::unknown;
  std::optional<Term> three_edge;
  std::vector<int> wnu_arities;  // arities <= cap with a wnu witness
  std::map<int, Term> wnu_witnesses;
  int arity_bound = 0;

  // Consistency of the omitting-types equivalences on minimal Taylor inputs.
  bool biconditionals_checked = false;
  bool biconditionals_ok = true;
  std::vector<std::string> biconditional_failures;

  bool flag(const std::string& name) const;
};

OmittingTypesReport omitting_types(const Algebra& alg);

struct SuiteResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

// Batch verification of the structural properties on one algebra. Suites:
// "all", "minimal-taylor", "edges". Refuses non-Taylor algebras.
std::vector<SuiteResult> theorem_suite(const Algebra& alg, const std::string& suite = "all");

struct UnifiedVerification {
  bool semilattice_actions = true;
  bool majority_actions = true;
  bool abelian_actions = true;
  bool ternary_absorptions = true;
  bool binary_absorptions = true;
  bool generates = true;
  bool all() const {
    return semilattice_actions && majority_actions && abelian_actions && ternary_absorptions &&
           binary_absorptions && generates;
  }
};

UnifiedVerification verify_unified_operation(const Algebra& alg, const UnifiedOperation& u);

// Construction + full verification; throws logic_error if a point fails.
UnifiedOperation unified_operation(const Algebra& alg);

}  // namespace taylorlab

#endif
