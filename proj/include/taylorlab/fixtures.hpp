#ifndef TAYLORLAB_FIXTURES_HPP
#define TAYLORLAB_FIXTURES_HPP

#include "taylorlab/json_io.hpp"
#include "taylorlab/term.hpp"

namespace taylorlab {

// Bundled corpus: the four Boolean minimal Taylor algebras, the three
// 3-element examples, the three 4-element examples, and a few non-minimal /
// non-Taylor algebras used by tests and the CLI.
struct Fixture {
  std::string id;
  Algebra algebra;
  json expect;  // machine-checkable claims, see run_manifest
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& id);

// The minimal Taylor corpus used by the equivalence and structure suites.
std::vector<std::string> minimal_taylor_corpus_ids();

struct FixtureCheckResult {
  std::string claim;
  bool pass;
  std::string detail;
};

// Evaluates every claim of a fixture manifest against the algebra.
std::vector<FixtureCheckResult> run_manifest(const Algebra& alg, const json& expect);

// Parses a prefix term expression, e.g. "(m (m x y z) y w)", resolving
// operation names against the algebra and variables x y z w x5 x6 ...
Term parse_term(const Algebra& alg, const std::string& text, int arity);

// Ready-made small algebras (also available as fixtures).
Algebra boolean_join();
Algebra boolean_meet();
Algebra boolean_majority();
Algebra boolean_minority();
Algebra rps();
Algebra z3_affine();
Algebra maj_first();   // 3-element majority, first argument on distinct triples
Algebra maj_two();     // 3-element majority, constant 2 on distinct triples
Algebra noez_majority();
Algebra noez_abelian();
Algebra star_algebra();
Algebra boolean_join_with_minority();  // Taylor, not minimal
Algebra boolean_projection_algebra();  // not Taylor
Algebra boolean_x_or_yz();             // x v (y & z)

}  // namespace taylorlab

#endif
