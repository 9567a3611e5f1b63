#ifndef TAYLORLAB_EDGES_HPP
#define TAYLORLAB_EDGES_HPP

#include <optional>

#include "taylorlab/clone.hpp"
#include "taylorlab/relops.hpp"

namespace taylorlab {

enum class EdgeType { semilattice, majority, abelian };

const char* edge_type_name(EdgeType t);

// One witnessed edge classification for a pair (a, b): a proper congruence
// theta on Sg(a,b) separating a and b, together with the type evidence.
struct EdgeWitness {
  Element a = 0, b = 0;
  EdgeType type = EdgeType::semilattice;
  std::vector<Element> subuniverse;  // Sg(a,b)
  Congruence theta;
  std::optional<Term> term;  // semilattice: binary with top b/theta; majority: ternary
  std::optional<AbelianGroupStructure> quotient_structure;  // abelian edges, when affine
};

// All witnesses over all proper congruences of Sg(a,b) separating a and b.
// Cached per (algebra, pair).
std::vector<EdgeWitness> classify_pair(const Algebra& alg, Element a, Element b);

bool is_edge(const Algebra& alg, Element a, Element b);
bool is_edge_of_type(const Algebra& alg, Element a, Element b, EdgeType t);

// Some maximal witnessing congruence theta satisfies: all a' in a/theta,
// b' in b/theta generate the same subalgebra Sg(a,b).
bool is_minimal_edge(const Algebra& alg, const EdgeWitness& w);

struct EdgeGraph {
  int vertices = 0;
  struct Arc {
    Element from, to;
    EdgeType type;
    bool minimal;
  };
  std::vector<Arc> arcs;
};

EdgeGraph edge_graph(const Algebra& alg, bool minimal_only);
// Undirected reachability over all vertices.
bool check_connectivity(const EdgeGraph& g);
std::string edge_graph_dot(const EdgeGraph& g);

// B is stable under an edge (p, q) if for every witnessing congruence theta
// of Sg(p,q) whose p-block meets B, every theta-block meets B. stable_under
// quantifies over all edges of the listed types.
bool stable_under(const Algebra& alg, const std::vector<Element>& b,
                  const std::vector<EdgeType>& types);

// s-edges are minimal semilattice edges; by thinness Sg(a,b) = {a,b} and the
// witnessing congruence is the equality. Minimal Taylor only.
std::vector<std::pair<Element, Element>> s_edges(const Algebra& alg);
bool s_closed(const Algebra& alg, const std::vector<Element>& b);
std::optional<std::vector<Element>> s_walk(const Algebra& alg, Element from,
                                           const std::vector<Element>& b);

}  // namespace taylorlab

#endif
