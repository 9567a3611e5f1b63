#ifndef TAYLORLAB_PPDEF_HPP
#define TAYLORLAB_PPDEF_HPP

#include <map>
#include <string>

#include "taylorlab/relation.hpp"

namespace taylorlab {

// Primitive positive formula with parameters: an optional block of
// existential variables followed by a conjunction of relation atoms,
// equalities, and singleton constants.
//
//   formula := ["E" var+ ":"] atom ("&" atom)*
//   atom    := NAME "(" term ("," term)* ")" | term "=" term
//   term    := var | natural
struct PPFormula {
  struct TermRef {
    bool is_const = false;
    Element value = 0;      // when is_const
    std::string var;        // otherwise
  };
  struct Atom {
    std::string relation;   // empty for an equality atom
    std::vector<TermRef> args;  // exactly 2 for equality
  };
  std::vector<std::string> bound_vars;
  std::vector<std::string> free_vars;  // in order of first appearance
  std::vector<Atom> atoms;

  static PPFormula parse(const std::string& text);
};

// Evaluates the defined relation over the free variables (in their listed
// order) by joining atoms in ascending estimated-size order.
Relation pp_eval(int domain_size, const std::map<std::string, Relation>& environment,
                 const PPFormula& formula);

}  // namespace taylorlab

#endif
