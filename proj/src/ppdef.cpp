#include "taylorlab/ppdef.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace taylorlab {

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw argument_error("pp formula: expected '" + std::string(1, c) + "' at position " +
                           std::to_string(pos));
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
    if (start == pos) throw argument_error("pp formula: identifier expected at position " +
                                           std::to_string(pos));
    return s.substr(start, pos - start);
  }
};

PPFormula::TermRef make_term(const std::string& tok) {
  PPFormula::TermRef t;
  if (std::isdigit((unsigned char)tok[0])) {
    t.is_const = true;
    t.value = std::stoi(tok);
  } else {
    t.var = tok;
  }
  return t;
}

}  // namespace

PPFormula PPFormula::parse(const std::string& text) {
  PPFormula f;
  Lexer lx{text};
  size_t save = lx.pos;
  if (!lx.eof()) {
    std::string first = lx.ident();
    if (first == "E") {
      while (lx.peek() != ':') f.bound_vars.push_back(lx.ident());
      lx.expect(':');
    } else {
      lx.pos = save;
    }
  }
  std::set<std::string> bound(f.bound_vars.begin(), f.bound_vars.end());
  std::set<std::string> seen_free;
  auto note_var = [&](const TermRef& t) {
    if (t.is_const || bound.count(t.var)) return;
    if (seen_free.insert(t.var).second) f.free_vars.push_back(t.var);
  };

  do {
    std::string tok = lx.ident();
    Atom atom;
    if (lx.accept('(')) {
      atom.relation = tok;
      atom.args.push_back(make_term(lx.ident()));
      while (lx.accept(',')) atom.args.push_back(make_term(lx.ident()));
      lx.expect(')');
    } else {
      lx.expect('=');
      atom.args.push_back(make_term(tok));
      atom.args.push_back(make_term(lx.ident()));
    }
    for (const auto& a : atom.args) note_var(a);
    f.atoms.push_back(std::move(atom));
  } while (lx.accept('&'));
  if (!lx.eof()) throw argument_error("pp formula: trailing input at position " +
                                      std::to_string(lx.pos));
  if (f.atoms.empty()) throw argument_error("pp formula: no atoms");
  return f;
}

Relation pp_eval(int n, const std::map<std::string, Relation>& env, const PPFormula& f) {
  std::vector<std::string> vars = f.free_vars;
  for (const auto& v : f.bound_vars)
    if (std::find(vars.begin(), vars.end(), v) != vars.end())
      throw argument_error("pp formula: variable both free and bound: " + v);
  vars.insert(vars.end(), f.bound_vars.begin(), f.bound_vars.end());
  std::map<std::string, int> var_id;
  for (size_t i = 0; i < vars.size(); ++i) var_id[vars[i]] = (int)i;

  struct BoundAtom {
    const Relation* rel = nullptr;  // nullptr: equality atom
    std::vector<int> var_ids;       // -1 entries use const_vals
    std::vector<Element> const_vals;
    size_t est_size = 0;
  };
  std::vector<BoundAtom> atoms;
  for (const auto& a : f.atoms) {
    BoundAtom b;
    if (!a.relation.empty()) {
      auto it = env.find(a.relation);
      if (it == env.end()) throw argument_error("pp formula: unbound relation " + a.relation);
      if ((int)a.args.size() != it->second.arity())
        throw argument_error("pp formula: arity mismatch for " + a.relation);
      if (it->second.domain_size() != n)
        throw argument_error("pp formula: domain mismatch for " + a.relation);
      b.rel = &it->second;
      b.est_size = it->second.count();
    } else {
      if (a.args.size() != 2) throw argument_error("pp formula: equality needs two terms");
      b.est_size = n;
    }
    for (const auto& t : a.args) {
      if (t.is_const) {
        if (t.value < 0 || t.value >= n)
          throw argument_error("pp formula: constant out of domain");
        b.var_ids.push_back(-1);
        b.const_vals.push_back(t.value);
      } else {
        b.var_ids.push_back(var_id[t.var]);
        b.const_vals.push_back(0);
      }
    }
    atoms.push_back(std::move(b));
  }
  // Join order: smaller atoms prune earlier. Results do not depend on it.
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const BoundAtom& a, const BoundAtom& b) { return a.est_size < b.est_size; });

  std::vector<Element> assign(vars.size(), -1);
  auto satisfies = [&](const BoundAtom& b) {
    std::vector<Element> vals(b.var_ids.size());
    for (size_t i = 0; i < b.var_ids.size(); ++i)
      vals[i] = b.var_ids[i] >= 0 ? assign[b.var_ids[i]] : b.const_vals[i];
    if (!b.rel) return vals[0] == vals[1];
    return b.rel->contains(vals);
  };

  Relation out(n, std::max<int>(1, (int)f.free_vars.size()));
  bool nullary = f.free_vars.empty();
  bool nullary_true = false;

  // Check each atom as soon as its last variable is assigned.
  std::vector<std::vector<const BoundAtom*>> check_at(vars.size());
  for (const auto& b : atoms) {
    int last = -1;
    for (int v : b.var_ids) last = std::max(last, v);
    if (last < 0) {
      if (!satisfies(b)) return out;  // constant-only atom failed
      continue;
    }
    check_at[last].push_back(&b);
  }

  std::function<void(size_t)> recur = [&](size_t v) {
    if (v == vars.size()) {
      if (nullary) {
        nullary_true = true;
      } else {
        std::vector<Element> t(f.free_vars.size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = assign[i];
        out.add(t);
      }
      return;
    }
    for (Element x = 0; x < n; ++x) {
      assign[v] = x;
      bool ok = true;
      for (const auto* b : check_at[v])
        if (!satisfies(*b)) {
          ok = false;
          break;
        }
      if (ok) recur(v + 1);
    }
    assign[v] = -1;
  };
  recur(0);

  if (nullary) {
    Relation r(n, 1);
    if (nullary_true)
      for (Element x = 0; x < n; ++x) r.set(x);
    return r;
  }
  return out;
}

}  // namespace taylorlab
