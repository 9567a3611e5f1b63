#include "taylorlab/classify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

namespace {

std::vector<std::vector<Element>> nontrivial_subsets(int n) {
  std::vector<std::vector<Element>> out;
  for (size_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<Element> b;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) b.push_back(i);
    out.push_back(std::move(b));
  }
  return out;
}

bool is_subuniverse(const Algebra& alg, const std::vector<Element>& b) {
  return sg_subuniverse(alg, b).size() == b.size();
}

// Reflexive proper irredundant subpower scan at arities 2 and 3.
bool has_reflexive_proper_irredundant(const Algebra& alg) {
  for (int arity = 2; arity <= 3; ++arity)
    for (const auto& r : all_subpowers(alg, arity, /*reflexive_only=*/true))
      if (is_proper(r) && is_irredundant(r) && is_reflexive(r)) return true;
  return false;
}

}  // namespace

FourTypesReport four_types(const Algebra& alg) {
  alg.require_idempotent("four_types");
  FourTypesReport rep;
  int n = alg.size();
  if (n == 1) {
    rep.one_element_convention = true;
    rep.has_2abs = rep.has_center = rep.has_abelian_quotient = rep.has_poly_complete_quotient =
        true;
    rep.primary_case = 'a';
    return rep;
  }

  // (a) nontrivial 2-absorbing subuniverse; exact at arity 2.
  for (const auto& b : nontrivial_subsets(n)) {
    if (!is_subuniverse(alg, b)) continue;
    if (auto w = is_n_absorbing(alg, b, 2)) {
      rep.has_2abs = true;
      rep.two_abs_set = b;
      rep.two_abs_witness = w;
      break;
    }
  }

  // (b) nontrivial center.
  bool taylor = is_taylor(alg).verdict;
  if (taylor && is_minimal_taylor(alg).minimal) {
    for (const auto& b : nontrivial_subsets(n)) {
      if (!is_subuniverse(alg, b)) continue;
      if (min_taylor_3abs(alg, b)) {
        rep.has_center = true;
        rep.center_set = b;
        rep.center_witness = is_n_absorbing(alg, b, 3);
        break;
      }
    }
  } else if (taylor) {
    // A linked invariant proper subdirect relation produces a center unless a
    // nontrivial 2-absorbing subuniverse got in the way.
    for (const auto& r : all_subpowers(alg, 2)) {
      if (!is_proper(r) || !is_subdirect(r) || !is_linked(r)) continue;
      try {
        Relation central = centralize(alg, r);
        std::vector<Element> b = left_center(central);
        if (!b.empty() && (int)b.size() < n) {
          bool companion_clean = true;  // companion is A itself
          for (const auto& c : nontrivial_subsets(n)) {
            if (!is_subuniverse(alg, c)) continue;
            if (is_n_absorbing(alg, c, 2)) companion_clean = false;
          }
          if (companion_clean) {
            rep.has_center = true;
            rep.center_set = b;
            rep.center_witness = is_n_absorbing(alg, b, 3);
            break;
          }
        }
      } catch (const std::exception&) {
        continue;
      }
    }
  }

  // (c) abelian quotient by a proper congruence: maximal ones suffice since
  // abelianness passes to quotients.
  for (const auto& alpha : maximal_congruences(alg, full_domain(n))) {
    if (is_abelian(quotient(alg, alpha))) {
      rep.has_abelian_quotient = true;
      rep.abelian_alpha = alpha;
      break;
    }
  }

  // (d) polynomially complete quotient: no proper irredundant subdirect
  // subpowers and no proper reflexive irredundant subpowers at arity <= 3.
  for (const auto& alpha : maximal_congruences(alg, full_domain(n))) {
    Algebra q = quotient(alg, alpha);
    if (q.size() == 1) continue;
    if (subdirect_trichotomy(q).tag != 1) continue;
    if (!has_reflexive_proper_irredundant(q)) {
      rep.has_poly_complete_quotient = true;
      rep.poly_complete_alpha = alpha;
      break;
    }
  }

  rep.primary_case = rep.has_2abs               ? 'a'
                     : rep.has_center           ? 'b'
                     : rep.has_abelian_quotient ? 'c'
                     : rep.has_poly_complete_quotient ? 'd'
                                                      : '?';
  return rep;
}

std::optional<Term> produce_majority_term(const Algebra& alg) {
  if (!is_simple(alg)) throw precondition_error("produce_majority_term requires a simple algebra");
  if (subdirect_trichotomy(alg).tag != 1)
    throw precondition_error(
        "produce_majority_term requires an algebra with no proper irredundant subdirect "
        "subpowers");
  Partition m = mu(alg);
  std::vector<std::pair<Element, Element>> pairs;
  for (Element a = 0; a < alg.size(); ++a)
    for (Element b = 0; b < alg.size(); ++b)
      if (a != b && !m.same_block(a, b)) pairs.push_back({a, b});
  return find_term(alg, IdentitySpec::pointwise_majority_on(pairs));
}

std::optional<SemilatticeBlockResult> produce_semilattice_block(const Algebra& alg) {
  if (!is_simple(alg)) throw precondition_error("produce_semilattice_block requires simplicity");
  if (alg.size() <= 2) throw precondition_error("produce_semilattice_block requires |A| > 2");
  if (!find_binary_witness(alg))
    throw precondition_error(
        "produce_semilattice_block requires a proper irredundant subdirect binary subpower");
  Partition m = mu(alg);
  const CloneSlice& s2 = clone_slice(alg, 2);
  for (const auto& block : m.blocks) {
    SemilatticeBlockResult res;
    res.block = block;
    bool all_ok = true;
    for (Element b : block) {
      for (Element a = 0; a < alg.size() && all_ok; ++a) {
        if (m.same_block(a, b)) continue;
        // f(a,b) = f(b,a) = b: a semilattice edge witnessed by equality.
        bool found = false;
        for (size_t ti = 0; ti < s2.size() && !found; ++ti) {
          const Table& t = s2.tables[ti];
          if (t[(size_t)a * alg.size() + b] == b && t[(size_t)b * alg.size() + a] == b) {
            res.witnesses.push_back({a, b, s2.witness(ti)});
            found = true;
          }
        }
        if (!found) all_ok = false;
      }
      if (!all_ok) break;
    }
    if (all_ok && !block.empty()) return res;
  }
  return std::nullopt;
}

bool OmittingTypesReport::flag(const std::string& name) const {
  if (name == "a_free") return a_free;
  if (name == "s_free") return s_free;
  if (name == "m_free") return m_free;
  if (name == "sm_free") return sm_free;
  if (name == "as_free") return as_free;
  if (name == "am_free") return am_free;
  if (name == "z2_edge_free") return z2_edge_free;
  if (name == "bounded_width") return bounded_width;
  if (name == "has_malcev") return malcev.has_value();
  if (name == "has_majority") return majority.has_value();
  if (name == "has_commutative_binary") return commutative_binary.has_value();
  throw argument_error("unknown omitting-types flag " + name);
}

OmittingTypesReport omitting_types(const Algebra& alg) {
  alg.require_idempotent("omitting_types");
  OmittingTypesReport rep;
  rep.arity_bound = Config::global().max_arity;
  rep.minimal_taylor_input = is_taylor(alg).verdict && is_minimal_taylor(alg).minimal;

  for (Element a = 0; a < alg.size(); ++a)
    for (Element b = 0; b < alg.size(); ++b) {
      if (a == b) continue;
      for (const auto& w : classify_pair(alg, a, b)) {
        switch (w.type) {
          case EdgeType::semilattice: rep.s_free = false; break;
          case EdgeType::majority: rep.m_free = false; break;
          case EdgeType::abelian:
            rep.a_free = false;
            if (w.quotient_structure &&
                w.quotient_structure->decomposition ==
                    std::vector<std::pair<int, int>>{{2, 1}})
              rep.z2_edge_free = false;
            break;
        }
      }
    }
  rep.sm_free = rep.s_free && rep.m_free;
  rep.as_free = rep.a_free && rep.s_free;
  rep.am_free = rep.a_free && rep.m_free;
  rep.bounded_width = rep.a_free;
  if (rep.minimal_taylor_input)
    rep.few_subpowers = rep.s_free ? Maybe::yes : Maybe::no;

  rep.malcev = find_term(alg, IdentitySpec::malcev());
  rep.majority = find_term(alg, IdentitySpec::majority());
  rep.commutative_binary = find_term(alg, IdentitySpec::commutative());
  for (int k = 2; k <= rep.arity_bound; ++k) {
    try {
      if (auto w = find_term(alg, IdentitySpec::wnu(k))) {
        rep.wnu_arities.push_back(k);
        rep.wnu_witnesses.emplace(k, *w);
      }
    } catch (const resource_error&) {
      break;
    }
  }

  // 3-edge term: a Mal'cev or majority term induces one directly; otherwise
  // search the 4-ary slice within budget.
  auto derive_three_edge = [&]() -> std::optional<Term> {
    if (rep.malcev) {
      // e(x1,x2,x3,x4) = p(x2,x1,x3)
      std::function<Term(const Term::Node*, const std::vector<Term>&)> subst =
          [&](const Term::Node* node, const std::vector<Term>& vars) -> Term {
        if (node->op_index < 0) return vars[node->proj];
        std::vector<Term> kids;
        for (const auto& c : node->children) kids.push_back(subst(c.get(), vars));
        return Term::apply(node->op_index, std::move(kids));
      };
      std::vector<Term> vars = {Term::projection(1, 4), Term::projection(0, 4),
                                Term::projection(2, 4)};
      return subst(rep.malcev->root().get(), vars);
    }
    if (rep.majority) {
      std::function<Term(const Term::Node*, const std::vector<Term>&)> subst =
          [&](const Term::Node* node, const std::vector<Term>& vars) -> Term {
        if (node->op_index < 0) return vars[node->proj];
        std::vector<Term> kids;
        for (const auto& c : node->children) kids.push_back(subst(c.get(), vars));
        return Term::apply(node->op_index, std::move(kids));
      };
      std::vector<Term> vars = {Term::projection(1, 4), Term::projection(2, 4),
                                Term::projection(3, 4)};
      return subst(rep.majority->root().get(), vars);
    }
    return std::nullopt;
  };
  if (auto e = derive_three_edge()) {
    if (!table_satisfies(e->table(alg), 4, alg.size(), IdentitySpec::three_edge()))
      throw std::logic_error("derived 3-edge term failed its identities");
    rep.three_edge = e;
    rep.has_3edge = Maybe::yes;
  } else {
    try {
      rep.three_edge = find_term(alg, IdentitySpec::three_edge());
      rep.has_3edge = rep.three_edge ? Maybe::yes : Maybe::no;
    } catch (const resource_error&) {
      rep.has_3edge = Maybe::unknown;
    }
  }

  if (rep.minimal_taylor_input) {
    rep.biconditionals_checked = true;
    auto fail = [&](const std::string& what) {
      rep.biconditionals_ok = false;
      rep.biconditional_failures.push_back(what);
    };
    if (rep.sm_free != rep.malcev.has_value())
      fail("sm-free does not match the Mal'cev witness");
    if (rep.as_free != rep.majority.has_value())
      fail("as-free does not match the majority witness");
    if ((rep.m_free && rep.z2_edge_free) != rep.commutative_binary.has_value())
      fail("m-free + no Z2 edges does not match the commutative witness");
    bool wnu34 = std::count(rep.wnu_arities.begin(), rep.wnu_arities.end(), 3) &&
                 std::count(rep.wnu_arities.begin(), rep.wnu_arities.end(), 4);
    if (rep.arity_bound >= 4 && rep.a_free != wnu34)
      fail("a-free does not match the wnu witnesses at arities 3 and 4");
    if (rep.has_3edge != Maybe::unknown && rep.s_free != (rep.has_3edge == Maybe::yes))
      fail("s-free does not match the 3-edge witness");
  }
  return rep;
}

UnifiedVerification verify_unified_operation(const Algebra& alg, const UnifiedOperation& u) {
  UnifiedVerification v;
  int n = alg.size();
  auto f = [&](Element x, Element y, Element z) {
    return (Element)u.table[((size_t)x * n + y) * n + z];
  };

  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a == b) continue;
      for (const auto& w : classify_pair(alg, a, b)) {
        const auto& blk_a = w.theta.blocks[w.theta.block_of[a]];
        const auto& blk_b = w.theta.blocks[w.theta.block_of[b]];
        std::vector<int> side(n, -1);
        for (Element x : blk_a) side[x] = 0;
        for (Element x : blk_b) side[x] = 1;
        std::vector<Element> uni;
        uni.insert(uni.end(), blk_a.begin(), blk_a.end());
        uni.insert(uni.end(), blk_b.begin(), blk_b.end());
        if (w.type == EdgeType::semilattice) {
          // f = x v y v z on the quotient with top b/theta.
          for (Element x : uni)
            for (Element y : uni)
              for (Element z : uni) {
                int want = side[x] | side[y] | side[z];
                Element r = f(x, y, z);
                if (side[r] != want) v.semilattice_actions = false;
              }
        } else if (w.type == EdgeType::majority) {
          for (Element x : uni)
            for (Element y : uni)
              for (Element z : uni) {
                int want = (side[x] + side[y] + side[z]) >= 2 ? 1 : 0;
                if (side[f(x, y, z)] != want) v.majority_actions = false;
              }
        } else {
          // f(x,y,z) = x - y + z on the whole quotient Sg(a,b)/theta.
          Algebra e = alg.restrict_to(w.subuniverse);
          std::vector<int> local_of(n, -1);
          for (size_t i = 0; i < w.subuniverse.size(); ++i) local_of[w.subuniverse[i]] = (int)i;
          std::vector<int> raw(e.size(), -1);
          for (Element x : w.subuniverse) raw[local_of[x]] = w.theta.block_of[x];
          // Renumber blocks over the restricted carrier.
          Partition theta_local = Partition::from_block_of(e.size(), raw);
          Algebra q = quotient(e, theta_local);
          auto st = is_abelian(q) && is_taylor(q).verdict ? affine_structure(q) : std::nullopt;
          if (!st) {
            v.abelian_actions = false;
            continue;
          }
          auto add = [&](Element p, Element r) { return (Element)st->add[(size_t)p * q.size() + r]; };
          for (Element x : w.subuniverse)
            for (Element y : w.subuniverse)
              for (Element z : w.subuniverse) {
                Element lhs = theta_local.block_of[local_of[f(x, y, z)]];
                Element want = add(add((Element)theta_local.block_of[local_of[x]],
                                       (Element)st->neg[theta_local.block_of[local_of[y]]]),
                                   (Element)theta_local.block_of[local_of[z]]);
                if (lhs != want) v.abelian_actions = false;
              }
        }
      }
    }

  // Absorption witnessing, against the exact relation tests.
  bool minimal = is_taylor(alg).verdict && is_minimal_taylor(alg).minimal;
  if (minimal) {
    for (size_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Element> b;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) b.push_back(i);
      if (invariant(alg, union_membership_relation(n, b, 2))) {  // 3-absorbing
        if (!table_absorbs(u.table, 3, n, b)) v.ternary_absorptions = false;
      }
      if (invariant(alg, union_membership_relation(n, b, 3))) {  // 2-absorbing
        for (auto [i, j, k] : {std::tuple<int, int, int>{0, 0, 1},
                               {0, 1, 0},
                               {1, 0, 0},
                               {0, 1, 1},
                               {1, 0, 1},
                               {1, 1, 0}}) {
          Table bin(n * n);
          for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) {
              Element args[2] = {x, y};
              bin[(size_t)x * n + y] = (uint8_t)f(args[i], args[j], args[k]);
            }
          if (!table_absorbs(bin, 2, n, b)) v.binary_absorptions = false;
        }
      }
    }
  }
  v.generates = generates_clone_table(alg, u.table, 3);
  return v;
}

UnifiedOperation unified_operation(const Algebra& alg) {
  if (!is_taylor(alg).verdict || !is_minimal_taylor(alg).minimal)
    throw precondition_error("unified_operation requires a minimal Taylor algebra");
  UnifiedOperation u = build_unified_candidate(alg);
  auto v = verify_unified_operation(alg, u);
  if (!v.all()) throw std::logic_error("unified operation failed post-hoc verification");
  return u;
}

namespace {

void suite_check(std::vector<SuiteResult>& out, const std::string& name,
                 const std::function<std::pair<bool, std::string>()>& body) {
  SuiteResult r;
  r.name = name;
  try {
    auto [pass, detail] = body();
    r.pass = pass;
    r.detail = detail;
  } catch (const resource_error& e) {
    r.skipped = true;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(r));
}

std::string set_str(const std::vector<Element>& b) {
  std::string s = "{";
  for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + "}";
}

}  // namespace

std::vector<SuiteResult> theorem_suite(const Algebra& alg, const std::string& suite) {
  alg.require_idempotent("theorem_suite");
  if (!is_taylor(alg).verdict)
    throw precondition_error("theorem_suite requires a Taylor algebra");
  std::vector<SuiteResult> out;
  int n = alg.size();
  bool minimal = is_minimal_taylor(alg).minimal;
  bool do_abs = suite == "all" || suite == "minimal-taylor";
  bool do_edges = suite == "all" || suite == "edges" || suite == "minimal-taylor";

  if (do_abs && minimal) {
    suite_check(out, "2-absorption equivalences", [&]() -> std::pair<bool, std::string> {
      for (const auto& b : nontrivial_subsets(n)) {
        bool w = is_n_absorbing(alg, b, 2).has_value();
        bool rel = min_taylor_2abs(alg, b);
        bool proj = is_projective(alg, b);
        bool sproj = is_strongly_projective(alg, b);
        if (w != rel || rel != proj || proj != sproj)
          return std::make_pair(false, "mismatch at B=" + set_str(b));
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "3-absorption equivalences", [&]() -> std::pair<bool, std::string> {
      for (const auto& b : nontrivial_subsets(n)) {
        bool w = is_n_absorbing(alg, b, 3).has_value();
        bool rel = min_taylor_3abs(alg, b);
        if (w != rel) return std::make_pair(false, "mismatch at B=" + set_str(b));
        if (b.size() == 1) {
          auto rep = absorbing_report(alg, b);
          bool abs = rep.verdict == AbsorbingVerdict::yes;
          if (abs != rel)
            return std::make_pair(false, "singleton absorption mismatch at B=" + set_str(b));
        }
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "absorbing sets are subuniverses", [&]() -> std::pair<bool, std::string> {
      std::string note;
      int max_arity = 1;
      for (int arity = 2; arity <= Config::global().max_arity; ++arity) {
        if (!try_materialize_slice(alg, arity, 20000)) {
          note = "slices above arity " + std::to_string(arity - 1) + " exceed the scan budget";
          break;
        }
        max_arity = arity;
      }
      for (const auto& b : nontrivial_subsets(n))
        for (int arity = 2; arity <= max_arity; ++arity)
          if (is_n_absorbing(alg, b, arity) && !is_subuniverse(alg, b))
            return std::make_pair(false, "absorbing non-subuniverse B=" + set_str(b));
      return std::make_pair(true, note);
    });
    suite_check(out, "2-absorption union and intersection laws", [&]() -> std::pair<bool, std::string> {
      for (const auto& b : nontrivial_subsets(n)) {
        if (!min_taylor_2abs(alg, b)) continue;
        for (const auto& c : nontrivial_subsets(n)) {
          if (is_subuniverse(alg, c) && !is_subuniverse(alg, [&] {
                auto u = b;
                u.insert(u.end(), c.begin(), c.end());
                std::sort(u.begin(), u.end());
                u.erase(std::unique(u.begin(), u.end()), u.end());
                return u;
              }()))
            return std::make_pair(false, "union of " + set_str(b) + " and subuniverse " +
                                             set_str(c) + " is not a subuniverse");
          // For absorbing C: union and intersection absorb by the same witness.
          for (int arity = 2; arity <= 3; ++arity) {
            auto w = is_n_absorbing(alg, c, arity);
            if (!w || !is_subuniverse(alg, c)) continue;
            Table wt = w->table(alg);
            auto u = b;
            u.insert(u.end(), c.begin(), c.end());
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            if (!table_absorbs(wt, arity, n, u))
              return std::make_pair(false, "union absorption failed for B=" + set_str(b) +
                                               " C=" + set_str(c));
            std::vector<Element> inter;
            for (Element x : b)
              if (std::find(c.begin(), c.end(), x) != c.end()) inter.push_back(x);
            if (inter.empty())
              return std::make_pair(false, "2-absorbing B misses absorbing C: B=" + set_str(b) +
                                               " C=" + set_str(c));
            if (!table_absorbs(wt, arity, n, inter))
              return std::make_pair(false, "intersection absorption failed for B=" + set_str(b) +
                                               " C=" + set_str(c));
          }
        }
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "unique minimal 2-absorbing subuniverse", [&]() -> std::pair<bool, std::string> {
      auto m = minimal_2abs(alg);
      return std::make_pair(!m.empty(), set_str(m));
    });
    suite_check(out, "3-absorption union and intersection laws", [&]() -> std::pair<bool, std::string> {
      for (const auto& b : nontrivial_subsets(n)) {
        if (!min_taylor_3abs(alg, b)) continue;
        for (const auto& c : nontrivial_subsets(n)) {
          if (!min_taylor_3abs(alg, c)) continue;
          auto u = b;
          u.insert(u.end(), c.begin(), c.end());
          std::sort(u.begin(), u.end());
          u.erase(std::unique(u.begin(), u.end()), u.end());
          if (!is_subuniverse(alg, u))
            return std::make_pair(false,
                                  "union not a subuniverse: " + set_str(b) + ", " + set_str(c));
          std::vector<Element> inter;
          for (Element x : b)
            if (std::find(c.begin(), c.end(), x) != c.end()) inter.push_back(x);
          if (!inter.empty()) {
            if (!min_taylor_3abs(alg, inter))
              return std::make_pair(false, "intersection not 3-absorbing: " + set_str(b) + ", " +
                                               set_str(c));
          } else {
            // Disjoint: B^2 u C^2 a congruence on B u C with majority quotient.
            Algebra e = alg.restrict_to(u);
            std::vector<int> raw(e.size(), -1);
            std::vector<int> local_of(n, -1);
            for (size_t i = 0; i < u.size(); ++i) local_of[u[i]] = (int)i;
            for (Element x : b) raw[local_of[x]] = 0;
            for (Element x : c) raw[local_of[x]] = 1;
            Partition part = Partition::from_block_of(e.size(), raw);
            if (!is_congruence(e, part))
              return std::make_pair(false, "disjoint blocks do not form a congruence: " +
                                               set_str(b) + ", " + set_str(c));
            Algebra q = quotient(e, part);
            bool monot_selfdual = true;
            for (size_t oi = 0; oi < q.num_ops(); ++oi) {
              const auto& op = q.op(oi);
              size_t cube = ipow(2, op.arity);
              for (size_t idx = 0; idx < cube; ++idx) {
                // self-duality: f(~x) = ~f(x); monotonicity: flipping a 0
                // argument to 1 cannot drop the value.
                size_t comp = cube - 1 - idx;
                if (op.table[idx] != 1 - op.table[comp]) monot_selfdual = false;
                for (int bit = 0; bit < op.arity; ++bit) {
                  size_t step = ipow(2, op.arity - 1 - bit);
                  if ((idx / step) % 2 == 0 && op.table[idx] > op.table[idx + step])
                    monot_selfdual = false;
                }
              }
            }
            bool has_maj = find_term(q, IdentitySpec::majority()).has_value();
            if (!monot_selfdual || !has_maj)
              return std::make_pair(false, "disjoint 3-absorbing quotient is not the majority "
                                           "algebra: " +
                                               set_str(b) + ", " + set_str(c));
          }
        }
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "3-absorption transitivity", [&]() -> std::pair<bool, std::string> {
      for (const auto& b : nontrivial_subsets(n)) {
        if (!is_subuniverse(alg, b) || !min_taylor_3abs(alg, b)) continue;
        Algebra inner = alg.restrict_to(b);
        for (size_t mask = 1; mask + 1 < (1u << b.size()); ++mask) {
          std::vector<Element> c_local, c_global;
          for (size_t i = 0; i < b.size(); ++i)
            if (mask & (1u << i)) {
              c_local.push_back((Element)i);
              c_global.push_back(b[i]);
            }
          if (!invariant(inner, union_membership_relation((int)b.size(), c_local, 2))) continue;
          if (!min_taylor_3abs(alg, c_global))
            return std::make_pair(false, "transitivity failed: C=" + set_str(c_global) +
                                             " inside B=" + set_str(b));
        }
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "stability matches 2-absorption", [&]() -> std::pair<bool, std::string> {
      std::vector<EdgeType> all_types = {EdgeType::semilattice, EdgeType::majority,
                                         EdgeType::abelian};
      for (const auto& b : nontrivial_subsets(n)) {
        bool abs2 = min_taylor_2abs(alg, b);
        bool stable = stable_under(alg, b, all_types);
        if (abs2 != stable) return std::make_pair(false, "mismatch at B=" + set_str(b));
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "singleton absorption matches semilattice+abelian stability", [&]() -> std::pair<bool, std::string> {
      for (Element x = 0; x < n; ++x) {
        std::vector<Element> b = {x};
        bool abs = min_taylor_3abs(alg, b);  // = absorbing for singletons
        bool stable = stable_under(alg, b, {EdgeType::semilattice, EdgeType::abelian});
        if (abs != stable)
          return std::make_pair(false, "mismatch at b=" + std::to_string(x));
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "two-generated pairs: abelian quotient or one-sided 3-absorption", [&]() -> std::pair<bool, std::string> {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
          if (a == b) continue;
          auto sub = sg_subuniverse(alg, {a, b});
          Algebra e = alg.restrict_to(sub);
          std::vector<int> local_of(n, -1);
          for (size_t i = 0; i < sub.size(); ++i) local_of[sub[i]] = (int)i;
          bool abelian_quotient = false;
          for (const auto& alpha : maximal_congruences(e, full_domain(e.size())))
            if (!alpha.is_full() && is_abelian(quotient(e, alpha))) abelian_quotient = true;
          bool one_sided = false;
          for (size_t mask = 1; mask + 1 < (1u << sub.size()); ++mask) {
            std::vector<Element> c;
            for (size_t i = 0; i < sub.size(); ++i)
              if (mask & (1u << i)) c.push_back((Element)i);
            if (!invariant(e, union_membership_relation(e.size(), c, 2))) continue;
            bool ca = std::find(c.begin(), c.end(), (Element)local_of[a]) != c.end();
            bool cb = std::find(c.begin(), c.end(), (Element)local_of[b]) != c.end();
            if (ca || cb) one_sided = true;
          }
          if (!abelian_quotient && !one_sided)
            return std::make_pair(false, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                             ") has neither");
        }
      return std::make_pair(true, std::string());
    });
  }

  if (do_edges) {
    suite_check(out, "minimal-edge graph connected", [&]() -> std::pair<bool, std::string> {
      return std::make_pair(check_connectivity(edge_graph(alg, true)), std::string());
    });
    if (minimal) {
      suite_check(out, "edge quotient shapes", [&]() -> std::pair<bool, std::string> {
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) {
            if (a == b) continue;
            for (const auto& w : classify_pair(alg, a, b)) {
              Algebra e = alg.restrict_to(w.subuniverse);
              std::vector<int> local_of(n, -1);
              for (size_t i = 0; i < w.subuniverse.size(); ++i)
                local_of[w.subuniverse[i]] = (int)i;
              std::vector<int> raw(e.size(), -1);
              for (Element x : w.subuniverse) raw[local_of[x]] = w.theta.block_of[x];
              Partition theta_local = Partition::from_block_of(e.size(), raw);
              Algebra q = quotient(e, theta_local);
              if (w.type == EdgeType::semilattice) {
                if (q.size() != 2)
                  return std::make_pair(false, "semilattice quotient is not two-element");
                // join of a nonempty variable subset, with top b/theta
                int top = theta_local.block_of[local_of[w.b]];
                for (size_t oi = 0; oi < q.num_ops(); ++oi) {
                  const auto& op = q.op(oi);
                  size_t cube = ipow(2, op.arity);
                  for (size_t idx = 0; idx < cube; ++idx) {
                    bool any_top = false;
                    size_t rest = idx;
                    for (int i = 0; i < op.arity; ++i) {
                      if ((int)(rest % 2) == top) any_top = true;
                      rest /= 2;
                    }
                    int want = any_top ? top : 1 - top;
                    if (op.table[idx] != want)
                      return std::make_pair(false, "semilattice quotient operation is not a join");
                  }
                }
              } else if (w.type == EdgeType::majority) {
                if (q.size() != 2)
                  return std::make_pair(false, "majority quotient is not two-element");
                for (size_t oi = 0; oi < q.num_ops(); ++oi) {
                  const auto& op = q.op(oi);
                  size_t cube = ipow(2, op.arity);
                  for (size_t idx = 0; idx < cube; ++idx) {
                    size_t comp = cube - 1 - idx;
                    if (op.table[idx] != 1 - op.table[comp])
                      return std::make_pair(false, "majority quotient operation is not self-dual");
                    for (int bit = 0; bit < op.arity; ++bit) {
                      size_t step = ipow(2, op.arity - 1 - bit);
                      if ((idx / step) % 2 == 0 && op.table[idx] > op.table[idx + step])
                        return std::make_pair(false, "majority quotient operation is not monotone");
                    }
                  }
                }
                if (!find_term(q, IdentitySpec::majority()))
                  return std::make_pair(false, "majority quotient has no majority term");
              } else {
                if (!is_abelian(q)) return std::make_pair(false, "abelian quotient is not abelian");
                if (!affine_structure(q))
                  return std::make_pair(false, "abelian quotient has no affine structure");
              }
            }
          }
        return std::make_pair(true, std::string());
      });
      suite_check(out, "semilattice and majority witnesses unique and maximal", [&]() -> std::pair<bool, std::string> {
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) {
            if (a == b) continue;
            auto ws = classify_pair(alg, a, b);
            for (EdgeType t : {EdgeType::semilattice, EdgeType::majority}) {
              std::vector<const EdgeWitness*> of_type;
              for (const auto& w : ws)
                if (w.type == t) of_type.push_back(&w);
              if (of_type.empty()) continue;
              if (of_type.size() > 1)
                return std::make_pair(false, std::string("multiple witnessing congruences for a ") +
                                                 edge_type_name(t) + " edge");
              auto maxc = maximal_congruences(alg, of_type[0]->subuniverse);
              bool is_max = false;
              for (const auto& mc : maxc)
                if (of_type[0]->theta == mc) is_max = true;
              if (!is_max)
                return std::make_pair(false, std::string("witnessing congruence of a ") +
                                                 edge_type_name(t) + " edge is not maximal");
            }
          }
        return std::make_pair(true, std::string());
      });
      suite_check(out, "minimal semilattice edges are thin", [&]() -> std::pair<bool, std::string> {
        for (auto [a, b] : s_edges(alg)) {
          auto sub = sg_subuniverse(alg, {a, b});
          if (sub.size() != 2)
            return std::make_pair(false, "Sg(" + std::to_string(a) + "," + std::to_string(b) +
                                             ") is larger than the pair");
        }
        return std::make_pair(true, std::string());
      });
      suite_check(out, "minimal edges: unique maximal congruence equal to mu, unique type", [&]() -> std::pair<bool, std::string> {
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) {
            if (a == b) continue;
            std::set<EdgeType> minimal_types;
            for (const auto& w : classify_pair(alg, a, b))
              if (is_minimal_edge(alg, w)) minimal_types.insert(w.type);
            if (minimal_types.empty()) continue;
            if (minimal_types.size() > 1)
              return std::make_pair(false, "minimal edge with two types at (" + std::to_string(a) +
                                               "," + std::to_string(b) + ")");
            auto sub = sg_subuniverse(alg, {a, b});
            Algebra e = alg.restrict_to(sub);
            auto maxc = maximal_congruences(e, full_domain(e.size()));
            if (maxc.size() != 1)
              return std::make_pair(false, "minimal edge subalgebra has " +
                                               std::to_string(maxc.size()) +
                                               " maximal congruences");
            if (!(maxc[0] == mu(e)))
              return std::make_pair(false, "maximal congruence differs from mu");
          }
        return std::make_pair(true, std::string());
      });
    }
  }

  if ((suite == "all" || suite == "minimal-taylor") && minimal) {
    suite_check(out, "subalgebras and quotients stay minimal Taylor", [&]() -> std::pair<bool, std::string> {
      for (const auto& sub : all_subuniverses(alg)) {
        if (sub.empty()) continue;
        Algebra e = alg.restrict_to(sub);
        if (!is_taylor(e).verdict || !is_minimal_taylor(e).minimal)
          return std::make_pair(false, "subalgebra " + set_str(sub) + " is not minimal Taylor");
      }
      for (const auto& theta : all_congruences(alg, full_domain(n))) {
        Algebra q = quotient(alg, theta);
        if (!is_taylor(q).verdict || !is_minimal_taylor(q).minimal)
          return std::make_pair(false, "a quotient is not minimal Taylor");
      }
      return std::make_pair(true, std::string());
    });
    suite_check(out, "unified operation", [&]() -> std::pair<bool, std::string> {
      auto u = build_unified_candidate(alg);
      auto v = verify_unified_operation(alg, u);
      if (!v.all()) {
        std::string what;
        if (!v.semilattice_actions) what += " semilattice";
        if (!v.majority_actions) what += " majority";
        if (!v.abelian_actions) what += " abelian";
        if (!v.ternary_absorptions) what += " 3-absorption";
        if (!v.binary_absorptions) what += " 2-absorption";
        if (!v.generates) what += " generation";
        return std::make_pair(false, "failed:" + what);
      }
      return std::make_pair(true, std::string());
    });
  }
  return out;
}

}  // namespace taylorlab
