#include "taylorlab/relops.hpp"

#include <algorithm>
#include <numeric>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

namespace {

bool is_central_rel(const Relation& r) {
  return !left_center(r).empty() && !right_center(r).empty();
}

Relation full_square(int n) { return Relation::full(n, 2); }

// S_D(x,y) = E a: S(a,x) & S(a,y) & /\_{c in D} S(a,c)
Relation common_neighbor_rel(const Relation& s, const std::vector<Element>& d) {
  int n = s.domain_size();
  Relation out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      bool hit = false;
      for (Element a = 0; a < n && !hit; ++a) {
        if (!s.test((size_t)a * n + x) || !s.test((size_t)a * n + y)) continue;
        bool all = true;
        for (Element c : d)
          if (!s.test((size_t)a * n + c)) all = false;
        if (all) hit = true;
      }
      if (hit) out.set((size_t)x * n + y);
    }
  return out;
}

// The relational part of the linked-implies-central construction; assumes the
// input is linked, proper, subdirect, and not left central. Produces a proper
// subdirect central relation that is symmetric.
Relation linked_implies_central(const Relation& r_in) {
  int n = r_in.domain_size();
  Relation r = r_in;
  // Preprocess so that -r + r is full while r stays proper: walk the chain
  // T, T^2, T^4, ... of the symmetric reflexive T = -r + r.
  Relation t = compose(inverse(r), r);
  if (t.count() != t.capacity()) {
    Relation cur = t;
    while (true) {
      Relation next = compose(cur, cur);
      if (next.count() == next.capacity()) break;
      cur = next;
    }
    r = cur;  // symmetric, proper, -r + r = r + r is full
  }
  if (!left_center(r).empty()) return r;  // symmetric and central

  // Greedy inclusion-maximal D with S_D full, then one element more.
  std::vector<Element> d;
  while (true) {
    bool grew = false;
    for (Element c = 0; c < n && !grew; ++c) {
      if (std::find(d.begin(), d.end(), c) != d.end()) continue;
      auto e = d;
      e.push_back(c);
      if (common_neighbor_rel(r, e).count() == (size_t)n * n) {
        d = e;
        grew = true;
      }
    }
    if (!grew) break;
  }
  for (Element c = 0; c < n; ++c) {
    if (std::find(d.begin(), d.end(), c) != d.end()) continue;
    auto e = d;
    e.push_back(c);
    Relation out = common_neighbor_rel(r, e);
    if (is_proper(out) && is_subdirect(out) && is_central_rel(out)) return out;
  }
  throw std::logic_error("linked relation yielded no central relation");
}

}  // namespace

Relation centralize(const Algebra& alg, const Relation& r) {
  if (r.arity() != 2 || r.domain_size() != alg.size())
    throw argument_error("centralize needs a binary relation on the algebra's domain");
  if (!invariant(alg, r)) throw argument_error("centralize: relation is not invariant");
  if (!is_subdirect(r)) throw argument_error("centralize: relation is not subdirect");
  if (!is_proper(r)) throw argument_error("centralize: relation is not proper");
  if (!is_linked(r)) throw argument_error("centralize: relation is not linked");

  int n = alg.size();
  Relation current = r;
  Relation result(n, 2);
  bool have_result = false;
  for (int guard = 0; guard <= n + 2 && !have_result; ++guard) {
    if (left_center(current).empty()) {
      result = linked_implies_central(current);
      have_result = true;
      break;
    }
    if (right_center(current).empty()) {
      result = linked_implies_central(inverse(current));
      have_result = true;
      break;
    }
    // Central: square towards the transitive fixpoint.
    std::vector<Relation> chain = {current};
    while (true) {
      Relation next = compose(chain.back(), chain.back());
      if (next == chain.back()) break;
      chain.push_back(next);
      if (next.count() == next.capacity()) break;
    }
    if (chain.back().count() != chain.back().capacity()) {
      result = chain.back();  // proper central transitive fixpoint
      have_result = true;
      break;
    }
    Relation s = chain[chain.size() - 2];  // proper, central, s + s full
    auto b = right_center(s);
    auto b_plus_s = image_of(b, s);
    if ((int)b_plus_s.size() == n) {
      Relation sym = s.intersect(inverse(s));
      if (is_central_rel(sym)) {
        result = sym;
        have_result = true;
      } else {
        result = linked_implies_central(sym);
        have_result = true;
      }
      break;
    }
    // Right center does not reach everything: the T_j construction yields a
    // central relation with a strictly larger left center; restart with it.
    Relation replacement(n, 2);
    bool found = false;
    for (Element j = 0; j < n && !found; ++j) {
      std::vector<Element> prefix;
      for (Element i = 0; i <= j; ++i) prefix.push_back(i);
      // T_j(x,y) = E z: S(x,z) & S(z,y) & /\_{i<=j} S(a_i, z)
      Relation tj(n, 2);
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
          bool hit = false;
          for (Element z = 0; z < n && !hit; ++z) {
            if (!s.test((size_t)x * n + z) || !s.test((size_t)z * n + y)) continue;
            bool all = true;
            for (Element i : prefix)
              if (!s.test((size_t)i * n + z)) all = false;
            if (all) hit = true;
          }
          if (hit) tj.set((size_t)x * n + y);
        }
      if (tj.count() != tj.capacity()) {
        replacement = tj;
        found = true;
      }
    }
    if (!found) throw std::logic_error("centralize: T_j chain never became proper");
    current = replacement;
  }
  if (!have_result) throw std::logic_error("centralize did not converge");

  bool ok = invariant(alg, result) && is_subdirect(result) && is_proper(result) &&
            is_central_rel(result) && (is_symmetric(result) || is_transitive(result));
  if (!ok) throw std::logic_error("centralize postcondition failed");
  return result;
}

bool is_strongly_functional(const Relation& r) {
  if (r.arity() != 3) throw argument_error("is_strongly_functional needs arity 3");
  int n = r.domain_size();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (r.project({i, j}).count() != (size_t)n * n) return false;
  auto members = r.tuples();
  for (size_t a = 0; a < members.size(); ++a)
    for (size_t b = a + 1; b < members.size(); ++b) {
      int agree = 0;
      for (int c = 0; c < 3; ++c)
        if (members[a][c] == members[b][c]) ++agree;
      if (agree == 2) return false;
    }
  return true;
}

std::optional<Relation> find_binary_witness(const Algebra& alg) {
  auto subs = all_subpowers(alg, 2);
  // all_subpowers sorts by count then lexicographic order.
  for (const auto& r : subs)
    if (is_proper(r) && is_subdirect(r) && is_irredundant(r)) return r;
  return std::nullopt;
}

std::vector<Table> latin_squares(int order) {
  std::vector<Table> out;
  Table t(order * order, 0);
  std::function<void(int)> fill = [&](int cell) {
    if (cell == order * order) {
      out.push_back(t);
      return;
    }
    int row = cell / order, col = cell % order;
    for (int v = 0; v < order; ++v) {
      bool ok = true;
      for (int c = 0; c < col && ok; ++c)
        if (t[row * order + c] == v) ok = false;
      for (int rr = 0; rr < row && ok; ++rr)
        if (t[rr * order + col] == v) ok = false;
      if (ok) {
        t[cell] = (uint8_t)v;
        fill(cell + 1);
      }
    }
  };
  fill(0);
  return out;
}

std::optional<Relation> find_strongly_functional(const Algebra& alg) {
  int n = alg.size();
  for (const auto& q : latin_squares(n)) {
    Relation r(n, 3);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        r.set(((size_t)x * n + y) * n + q[x * n + y]);
    if (invariant(alg, r)) {
      if (!is_strongly_functional(r))
        throw std::logic_error("latin-square graph is not strongly functional");
      return r;
    }
  }
  return std::nullopt;
}

Trichotomy subdirect_trichotomy(const Algebra& alg) {
  Trichotomy t;
  if (auto bin = find_binary_witness(alg)) {
    t.tag = 2;
    t.witness = bin;
    return t;
  }
  if (auto sf = find_strongly_functional(alg)) {
    t.tag = 3;
    t.witness = sf;
    return t;
  }
  t.tag = 1;
  return t;
}

bool is_abelian(const Algebra& alg) {
  int n = alg.size();
  // Square algebra on pairs, encoded as a*n + b.
  std::vector<OperationTable> sq_ops;
  for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
    const auto& f = alg.op(oi);
    int k = f.arity;
    OperationTable g{f.name, k, Table(ipow(n * n, k))};
    std::vector<Element> args(k);
    for (size_t idx = 0; idx < g.table.size(); ++idx) {
      size_t rest = idx;
      Element a1[16], a2[16];
      for (int i = k - 1; i >= 0; --i) {
        Element pair = (Element)(rest % (n * n));
        rest /= (n * n);
        a1[i] = pair / n;
        a2[i] = pair % n;
      }
      g.table[idx] = (uint8_t)(f.apply(a1, n) * n + f.apply(a2, n));
    }
    sq_ops.push_back(std::move(g));
  }
  Algebra square(n * n, std::move(sq_ops), "", false);
  std::vector<std::pair<Element, Element>> diag_pairs;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) diag_pairs.push_back({a * n + a, b * n + b});
  auto theta = congruence_generated(square, full_domain(n * n), diag_pairs);
  // Abelian iff the block containing the diagonal is exactly the diagonal.
  int diag_block = theta.block_of[0];
  for (const auto& blk : theta.blocks)
    if ((int)theta.block_of[blk[0]] == diag_block) {
      for (Element e : blk)
        if (e / n != e % n) return false;
    }
  return true;
}

namespace {

// Primary decomposition of a finite abelian group given by a Cayley table:
// count elements annihilated by p^k to read off the invariants.
std::vector<std::pair<int, int>> primary_decomposition(int n, const Table& add, Element zero) {
  std::vector<std::pair<int, int>> out;
  auto mul = [&](long long s, Element x) {
    Element acc = zero;
    for (long long i = 0; i < s; ++i) acc = add[(size_t)acc * n + x];
    return acc;
  };
  for (int p = 2; p <= n; ++p) {
    bool prime = p > 1;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime || n % p != 0) continue;
    // lambda_k = #elements of order dividing p^k; the type follows from the
    // successive quotients.
    std::vector<int> counts;  // counts[k] = # {x : p^k x = 0}
    counts.push_back(1);
    long long pk = 1;
    while (true) {
      pk *= p;
      int c = 0;
      for (Element x = 0; x < n; ++x)
        if (mul(pk, x) == zero) ++c;
      counts.push_back(c);
      if (c == counts[counts.size() - 2]) break;  // stabilized
    }
    // Number of cyclic factors of order >= p^k is log_p(counts[k]/counts[k-1]).
    std::vector<int> layers;
    for (size_t k = 1; k < counts.size(); ++k) {
      int ratio = counts[k] / counts[k - 1];
      int e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      if (e > 0) layers.push_back(e);
    }
    for (size_t k = 0; k < layers.size(); ++k) {
      int here = layers[k] - (k + 1 < layers.size() ? layers[k + 1] : 0);
      for (int i = 0; i < here; ++i) out.push_back({p, (int)k + 1});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<AbelianGroupStructure> affine_structure(const Algebra& alg) {
  if (!is_abelian(alg)) throw precondition_error("affine_structure requires an abelian algebra");
  if (!is_taylor(alg).verdict)
    throw precondition_error("affine_structure requires a Taylor algebra");
  int n = alg.size();
  auto p = find_term(alg, IdentitySpec::malcev());
  if (!p) return std::nullopt;  // no Mal'cev term at arity 3

  Table pt = p->table(alg);
  AbelianGroupStructure s;
  s.zero = 0;
  s.malcev = *p;
  s.add.assign((size_t)n * n, 0);
  s.neg.assign(n, 0);
  auto pval = [&](Element x, Element y, Element z) {
    return pt[((size_t)x * n + y) * n + z];
  };
  for (Element x = 0; x < n; ++x) {
    s.neg[x] = pval(0, x, 0);
    for (Element y = 0; y < n; ++y) s.add[(size_t)x * n + y] = pval(x, 0, y);
  }
  auto add = [&](Element x, Element y) { return s.add[(size_t)x * n + y]; };

  // Abelian group axioms, exhaustively.
  for (Element x = 0; x < n; ++x) {
    if (add(x, 0) != x || add(0, x) != x) return std::nullopt;
    if (add(x, s.neg[x]) != 0) return std::nullopt;
    for (Element y = 0; y < n; ++y) {
      if (add(x, y) != add(y, x)) return std::nullopt;
      for (Element z = 0; z < n; ++z)
        if (add(add(x, y), z) != add(x, add(y, z))) return std::nullopt;
    }
  }
  // Every basic operation decomposes as the sum of its unary traces, and
  // each trace is multiplication by an integer.
  for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
    const auto& f = alg.op(oi);
    int k = f.arity;
    for (int i = 0; i < k; ++i) {
      // trace u_i(x) = f(0,..,x,..,0) must equal m*x for some integer m
      std::vector<Element> args(k, 0);
      int mult = -1;
      for (int m = 0; m <= n; ++m) {
        bool all = true;
        for (Element x = 0; x < n && all; ++x) {
          args[i] = x;
          Element mx = 0;
          for (int j = 0; j < m; ++j) mx = add(mx, x);
          if (f.apply(args.data(), n) != mx) all = false;
        }
        if (all) {
          mult = m;
          break;
        }
      }
      args[i] = 0;
      if (mult < 0) return std::nullopt;
    }
    std::vector<Element> args(k);
    size_t cube = ipow(n, k);
    for (size_t idx = 0; idx < cube; ++idx) {
      size_t rest = idx;
      for (int i = k - 1; i >= 0; --i) {
        args[i] = (Element)(rest % n);
        rest /= n;
      }
      Element sum = 0;
      for (int i = 0; i < k; ++i) {
        std::vector<Element> one(k, 0);
        one[i] = args[i];
        sum = add(sum, f.apply(one.data(), n));
      }
      if (f.apply(args.data(), n) != sum) return std::nullopt;
    }
  }
  s.decomposition = primary_decomposition(n, s.add, 0);
  size_t order = 1;
  for (auto [pr, e] : s.decomposition) order *= ipow(pr, e);
  if (order != (size_t)n) throw std::logic_error("group decomposition does not multiply up");
  return s;
}

}  // namespace taylorlab
