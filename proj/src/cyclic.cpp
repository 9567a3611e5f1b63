#include "taylorlab/cyclic.hpp"

#include <map>
#include <unordered_map>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

namespace {

constexpr size_t kCyclicCubeBudget = 1u << 21;
constexpr size_t kCyclicNodeBudget = 8'000'000;

std::vector<uint32_t> shift_permutation(int n, int p) {
  // idx of (x_1..x_p) -> idx of (x_2..x_p, x_1)
  size_t cube = ipow(n, p);
  std::vector<uint32_t> out(cube);
  std::vector<Element> t(p);
  for (size_t idx = 0; idx < cube; ++idx) {
    tuple_decode(idx, n, p, t.data());
    std::rotate(t.begin(), t.begin() + 1, t.end());
    out[idx] = (uint32_t)tuple_index(t, n);
  }
  return out;
}

}  // namespace

std::optional<CyclicTermResult> cyclic_term(const Algebra& alg, int p) {
  alg.require_idempotent("cyclic_term");
  int n = alg.size();
  size_t cube = ipow(n, p);
  if (cube > kCyclicCubeBudget)
    throw resource_error("cyclic term table would exceed the cube budget");
  auto shift1 = shift_permutation(n, p);

  // Current term: materialized table plus the DAG roots of t composed with
  // each shift power (shift composition is memoized so growth stays linear).
  Table table(cube);
  std::vector<Element> digits(p);
  for (size_t idx = 0; idx < cube; ++idx) {
    tuple_decode(idx, n, p, digits.data());
    table[idx] = (uint8_t)digits[0];
  }
  std::vector<std::shared_ptr<const Term::Node>> shifted(p);
  for (int s = 0; s < p; ++s) {
    auto node = std::make_shared<Term::Node>();
    node->proj = s;  // proj_0 shifted by s reads x_s
    shifted[s] = node;
  }
  size_t total_nodes = p;

  for (size_t rep = 0; rep < cube; ++rep) {
    // Process canonical orbit representatives only (least index in orbit).
    bool canonical = true;
    size_t cur = rep;
    for (int s = 1; s < p; ++s) {
      cur = shift1[cur];
      if (cur < rep) canonical = false;
    }
    if (!canonical) continue;

    std::vector<Element> values(p);
    cur = rep;
    for (int s = 0; s < p; ++s) {
      values[s] = table[cur];
      cur = shift1[cur];
    }
    bool constant = true;
    for (int s = 1; s < p; ++s)
      if (values[s] != values[0]) constant = false;
    if (constant) continue;

    // Generators: all cyclic shifts of the value tuple.
    std::vector<std::vector<Element>> gens;
    std::vector<Element> v = values;
    for (int s = 0; s < p; ++s) {
      gens.push_back(v);
      std::rotate(v.begin(), v.begin() + 1, v.end());
    }
    auto is_constant_idx = [&](size_t idx) {
      Element d[16];
      tuple_decode(idx, n, p, d);
      for (int j = 1; j < p; ++j)
        if (d[j] != d[0]) return false;
      return true;
    };
    SgResult closure = sg(alg, p, gens, /*track=*/true, is_constant_idx);
    int constant_member = -1;
    for (size_t i = 0; i < closure.members.size(); ++i)
      if (is_constant_idx(closure.members[i])) {
        constant_member = (int)i;
        break;
      }
    if (constant_member < 0) return std::nullopt;
    Term w = closure.witness_term(alg, constant_member, p);
    Table w_table = w.table(alg);

    // New table: t'(x) = w(t(shift^0 x), ..., t(shift^{p-1} x)).
    Table next(cube);
    std::vector<Element> args(p);
    for (size_t idx = 0; idx < cube; ++idx) {
      size_t c2 = idx;
      for (int s = 0; s < p; ++s) {
        args[s] = table[c2];
        c2 = shift1[c2];
      }
      next[idx] = (uint8_t)w_table[tuple_index(args, n)];
    }
    table = std::move(next);

    // New DAG: (t' o shift^b) substitutes w's variable j by t o shift^{j+b}.
    std::vector<std::shared_ptr<const Term::Node>> next_shifted(p);
    for (int b = 0; b < p; ++b) {
      std::unordered_map<const Term::Node*, std::shared_ptr<const Term::Node>> memo;
      std::function<std::shared_ptr<const Term::Node>(const Term::Node*)> subst =
          [&](const Term::Node* node) -> std::shared_ptr<const Term::Node> {
        auto it = memo.find(node);
        if (it != memo.end()) return it->second;
        std::shared_ptr<const Term::Node> out;
        if (node->op_index < 0) {
          out = shifted[(node->proj + b) % p];
        } else {
          auto fresh = std::make_shared<Term::Node>();
          fresh->op_index = node->op_index;
          for (const auto& c : node->children) fresh->children.push_back(subst(c.get()));
          out = fresh;
          ++total_nodes;
        }
        memo[node] = out;
        return out;
      };
      next_shifted[b] = subst(w.root().get());
    }
    shifted = std::move(next_shifted);
    if (total_nodes > kCyclicNodeBudget)
      throw resource_error("cyclic term construction exceeded the node budget");

    // The repaired orbit must now be constant.
    cur = rep;
    for (int s = 0; s < p; ++s) {
      if (table[cur] != table[rep])
        throw std::logic_error("cyclic repair failed to make the orbit constant");
      cur = shift1[cur];
    }
  }

  // Exhaustive cyclicity check of the final table.
  for (size_t idx = 0; idx < cube; ++idx)
    if (table[shift1[idx]] != table[idx])
      throw std::logic_error("cyclic term table failed the shift check");

  CyclicTermResult res;
  res.term = Term::from_root(shifted[0], p);
  res.table = std::move(table);
  res.arity = p;
  return res;
}

Element eval_star_on_blocks(const Table& base, int p, int levels, int domain_size,
                            long long k, long long l, Element x, Element y, Element z) {
  // Positions of the level-subterm form the progression base_pos + stride * j.
  std::function<Element(int, long long, long long)> go = [&](int level, long long base_pos,
                                                             long long stride) -> Element {
    if (level == 0) {
      if (base_pos < k) return x;
      if (base_pos < k + l) return y;
      return z;
    }
    size_t idx = 0;
    for (int i = 0; i < p; ++i)
      idx = idx * domain_size + go(level - 1, base_pos + stride * i, stride * p);
    return base[idx];
  };
  return go(levels, 0, 1);
}

namespace {

long long factorial(int q) {
  long long f = 1;
  for (int i = 2; i <= q; ++i) f *= i;
  return f;
}

int smallest_prime_above(int q) {
  for (int c = q + 1;; ++c) {
    bool prime = c > 1;
    for (int d = 2; d * d <= c; ++d)
      if (c % d == 0) prime = false;
    if (prime) return c;
  }
}

// Term DAG for the star-iterated cyclic term applied to x^a y^b z^c,
// hash-consed on (level, a, b, c).
struct StarTermBuilder {
  const Term::Node* tp_root;
  int p;
  std::map<std::tuple<int, long long, long long, long long>, std::shared_ptr<const Term::Node>>
      level_memo;
  size_t nodes = 0;

  std::shared_ptr<const Term::Node> var_leaf(int v) {
    auto n = std::make_shared<Term::Node>();
    n->proj = v;
    return n;
  }

  // Leaf variable of a position under split (k, l): 0 for x, 1 for y, 2 for z.
  static int var_of(long long pos, long long k, long long l) {
    if (pos < k) return 0;
    if (pos < k + l) return 1;
    return 2;
  }

  std::shared_ptr<const Term::Node> build(int level, long long base_pos, long long stride,
                                          long long k, long long l, long long span) {
    // Pattern signature: counts of x/y/z over the positions of this subterm.
    long long a = 0, b = 0, c = 0;
    for (long long j = 0; j < span; ++j) {
      int v = var_of(base_pos + stride * j, k, l);
      (v == 0 ? a : v == 1 ? b : c)++;
    }
    auto key = std::make_tuple(level, a, b, c);
    auto it = level_memo.find(key);
    if (it != level_memo.end()) return it->second;

    std::shared_ptr<const Term::Node> out;
    if (level == 0) {
      out = var_leaf(var_of(base_pos, k, l));
    } else {
      std::vector<std::shared_ptr<const Term::Node>> children;
      for (int i = 0; i < p; ++i)
        children.push_back(build(level - 1, base_pos + stride * i, stride * p, k, l, span / p));
      // Instantiate the cyclic-term DAG with these children as variables.
      std::unordered_map<const Term::Node*, std::shared_ptr<const Term::Node>> memo;
      std::function<std::shared_ptr<const Term::Node>(const Term::Node*)> inst =
          [&](const Term::Node* node) -> std::shared_ptr<const Term::Node> {
        auto mi = memo.find(node);
        if (mi != memo.end()) return mi->second;
        std::shared_ptr<const Term::Node> r;
        if (node->op_index < 0) {
          r = children[node->proj];
        } else {
          auto fresh = std::make_shared<Term::Node>();
          fresh->op_index = node->op_index;
          for (const auto& ch : node->children) fresh->children.push_back(inst(ch.get()));
          r = fresh;
          ++nodes;
        }
        memo[node] = r;
        return r;
      };
      out = inst(tp_root);
    }
    level_memo[key] = out;
    if (nodes > kCyclicNodeBudget)
      throw resource_error("unified term construction exceeded the node budget");
    return out;
  }
};

}  // namespace

UnifiedOperation build_unified_candidate(const Algebra& alg) {
  alg.require_idempotent("unified_operation");
  int q = alg.size();
  UnifiedOperation out;
  if (q == 1) {
    // Degenerate domain: the first projection satisfies everything vacuously.
    out.term = Term::projection(0, 3);
    out.table = Table{0};
    out.cyclic_arity = 1;
    out.base_arity = 1;
    out.levels = 0;
    out.k = 1;
    out.l = 0;
    out.m = 0;
    return out;
  }
  long long M = factorial(q);
  int p = smallest_prime_above(q);
  auto tp = cyclic_term(alg, p);
  if (!tp)
    throw precondition_error("no cyclic term of arity " + std::to_string(p) +
                             "; the algebra is not Taylor");

  // Smallest power n = p^levels with n = 1 mod |A|! admitting a block size
  // k = 1 mod |A|! in [n/4, (n-1)/2]; then l = n - 2k <= 2k and m = k.
  int levels = 0;
  long long n = 1;
  long long k = -1;
  while (true) {
    ++levels;
    n *= p;
    if (n % M != 1 % M) continue;
    for (long long cand = 1; cand <= (n - 1) / 2; cand += M)
      if (4 * cand >= n) {
        k = cand;
        break;
      }
    if (k > 0) break;
    if (levels > 40) throw resource_error("no admissible block split found");
  }
  long long l = n - 2 * k;

  out.cyclic_arity = (int)n;
  out.base_arity = p;
  out.levels = levels;
  out.k = k;
  out.l = l;
  out.m = k;

  out.table.assign(ipow(q, 3), 0);
  for (Element x = 0; x < q; ++x)
    for (Element y = 0; y < q; ++y)
      for (Element z = 0; z < q; ++z)
        out.table[(size_t)(x * q + y) * q + z] =
            (uint8_t)eval_star_on_blocks(tp->table, p, levels, q, k, l, x, y, z);

  StarTermBuilder builder{tp->term.root().get(), p, {}, 0};
  auto root = builder.build(levels, 0, 1, k, l, n);
  out.term = Term::from_root(root, 3);
  return out;
}

}  // namespace taylorlab
