#include "taylorlab/clone.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

Term CloneSlice::witness(size_t index) const {
  if (index >= tables.size()) throw argument_error("witness index out of range");
  std::vector<std::optional<Term>> built(tables.size());
  std::function<Term(size_t)> go = [&](size_t i) -> Term {
    if (built[i]) return *built[i];
    const auto& p = parents_[i];
    Term t;
    if (p.op_index < 0) {
      t = Term::projection(p.proj, arity);
    } else {
      std::vector<Term> kids;
      for (uint32_t c : p.children) kids.push_back(go(c));
      t = Term::apply(p.op_index, std::move(kids));
    }
    built[i] = t;
    return t;
  };
  return go(index);
}

// Shared closure engine over tables of a fixed arity.
class SliceBuilder {
 public:
  SliceBuilder(const Algebra& alg, int k) : alg_(alg), k_(k), cube_(ipow(alg.size(), k)) {}

  void seed_projections() {
    std::vector<Element> t(k_);
    for (int coord = 0; coord < k_; ++coord) {
      Table tab(cube_);
      for (size_t idx = 0; idx < cube_; ++idx) {
        tuple_decode(idx, alg_.size(), k_, t.data());
        tab[idx] = (uint8_t)t[coord];
      }
      push(tab, -1, coord, {});
    }
  }

  // Closes under the listed generator tables (as operations). Returns false
  // if the size cap was hit before stabilizing.
  bool close(const std::vector<const OperationTable*>& ops, size_t max_size,
             const std::function<bool()>& done = nullptr) {
    Table scratch(cube_);
    int n = alg_.size();
    for (size_t c = 1; c <= slice_.tables.size(); ++c) {
      if (done && done()) return true;
      size_t newest = c - 1;
      for (size_t oi = 0; oi < ops.size(); ++oi) {
        const auto& f = *ops[oi];
        int m = f.arity;
        std::vector<uint32_t> pick(m, 0);
        const uint8_t* cols[16];
        while (true) {
          bool uses_newest = false;
          for (int j = 0; j < m; ++j)
            if (pick[j] == newest) uses_newest = true;
          if (uses_newest) {
            for (int j = 0; j < m; ++j) cols[j] = slice_.tables[pick[j]].data();
            if (m == 2) {
              const uint8_t* ft = f.table.data();
              for (size_t idx = 0; idx < cube_; ++idx)
                scratch[idx] = ft[(size_t)cols[0][idx] * n + cols[1][idx]];
            } else if (m == 3) {
              const uint8_t* ft = f.table.data();
              for (size_t idx = 0; idx < cube_; ++idx)
                scratch[idx] =
                    ft[((size_t)cols[0][idx] * n + cols[1][idx]) * n + cols[2][idx]];
            } else {
              for (size_t idx = 0; idx < cube_; ++idx) {
                Element a[16];
                for (int j = 0; j < m; ++j) a[j] = cols[j][idx];
                scratch[idx] = (uint8_t)f.apply(a, n);
              }
            }
            if (!slice_.contains(scratch)) {
              if (slice_.tables.size() >= max_size) return false;
              push(scratch, (int)oi, -1, pick);
              if (done && done()) return true;
            }
          }
          int pos = m - 1;
          while (pos >= 0 && ++pick[pos] == c) pick[pos--] = 0;
          if (pos < 0) break;
        }
      }
    }
    return true;
  }

  CloneSlice take() { return std::move(slice_); }
  const CloneSlice& slice() const { return slice_; }

 private:
  void push(const Table& t, int op_index, int proj, const std::vector<uint32_t>& children) {
    if (slice_.contains(t)) return;
    size_t id = slice_.tables.size();
    slice_.index_of_.emplace(t, id);
    slice_.tables.push_back(t);
    slice_.parents_.push_back({op_index, proj, children});
  }

  const Algebra& alg_;
  int k_;
  size_t cube_;
  CloneSlice slice_;
};

CloneSlice clone_slice_uncached(const Algebra& alg, int k, size_t max_size) {
  SliceBuilder b(alg, k);
  b.seed_projections();
  std::vector<const OperationTable*> ops;
  for (size_t i = 0; i < alg.num_ops(); ++i) ops.push_back(&alg.op(i));
  if (!b.close(ops, max_size))
    throw resource_error("clone slice at arity " + std::to_string(k) +
                         " exceeded the size cap of " + std::to_string(max_size));
  CloneSlice s = b.take();
  s.arity = k;
  return s;
}

namespace {
std::mutex slice_cache_mutex;
std::map<std::pair<uint64_t, int>, std::shared_ptr<const CloneSlice>> slice_cache;

std::shared_ptr<const CloneSlice> cached_slice(const Algebra& alg, int k) {
  std::lock_guard<std::mutex> lock(slice_cache_mutex);
  auto it = slice_cache.find({alg.key(), k});
  return it == slice_cache.end() ? nullptr : it->second;
}

void store_slice(const Algebra& alg, int k, CloneSlice s) {
  std::lock_guard<std::mutex> lock(slice_cache_mutex);
  slice_cache.emplace(std::make_pair(alg.key(), k),
                      std::make_shared<const CloneSlice>(std::move(s)));
}
}  // namespace

const CloneSlice& clone_slice(const Algebra& alg, int k) {
  if (k < 1) throw argument_error("clone slice arity must be positive");
  if (k > Config::global().max_arity)
    throw resource_error("arity " + std::to_string(k) + " above the configured cap of " +
                         std::to_string(Config::global().max_arity));
  if (auto s = cached_slice(alg, k)) return *s;
  store_slice(alg, k, clone_slice_uncached(alg, k, Config::global().max_slice));
  return *cached_slice(alg, k);
}

bool try_materialize_slice(const Algebra& alg, int k, size_t budget) {
  if (cached_slice(alg, k)) return true;
  try {
    store_slice(alg, k, clone_slice_uncached(alg, k, budget));
    return true;
  } catch (const resource_error&) {
    return false;
  }
}

std::optional<Term> search_slice(const Algebra& alg, int k,
                                 const std::function<bool(const Table&)>& pred) {
  if (k < 1) throw argument_error("clone slice arity must be positive");
  if (k > Config::global().max_arity)
    throw resource_error("arity " + std::to_string(k) + " above the configured cap of " +
                         std::to_string(Config::global().max_arity));
  // A cached full slice is scanned directly; otherwise the closure streams
  // and stops at the first hit. A completed closure is kept for later calls.
  if (auto s = cached_slice(alg, k)) {
    for (size_t i = 0; i < s->size(); ++i)
      if (pred(s->tables[i])) return s->witness(i);
    return std::nullopt;
  }
  SliceBuilder b(alg, k);
  b.seed_projections();
  std::vector<const OperationTable*> ops;
  for (size_t i = 0; i < alg.num_ops(); ++i) ops.push_back(&alg.op(i));
  size_t tested = 0;
  std::optional<size_t> hit;
  auto done = [&]() {
    while (tested < b.slice().size()) {
      if (pred(b.slice().tables[tested])) {
        hit = tested;
        return true;
      }
      ++tested;
    }
    return false;
  };
  bool finished = b.close(ops, Config::global().max_slice, done);
  if (hit) {
    CloneSlice s = b.take();
    s.arity = k;
    return s.witness(*hit);
  }
  if (!finished)
    throw resource_error("term search at arity " + std::to_string(k) +
                         " exceeded the slice cap of " +
                         std::to_string(Config::global().max_slice));
  CloneSlice s = b.take();
  s.arity = k;
  store_slice(alg, k, std::move(s));
  return std::nullopt;
}

bool clone_membership(const Algebra& alg, const std::vector<Table>& generator_tables,
                      const std::vector<Table>& targets, size_t max_size) {
  if (targets.empty()) return true;
  if (max_size == 0) max_size = Config::global().max_slice;
  // Group targets by arity; run one closure per arity.
  std::map<size_t, std::vector<Table>> by_len;
  for (const auto& t : targets) by_len[t.size()].push_back(t);
  for (auto& [len, tgts] : by_len) {
    int k = 0;
    while (ipow(alg.size(), k) < len) ++k;
    if (ipow(alg.size(), k) != len) throw argument_error("target table length is not a power");
    if (k == 0) k = 1;
    SliceBuilder b(alg, k);
    b.seed_projections();
    std::vector<OperationTable> gen_ops;
    for (size_t i = 0; i < generator_tables.size(); ++i) {
      int ga = 0;
      while (ipow(alg.size(), ga) < generator_tables[i].size()) ++ga;
      gen_ops.push_back({"g" + std::to_string(i), ga, generator_tables[i]});
    }
    std::vector<const OperationTable*> ops;
    for (auto& g : gen_ops) ops.push_back(&g);
    auto all_found = [&]() {
      for (const auto& t : tgts)
        if (!b.slice().contains(t)) return false;
      return true;
    };
    if (all_found()) continue;
    bool finished = b.close(ops, max_size, all_found);
    if (!finished)
      throw resource_error("clone membership closure exceeded cap of " + std::to_string(max_size));
    if (!all_found()) return false;
  }
  return true;
}

IdentitySpec IdentitySpec::cyclic(int k) {
  IdentitySpec s;
  s.arity = k;
  Group g;
  for (int shift = 0; shift < k; ++shift) {
    Pattern p;
    for (int i = 0; i < k; ++i) p.slots.push_back((i + shift) % k);
    g.patterns.push_back(p);
  }
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::wnu(int k) {
  IdentitySpec s;
  s.arity = k;
  Group g;
  for (int pos = 0; pos < k; ++pos) {
    Pattern p;
    for (int i = 0; i < k; ++i) p.slots.push_back(i == pos ? 1 : 0);
    g.patterns.push_back(p);
  }
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::malcev() {
  IdentitySpec s;
  s.arity = 3;
  Group g;
  g.patterns.push_back({{1, 0, 0}});  // p(y,x,x)
  g.patterns.push_back({{0, 0, 1}});  // p(x,x,y)
  g.target_var = 1;
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::majority() {
  IdentitySpec s;
  s.arity = 3;
  Group g;
  g.patterns.push_back({{0, 0, 1}});
  g.patterns.push_back({{0, 1, 0}});
  g.patterns.push_back({{1, 0, 0}});
  g.target_var = 0;
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::minority() {
  IdentitySpec s;
  s.arity = 3;
  Group g;
  g.patterns.push_back({{0, 0, 1}});
  g.patterns.push_back({{0, 1, 0}});
  g.patterns.push_back({{1, 0, 0}});
  g.target_var = 1;
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::commutative() {
  IdentitySpec s;
  s.arity = 2;
  Group g;
  g.patterns.push_back({{0, 1}});
  g.patterns.push_back({{1, 0}});
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::three_edge() {
  IdentitySpec s;
  s.arity = 4;
  Group g;
  g.patterns.push_back({{1, 1, 0, 0}});
  g.patterns.push_back({{1, 0, 1, 0}});
  g.patterns.push_back({{0, 0, 0, 1}});
  g.target_var = 0;
  s.groups.push_back(g);
  return s;
}

IdentitySpec IdentitySpec::pointwise_majority_on(
    const std::vector<std::pair<Element, Element>>& pairs) {
  IdentitySpec s;
  s.arity = 3;
  for (auto [a, b] : pairs) {
    Group g;
    int ca = constant(a), cb = constant(b);
    g.patterns.push_back({{ca, ca, cb}});
    g.patterns.push_back({{ca, cb, ca}});
    g.patterns.push_back({{cb, ca, ca}});
    g.target_const = a;
    s.groups.push_back(g);
  }
  return s;
}

bool table_satisfies(const Table& t, int k, int n, const IdentitySpec& spec) {
  if (spec.arity != k) throw argument_error("identity spec arity mismatch");
  for (const auto& g : spec.groups) {
    int max_var = -1;
    for (const auto& p : g.patterns)
      for (int s : p.slots)
        if (s > max_var) max_var = s;
    if (g.target_var > max_var) max_var = g.target_var;
    int vars = max_var + 1;
    size_t assignments = ipow(n, std::max(vars, 0));
    std::vector<Element> val(std::max(vars, 1));
    for (size_t ai = 0; ai < assignments; ++ai) {
      size_t rest = ai;
      for (int v = vars - 1; v >= 0; --v) {
        val[v] = (Element)(rest % n);
        rest /= n;
      }
      Element expected = -1;
      if (g.target_var >= 0) expected = val[g.target_var];
      if (g.target_const >= 0) expected = g.target_const;
      for (const auto& p : g.patterns) {
        size_t idx = 0;
        for (int s : p.slots) {
          Element e = s >= 0 ? val[s] : -(s + 1);
          idx = idx * n + e;
        }
        Element v = t[idx];
        if (expected == -1) expected = v;
        else if (v != expected) return false;
      }
    }
  }
  return true;
}

std::optional<Term> find_term(const Algebra& alg, const IdentitySpec& spec) {
  return search_slice(alg, spec.arity, [&](const Table& t) {
    return table_satisfies(t, spec.arity, alg.size(), spec);
  });
}

namespace {
std::mutex taylor_cache_mutex;
std::map<uint64_t, TaylorCertificate> taylor_cache;
std::map<uint64_t, MinimalityResult> minimality_cache;
}  // namespace

TaylorCertificate is_taylor(const Algebra& alg) {
  alg.require_idempotent("is_taylor");
  {
    std::lock_guard<std::mutex> lock(taylor_cache_mutex);
    auto it = taylor_cache.find(alg.key());
    if (it != taylor_cache.end()) return it->second;
  }
  TaylorCertificate cert;
  if (alg.size() == 1) {  // degenerate case: Taylor by convention
    cert.verdict = true;
    return cert;
  }
  for (const auto& sub : all_subuniverses(alg)) {
    if (sub.size() < 2) continue;
    for (const auto& theta : all_congruences(alg, sub)) {
      if (theta.num_blocks() != 2) continue;
      // Every basic operation must act as a projection on the quotient.
      std::vector<int> coords;
      bool all_proj = true;
      for (size_t oi = 0; oi < alg.num_ops() && all_proj; ++oi) {
        const auto& f = alg.op(oi);
        int k = f.arity;
        int found = -1;
        for (int cand = 0; cand < k && found < 0; ++cand) {
          bool ok = true;
          std::vector<Element> args(k);
          size_t combos = ipow(sub.size(), k);
          for (size_t ci = 0; ci < combos && ok; ++ci) {
            size_t rest = ci;
            for (int i = 0; i < k; ++i) {
              args[i] = sub[rest % sub.size()];
              rest /= sub.size();
            }
            Element v = f.apply(args.data(), alg.size());
            if (theta.block_of[v] != theta.block_of[args[cand]]) ok = false;
          }
          if (ok) found = cand;
        }
        if (found < 0) all_proj = false;
        else coords.push_back(found);
      }
      if (all_proj) {
        cert.verdict = false;
        cert.witness_subuniverse = sub;
        cert.witness_congruence = theta;
        cert.projection_coordinates = coords;
        std::lock_guard<std::mutex> lock(taylor_cache_mutex);
        taylor_cache[alg.key()] = cert;
        return cert;
      }
    }
  }
  cert.verdict = true;
  std::lock_guard<std::mutex> lock(taylor_cache_mutex);
  taylor_cache[alg.key()] = cert;
  return cert;
}

// A cyclic ternary witness when one exists; separate from the verdict since
// it needs the full ternary slice.
std::optional<Term> cyclic_ternary_witness(const Algebra& alg) {
  return find_term(alg, IdentitySpec::cyclic(3));
}

namespace {

// Ternary tables g such that (A; g) is Taylor, in slice order.
std::vector<size_t> taylor_ternary_generators(const Algebra& alg, const CloneSlice& s3) {
  std::vector<size_t> out;
  std::vector<char> flags(s3.size(), 0);
  parallel_for(s3.size(), [&](size_t i) {
    Algebra reduct(alg.size(), {{"g", 3, s3.tables[i]}}, "", false);
    flags[i] = is_taylor(reduct).verdict ? 1 : 0;
  });
  for (size_t i = 0; i < s3.size(); ++i)
    if (flags[i]) out.push_back(i);
  return out;
}

std::vector<Table> basic_op_tables(const Algebra& alg) {
  std::vector<Table> out;
  for (size_t i = 0; i < alg.num_ops(); ++i) out.push_back(alg.op(i).table);
  return out;
}

}  // namespace

MinimalityResult is_minimal_taylor(const Algebra& alg) {
  alg.require_idempotent("is_minimal_taylor");
  {
    std::lock_guard<std::mutex> lock(taylor_cache_mutex);
    auto it = minimality_cache.find(alg.key());
    if (it != minimality_cache.end()) return it->second;
  }
  MinimalityResult res;
  if (alg.size() == 1) {  // minimal Taylor by convention
    res.minimal = true;
    return res;
  }
  if (!is_taylor(alg).verdict)
    throw precondition_error("is_minimal_taylor requires a Taylor algebra");
  const CloneSlice& s3 = clone_slice(alg, 3);
  auto candidates = taylor_ternary_generators(alg, s3);
  auto targets = basic_op_tables(alg);
  res.minimal = true;
  for (size_t idx : candidates) {
    if (!clone_membership(alg, {s3.tables[idx]}, targets)) {
      res.minimal = false;
      res.counterexample = s3.witness(idx);
      res.counterexample_table = s3.tables[idx];
      break;
    }
  }
  std::lock_guard<std::mutex> lock(taylor_cache_mutex);
  minimality_cache[alg.key()] = res;
  return res;
}

ReductResult minimal_taylor_reduct(const Algebra& alg) {
  alg.require_idempotent("minimal_taylor_reduct");
  if (!is_taylor(alg).verdict)
    throw precondition_error("minimal_taylor_reduct requires a Taylor algebra");
  const CloneSlice& s3 = clone_slice(alg, 3);
  auto candidates = taylor_ternary_generators(alg, s3);
  if (candidates.empty())
    throw resource_error("no ternary Taylor generator found at arity 3");

  // Clo(A; a) <= Clo(A; b), memoized: inclusion tested by generating a's
  // table from b.
  std::map<std::pair<size_t, size_t>, bool> memo;
  auto le = [&](size_t a, size_t b) {
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    bool v = clone_membership(alg, {s3.tables[b]}, {s3.tables[a]});
    memo[{a, b}] = v;
    return v;
  };
  // Candidates whose clone is minimal under inclusion, then the tie-break:
  // smallest lexicographic generator table over all minimal clones.
  std::vector<size_t> minimal;
  for (size_t c : candidates) {
    bool is_min = true;
    for (size_t d : candidates) {
      if (d == c) continue;
      if (le(d, c) && !le(c, d)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(c);
  }
  size_t best = minimal[0];
  for (size_t c : minimal)
    if (s3.tables[c] < s3.tables[best]) best = c;
  Algebra reduct(alg.size(), {{"g", 3, s3.tables[best]}},
                 alg.name().empty() ? "" : alg.name() + "|reduct", false);
  return ReductResult{std::move(reduct), s3.witness(best), s3.tables[best]};
}

bool generates_clone_table(const Algebra& alg, const Table& g_table, int g_arity) {
  if (g_table.size() != ipow(alg.size(), g_arity))
    throw argument_error("generator table has wrong length");
  return clone_membership(alg, {g_table}, basic_op_tables(alg));
}

bool generates_clone(const Algebra& alg, const Term& g) {
  return generates_clone_table(alg, g.table(alg), g.arity());
}

}  // namespace taylorlab
