#include "taylorlab/subuniverse.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_set>

namespace taylorlab {

SgResult sg(const Algebra& alg, int power,
            const std::vector<std::vector<Element>>& generators, bool track,
            const std::function<bool(size_t)>& stop) {
  if (power < 1) throw argument_error("sg: power must be positive");
  int n = alg.size(), m = power;
  SgResult res;
  res.relation = Relation(n, m);
  std::vector<std::vector<Element>> digits;
  bool stopped = false;

  auto push = [&](size_t idx, int op, std::vector<uint32_t> ch) {
    if (res.relation.test(idx)) return;
    res.relation.set(idx);
    res.members.push_back(idx);
    digits.emplace_back(m);
    tuple_decode(idx, n, m, digits.back().data());
    if (track) res.parents.push_back({op, std::move(ch)});
    if (stop && stop(idx)) stopped = true;
  };

  for (const auto& g : generators) {
    if ((int)g.size() != m) throw argument_error("sg: generator arity mismatch");
    for (Element x : g)
      if (x < 0 || x >= n) throw argument_error("sg: generator entry out of domain");
    size_t idx = tuple_index(g, n);
    push(idx, -1, {});
    for (size_t i = 0; i < res.members.size(); ++i)
      if (res.members[i] == idx) {
        res.generator_member.push_back((uint32_t)i);
        break;
      }
  }

  std::vector<Element> result(m);
  // Frontier closure: when member c-1 arrives, apply ops to all argument
  // tuples over members[0..c-1] that use it at least once.
  for (size_t c = 1; c <= res.members.size() && !stopped; ++c) {
    size_t newest = c - 1;
    for (size_t oi = 0; oi < alg.num_ops() && !stopped; ++oi) {
      const auto& f = alg.op(oi);
      int k = f.arity;
      std::vector<uint32_t> pick(k, 0);
      while (!stopped) {
        bool uses_newest = false;
        for (int j = 0; j < k; ++j)
          if (pick[j] == newest) uses_newest = true;
        if (uses_newest) {
          for (int cc = 0; cc < m; ++cc) {
            Element a[16];
            for (int j = 0; j < k; ++j) a[j] = digits[pick[j]][cc];
            result[cc] = f.apply(a, n);
          }
          push(tuple_index(result, n), (int)oi,
               track ? pick : std::vector<uint32_t>{});
        }
        int pos = k - 1;
        while (pos >= 0 && ++pick[pos] == c) pick[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }
  return res;
}

Relation sg_relation(const Algebra& alg, int power,
                     const std::vector<std::vector<Element>>& generators) {
  return sg(alg, power, generators, false).relation;
}

Term SgResult::witness_term(const Algebra& alg, size_t member_index, int arity) const {
  if (parents.size() != members.size())
    throw argument_error("witness_term needs a closure with tracking enabled");
  // Variable of a generator member: first input generator mapping to it.
  std::vector<int> var_of(members.size(), -1);
  for (size_t g = generator_member.size(); g-- > 0;) var_of[generator_member[g]] = (int)g;
  std::vector<std::optional<Term>> built(members.size());
  std::function<Term(size_t)> go = [&](size_t i) -> Term {
    if (built[i]) return *built[i];
    Term t;
    if (parents[i].op_index < 0) {
      if (var_of[i] < 0) throw argument_error("member is a generator without a variable");
      t = Term::projection(var_of[i], arity);
    } else {
      std::vector<Term> kids;
      for (uint32_t c : parents[i].children) kids.push_back(go(c));
      t = Term::apply(parents[i].op_index, std::move(kids));
    }
    built[i] = t;
    return t;
  };
  return go(member_index);
}

std::vector<Element> sg_subuniverse(const Algebra& alg, const std::vector<Element>& gens) {
  std::vector<std::vector<Element>> g;
  for (Element x : gens) g.push_back({x});
  Relation r = sg_relation(alg, 1, g);
  std::vector<Element> out;
  for (Element x = 0; x < alg.size(); ++x)
    if (r.test(x)) out.push_back(x);
  return out;
}

namespace {
std::mutex subuniverse_cache_mutex;
std::map<uint64_t, std::vector<std::vector<Element>>> subuniverse_cache;
}  // namespace

std::vector<std::vector<Element>> all_subuniverses(const Algebra& alg) {
  {
    std::lock_guard<std::mutex> lock(subuniverse_cache_mutex);
    auto it = subuniverse_cache.find(alg.key());
    if (it != subuniverse_cache.end()) return it->second;
  }
  std::set<std::vector<Element>> seen;
  seen.insert({});
  std::vector<std::vector<Element>> queue = {{}};
  while (!queue.empty()) {
    auto s = queue.back();
    queue.pop_back();
    for (Element x = 0; x < alg.size(); ++x) {
      if (std::find(s.begin(), s.end(), x) != s.end()) continue;
      auto g = s;
      g.push_back(x);
      auto closed = sg_subuniverse(alg, g);
      if (seen.insert(closed).second) queue.push_back(closed);
    }
  }
  std::vector<std::vector<Element>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::lock_guard<std::mutex> lock(subuniverse_cache_mutex);
  subuniverse_cache[alg.key()] = out;
  return out;
}

std::vector<Relation> all_subpowers(const Algebra& alg, int power, bool reflexive_only) {
  size_t cap = Config::global().max_subpowers;
  int n = alg.size();
  std::unordered_set<uint64_t> seen;
  std::vector<Relation> found;
  std::vector<size_t> queue;

  auto push = [&](const Relation& r) {
    if (seen.insert(r.hash()).second) {
      if (found.size() >= cap)
        throw resource_error("subpower enumeration exceeded cap of " +
                             std::to_string(cap) + " closed sets");
      found.push_back(r);
      queue.push_back(found.size() - 1);
    }
  };

  if (reflexive_only) {
    std::vector<std::vector<Element>> diag;
    for (Element a = 0; a < n; ++a) diag.push_back(std::vector<Element>(power, a));
    push(sg_relation(alg, power, diag));
  } else {
    push(Relation(n, power));  // empty relation is closed
  }

  std::vector<Element> t(power);
  while (!queue.empty()) {
    size_t qi = queue.back();
    queue.pop_back();
    Relation base = found[qi];
    for (size_t idx = 0; idx < base.capacity(); ++idx) {
      if (base.test(idx)) continue;
      tuple_decode(idx, n, power, t.data());
      auto gens = base.tuples();
      gens.push_back(t);
      push(sg_relation(alg, power, gens));
    }
  }
  // The hash-dedup assumes no collisions; sizes here make them implausible,
  // but sort deterministically and drop exact duplicates to be safe.
  std::sort(found.begin(), found.end(), [](const Relation& a, const Relation& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace taylorlab
