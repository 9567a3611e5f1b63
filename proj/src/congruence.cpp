#include "taylorlab/congruence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

Partition Partition::from_block_of(int domain_size, const std::vector<int>& raw) {
  Partition p;
  p.block_of.assign(domain_size, -1);
  std::map<int, std::vector<Element>> groups;
  for (int x = 0; x < domain_size; ++x)
    if (raw[x] >= 0) groups[raw[x]].push_back(x);
  std::vector<std::vector<Element>> blocks;
  for (auto& [_, blk] : groups) blocks.push_back(blk);
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (size_t i = 0; i < blocks.size(); ++i)
    for (Element x : blocks[i]) {
      p.block_of[x] = (int)i;
      p.carrier.push_back(x);
    }
  std::sort(p.carrier.begin(), p.carrier.end());
  p.blocks = std::move(blocks);
  return p;
}

Partition Partition::equality_on(int domain_size, const std::vector<Element>& carrier) {
  std::vector<int> raw(domain_size, -1);
  for (Element x : carrier) raw[x] = x;
  return from_block_of(domain_size, raw);
}

Partition Partition::full_on(int domain_size, const std::vector<Element>& carrier) {
  std::vector<int> raw(domain_size, -1);
  for (Element x : carrier) raw[x] = 0;
  return from_block_of(domain_size, raw);
}

bool is_congruence(const Algebra& alg, const Partition& p) {
  // Union of blocks must be closed; then check compatibility via unary
  // polynomials x -> f(c_1,..,x,..,c_k), which suffices by Mal'cev's argument.
  int n = alg.size();
  for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
    const auto& f = alg.op(oi);
    int k = f.arity;
    std::vector<Element> args(k);
    size_t combos = 1;
    for (int i = 0; i + 1 < k; ++i) combos *= p.carrier.size();
    for (int pos = 0; pos < k; ++pos) {
      for (size_t ci = 0; ci < combos; ++ci) {
        size_t rest = ci;
        for (int i = 0; i < k; ++i) {
          if (i == pos) continue;
          args[i] = p.carrier[rest % p.carrier.size()];
          rest /= p.carrier.size();
        }
        int block = -2;
        bool block_ok = true;
        for (const auto& blk : p.blocks) {
          block = -2;
          for (Element x : blk) {
            args[pos] = x;
            Element v = f.apply(args.data(), n);
            if (p.block_of[v] < 0) return false;  // carrier not closed
            if (block == -2) block = p.block_of[v];
            else if (block != p.block_of[v]) block_ok = false;
          }
          if (!block_ok) return false;
        }
      }
    }
  }
  return true;
}

Congruence congruence_generated(const Algebra& alg, const std::vector<Element>& carrier,
                                const std::vector<std::pair<Element, Element>>& pairs) {
  int n = alg.size();
  std::vector<int> in_carrier(n, 0);
  for (Element x : carrier) in_carrier[x] = 1;
  for (auto [a, b] : pairs)
    if (!in_carrier[a] || !in_carrier[b])
      throw argument_error("congruence generators must lie in the carrier");

  std::vector<int> uf(n);
  for (int i = 0; i < n; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    uf[std::max(a, b)] = std::min(a, b);
    return true;
  };
  for (auto [a, b] : pairs) unite(a, b);

  // Saturate under unary polynomials of the restricted algebra.
  bool changed = true;
  std::vector<Element> args;
  while (changed) {
    changed = false;
    for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
      const auto& f = alg.op(oi);
      int k = f.arity;
      args.assign(k, 0);
      size_t combos = 1;
      for (int i = 0; i + 1 < k; ++i) combos *= carrier.size();
      for (int pos = 0; pos < k; ++pos) {
        for (size_t ci = 0; ci < combos; ++ci) {
          size_t rest = ci;
          for (int i = 0; i < k; ++i) {
            if (i == pos) continue;
            args[i] = carrier[rest % carrier.size()];
            rest /= carrier.size();
          }
          // All images of one class must collapse.
          std::map<int, Element> rep;
          for (Element x : carrier) {
            args[pos] = x;
            Element v = f.apply(args.data(), n);
            if (!in_carrier[v])
              throw argument_error("carrier is not closed under " + f.name);
            auto [it, fresh] = rep.try_emplace(find(x), v);
            if (!fresh && unite(it->second, v)) changed = true;
          }
        }
      }
    }
  }

  std::vector<int> raw(n, -1);
  for (Element x : carrier) raw[x] = find(x);
  return Partition::from_block_of(n, raw);
}

Congruence principal_congruence(const Algebra& alg, const std::vector<Element>& carrier,
                                Element a, Element b) {
  return congruence_generated(alg, carrier, {{a, b}});
}

static Partition join(const Algebra& alg, const std::vector<Element>& carrier,
                      const Partition& p, const Partition& q) {
  std::vector<std::pair<Element, Element>> pairs;
  for (const auto& blk : p.blocks)
    for (size_t i = 1; i < blk.size(); ++i) pairs.push_back({blk[0], blk[i]});
  for (const auto& blk : q.blocks)
    for (size_t i = 1; i < blk.size(); ++i) pairs.push_back({blk[0], blk[i]});
  return congruence_generated(alg, carrier, pairs);
}

namespace {
std::mutex cong_cache_mutex;
std::map<std::pair<uint64_t, std::vector<Element>>, std::vector<Congruence>> cong_cache;
}  // namespace

std::vector<Congruence> all_congruences(const Algebra& alg, const std::vector<Element>& carrier) {
  std::vector<Element> c = carrier;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  {
    std::lock_guard<std::mutex> lock(cong_cache_mutex);
    auto it = cong_cache.find({alg.key(), c});
    if (it != cong_cache.end()) return it->second;
  }

  std::set<Partition> all;
  all.insert(Partition::equality_on(alg.size(), c));
  std::vector<Partition> principals;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j) {
      auto pc = principal_congruence(alg, c, c[i], c[j]);
      if (all.insert(pc).second) principals.push_back(pc);
    }
  // Join-closure: every congruence is a join of principals.
  std::vector<Partition> queue(all.begin(), all.end());
  while (!queue.empty()) {
    Partition cur = queue.back();
    queue.pop_back();
    for (const auto& pr : principals) {
      Partition j = join(alg, c, cur, pr);
      if (all.insert(j).second) queue.push_back(j);
    }
  }
  std::vector<Congruence> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.num_blocks() != b.num_blocks()) return a.num_blocks() > b.num_blocks();
    return a.block_of < b.block_of;
  });
  {
    std::lock_guard<std::mutex> lock(cong_cache_mutex);
    cong_cache[{alg.key(), c}] = out;
  }
  return out;
}

bool finer_or_equal(const Partition& fine, const Partition& coarse) {
  for (const auto& blk : fine.blocks) {
    int cb = coarse.block_of[blk[0]];
    for (Element x : blk)
      if (coarse.block_of[x] != cb) return false;
  }
  return true;
}

std::vector<Congruence> maximal_congruences(const Algebra& alg,
                                            const std::vector<Element>& carrier) {
  auto congs = all_congruences(alg, carrier);
  std::vector<Congruence> proper;
  for (const auto& c : congs)
    if (!c.is_full()) proper.push_back(c);
  std::vector<Congruence> out;
  for (const auto& c : proper) {
    bool maximal = true;
    for (const auto& d : proper)
      if (!(c == d) && finer_or_equal(c, d)) maximal = false;
    if (maximal) out.push_back(c);
  }
  return out;
}

Algebra quotient(const Algebra& alg, const Congruence& cong) {
  if ((int)cong.carrier.size() != alg.size())
    throw argument_error("quotient: congruence carrier must be the full domain");
  int nb = (int)cong.num_blocks();
  std::vector<OperationTable> qops;
  for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
    const auto& f = alg.op(oi);
    OperationTable g{f.name, f.arity, Table(ipow(nb, f.arity))};
    std::vector<Element> args(f.arity);
    for (size_t idx = 0; idx < g.table.size(); ++idx) {
      size_t rest = idx;
      for (int i = f.arity - 1; i >= 0; --i) {
        args[i] = cong.blocks[rest % nb][0];
        rest /= nb;
      }
      g.table[idx] = (uint8_t)cong.block_of[f.apply(args.data(), alg.size())];
    }
    qops.push_back(std::move(g));
  }
  return Algebra(nb, std::move(qops), alg.name().empty() ? "" : alg.name() + "|q", false);
}

Partition mu(const Algebra& alg) {
  int n = alg.size();
  std::vector<int> uf(n);
  for (int i = 0; i < n; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if ((int)sg_subuniverse(alg, {a, b}).size() != n) uf[std::max(find(a), find(b))] = std::min(find(a), find(b));
  std::vector<int> raw(n);
  for (int x = 0; x < n; ++x) raw[x] = find(x);
  return Partition::from_block_of(n, raw);
}

bool is_simple(const Algebra& alg) {
  if (alg.size() == 1) return false;
  return all_congruences(alg, full_domain(alg.size())).size() == 2;
}

}  // namespace taylorlab
