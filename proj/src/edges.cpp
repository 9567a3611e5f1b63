#include "taylorlab/edges.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

const char* edge_type_name(EdgeType t) {
  switch (t) {
    case EdgeType::semilattice: return "semilattice";
    case EdgeType::majority: return "majority";
    case EdgeType::abelian: return "abelian";
  }
  return "?";
}

namespace {

// Does some table in the slice act on the two blocks {a/theta, b/theta} as
// the given 2-element operation (with block0 = a/theta as 0, block1 = b/theta
// as 1)? All arguments from the union must land in the prescribed block.
std::optional<size_t> find_block_action(const CloneSlice& slice, int domain_size,
                                        const std::vector<Element>& block_a,
                                        const std::vector<Element>& block_b,
                                        const Table& two_elt_op, int arity) {
  std::vector<int> side(domain_size, -1);
  for (Element x : block_a) side[x] = 0;
  for (Element x : block_b) side[x] = 1;
  std::vector<Element> uni;
  uni.insert(uni.end(), block_a.begin(), block_a.end());
  uni.insert(uni.end(), block_b.begin(), block_b.end());
  for (size_t ti = 0; ti < slice.size(); ++ti) {
    const Table& t = slice.tables[ti];
    bool ok = true;
    std::vector<size_t> pick(arity, 0);
    while (ok) {
      size_t idx = 0;
      size_t bits = 0;
      for (int j = 0; j < arity; ++j) {
        Element x = uni[pick[j]];
        idx = idx * domain_size + x;
        bits = bits * 2 + side[x];
      }
      if (side[t[idx]] != two_elt_op[bits]) ok = false;
      int pos = arity - 1;
      while (pos >= 0 && ++pick[pos] == uni.size()) pick[pos--] = 0;
      if (pos < 0) break;
    }
    if (ok) return ti;
  }
  return std::nullopt;
}

std::mutex edge_cache_mutex;
std::map<std::tuple<uint64_t, Element, Element>, std::vector<EdgeWitness>> edge_cache;

}  // namespace

std::vector<EdgeWitness> classify_pair(const Algebra& alg, Element a, Element b) {
  if (a == b) throw argument_error("classify_pair needs distinct elements");
  {
    std::lock_guard<std::mutex> lock(edge_cache_mutex);
    auto it = edge_cache.find({alg.key(), a, b});
    if (it != edge_cache.end()) return it->second;
  }
  std::vector<EdgeWitness> out;
  auto sub = sg_subuniverse(alg, {a, b});
  Algebra e = alg.restrict_to(sub);
  std::vector<int> local_of(alg.size(), -1);
  for (size_t i = 0; i < sub.size(); ++i) local_of[sub[i]] = (int)i;
  const CloneSlice& s2 = clone_slice(e, 2);
  const CloneSlice& s3 = clone_slice(e, 3);

  // join / majority on {0,1}, encoded over block-bit tuples
  Table join01 = {0, 1, 1, 1};
  Table maj01 = {0, 0, 0, 1, 0, 1, 1, 1};

  for (const auto& theta : all_congruences(e, full_domain(e.size()))) {
    if (theta.is_full()) continue;
    int la = local_of[a], lb = local_of[b];
    if (theta.block_of[la] == theta.block_of[lb]) continue;
    std::vector<Element> block_a = theta.blocks[theta.block_of[la]];
    std::vector<Element> block_b = theta.blocks[theta.block_of[lb]];

    // Lift theta to a congruence on the original element names.
    std::vector<int> raw(alg.size(), -1);
    for (Element x : sub) raw[x] = theta.block_of[local_of[x]];
    Congruence theta_global = Partition::from_block_of(alg.size(), raw);

    if (auto ti = find_block_action(s2, e.size(), block_a, block_b, join01, 2)) {
      EdgeWitness w;
      w.a = a;
      w.b = b;
      w.type = EdgeType::semilattice;
      w.subuniverse = sub;
      w.theta = theta_global;
      w.term = s2.witness(*ti);
      out.push_back(std::move(w));
    }
    if (auto ti = find_block_action(s3, e.size(), block_a, block_b, maj01, 3)) {
      EdgeWitness w;
      w.a = a;
      w.b = b;
      w.type = EdgeType::majority;
      w.subuniverse = sub;
      w.theta = theta_global;
      w.term = s3.witness(*ti);
      out.push_back(std::move(w));
    }
    Algebra q = quotient(e, theta);
    if (is_abelian(q)) {
      EdgeWitness w;
      w.a = a;
      w.b = b;
      w.type = EdgeType::abelian;
      w.subuniverse = sub;
      w.theta = theta_global;
      if (is_taylor(q).verdict)
        w.quotient_structure = affine_structure(q);
      out.push_back(std::move(w));
    }
  }
  std::lock_guard<std::mutex> lock(edge_cache_mutex);
  edge_cache[{alg.key(), a, b}] = out;
  return out;
}

bool is_edge(const Algebra& alg, Element a, Element b) {
  return !classify_pair(alg, a, b).empty();
}

bool is_edge_of_type(const Algebra& alg, Element a, Element b, EdgeType t) {
  for (const auto& w : classify_pair(alg, a, b))
    if (w.type == t) return true;
  return false;
}

bool is_minimal_edge(const Algebra& alg, const EdgeWitness& w) {
  // Witnessing congruences of this edge's type, restricted to maximal ones
  // among the proper congruences of Sg(a,b).
  auto witnesses = classify_pair(alg, w.a, w.b);
  auto maximal = maximal_congruences(alg, w.subuniverse);
  for (const auto& ew : witnesses) {
    if (ew.type != w.type) continue;
    bool is_max = false;
    for (const auto& mc : maximal)
      if (ew.theta == mc) is_max = true;
    if (!is_max) continue;
    const auto& blk_a = ew.theta.blocks[ew.theta.block_of[w.a]];
    const auto& blk_b = ew.theta.blocks[ew.theta.block_of[w.b]];
    bool all_same = true;
    for (Element a2 : blk_a)
      for (Element b2 : blk_b)
        if (sg_subuniverse(alg, {a2, b2}) != w.subuniverse) all_same = false;
    if (all_same) return true;
  }
  return false;
}

EdgeGraph edge_graph(const Algebra& alg, bool minimal_only) {
  EdgeGraph g;
  g.vertices = alg.size();
  int n = alg.size();
  std::vector<std::vector<EdgeGraph::Arc>> per_pair(n * n);
  std::vector<std::pair<Element, Element>> pairs;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b) pairs.push_back({a, b});
  parallel_for(pairs.size(), [&](size_t i) {
    auto [a, b] = pairs[i];
    std::set<std::pair<EdgeType, bool>> kinds;
    for (const auto& w : classify_pair(alg, a, b)) {
      bool minimal = is_minimal_edge(alg, w);
      kinds.insert({w.type, minimal});
    }
    for (auto [type, minimal] : kinds) {
      if (minimal_only && !minimal) continue;
      // An edge type is reported once per pair, flagged minimal if some
      // witness of that type is minimal.
      if (minimal || !kinds.count({type, true}))
        per_pair[a * n + b].push_back({a, b, type, minimal});
    }
  });
  for (auto& arcs : per_pair)
    for (auto& arc : arcs) g.arcs.push_back(arc);
  return g;
}

bool check_connectivity(const EdgeGraph& g) {
  if (g.vertices <= 1) return true;
  std::vector<int> uf(g.vertices);
  for (int i = 0; i < g.vertices; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (const auto& arc : g.arcs) uf[find(arc.from)] = find(arc.to);
  int c = find(0);
  for (int i = 1; i < g.vertices; ++i)
    if (find(i) != c) return false;
  return true;
}

std::string edge_graph_dot(const EdgeGraph& g) {
  std::ostringstream os;
  os << "digraph edges {\n";
  for (int v = 0; v < g.vertices; ++v) os << "  " << v << ";\n";
  for (const auto& a : g.arcs) {
    os << "  " << (int)a.from << " -> " << (int)a.to << " [label=\"" << edge_type_name(a.type)
       << (a.minimal ? " min" : "") << "\"";
    if (a.type == EdgeType::semilattice) os << ", color=blue";
    if (a.type == EdgeType::majority) os << ", color=darkgreen";
    if (a.type == EdgeType::abelian) os << ", color=red";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

bool stable_under(const Algebra& alg, const std::vector<Element>& b,
                  const std::vector<EdgeType>& types) {
  if (b.empty()) throw argument_error("stable_under: empty subset");
  std::vector<char> inb(alg.size(), 0);
  for (Element x : b) inb[x] = 1;
  for (Element p = 0; p < alg.size(); ++p)
    for (Element q = 0; q < alg.size(); ++q) {
      if (p == q) continue;
      for (const auto& w : classify_pair(alg, p, q)) {
        if (std::find(types.begin(), types.end(), w.type) == types.end()) continue;
        const auto& blk_p = w.theta.blocks[w.theta.block_of[p]];
        bool meets = false;
        for (Element x : blk_p)
          if (inb[x]) meets = true;
        if (!meets) continue;
        for (const auto& blk : w.theta.blocks) {
          bool hit = false;
          for (Element x : blk)
            if (inb[x]) hit = true;
          if (!hit) return false;
        }
      }
    }
  return true;
}

std::vector<std::pair<Element, Element>> s_edges(const Algebra& alg) {
  if (!is_taylor(alg).verdict || !is_minimal_taylor(alg).minimal)
    throw precondition_error("s_edges is only defined on minimal Taylor algebras");
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < alg.size(); ++a)
    for (Element b = 0; b < alg.size(); ++b) {
      if (a == b) continue;
      for (const auto& w : classify_pair(alg, a, b))
        if (w.type == EdgeType::semilattice && is_minimal_edge(alg, w)) {
          out.push_back({a, b});
          break;
        }
    }
  return out;
}

bool s_closed(const Algebra& alg, const std::vector<Element>& b) {
  std::vector<char> inb(alg.size(), 0);
  for (Element x : b) inb[x] = 1;
  for (auto [p, q] : s_edges(alg))
    if (inb[p] && !inb[q]) return false;
  return true;
}

std::optional<std::vector<Element>> s_walk(const Algebra& alg, Element from,
                                           const std::vector<Element>& b) {
  std::vector<char> inb(alg.size(), 0);
  for (Element x : b) inb[x] = 1;
  auto edges = s_edges(alg);
  // BFS over s-edges from the start vertex.
  std::vector<int> prev(alg.size(), -2);
  std::vector<Element> queue = {from};
  prev[from] = -1;
  size_t head = 0;
  while (head < queue.size()) {
    Element cur = queue[head++];
    if (inb[cur]) {
      std::vector<Element> path;
      for (int x = cur; x != -1; x = prev[x]) path.push_back((Element)x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto [p, q] : edges)
      if (p == cur && prev[q] == -2) {
        prev[q] = cur;
        queue.push_back(q);
      }
  }
  return std::nullopt;
}

}  // namespace taylorlab
