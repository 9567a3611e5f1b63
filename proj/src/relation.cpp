#include "taylorlab/relation.hpp"

#include <bit>

namespace taylorlab {

Relation::Relation(int domain_size, int arity) : n_(domain_size), m_(arity) {
  if (n_ < 1 || m_ < 1) throw argument_error("relation needs positive size and arity");
  bits_.assign((capacity() + 63) / 64, 0);
}

Relation Relation::full(int domain_size, int arity) {
  Relation r(domain_size, arity);
  for (size_t i = 0; i < r.capacity(); ++i) r.set(i);
  return r;
}

Relation Relation::from_tuples(int domain_size, int arity,
                               const std::vector<std::vector<Element>>& tuples) {
  Relation r(domain_size, arity);
  for (const auto& t : tuples) {
    if ((int)t.size() != arity) throw argument_error("tuple arity mismatch");
    for (Element x : t)
      if (x < 0 || x >= domain_size) throw argument_error("tuple entry out of domain");
    r.add(t);
  }
  return r;
}

size_t Relation::count() const {
  size_t c = 0;
  for (uint64_t w : bits_) c += std::popcount(w);
  return c;
}

std::vector<size_t> Relation::member_indices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < capacity(); ++i)
    if (test(i)) out.push_back(i);
  return out;
}

std::vector<std::vector<Element>> Relation::tuples() const {
  std::vector<std::vector<Element>> out;
  std::vector<Element> t(m_);
  for (size_t i = 0; i < capacity(); ++i)
    if (test(i)) {
      tuple_decode(i, n_, m_, t.data());
      out.push_back(t);
    }
  return out;
}

bool Relation::operator<(const Relation& o) const {
  if (n_ != o.n_ || m_ != o.m_) throw argument_error("comparing incompatible relations");
  // Compare sorted member-index sequences; owning the first differing index wins.
  for (size_t i = 0; i < capacity(); ++i) {
    bool a = test(i), b = o.test(i);
    if (a != b) return a;
  }
  return false;
}

Relation Relation::intersect(const Relation& o) const {
  Relation r = *this;
  for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

Relation Relation::unite(const Relation& o) const {
  Relation r = *this;
  for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

bool Relation::subset_of(const Relation& o) const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

Relation Relation::project(const std::vector<int>& coords) const {
  Relation out(n_, (int)coords.size());
  std::vector<Element> t(m_), p(coords.size());
  for (size_t i = 0; i < capacity(); ++i) {
    if (!test(i)) continue;
    tuple_decode(i, n_, m_, t.data());
    for (size_t j = 0; j < coords.size(); ++j) p[j] = t[coords[j]];
    out.add(p);
  }
  return out;
}

uint64_t Relation::hash() const {
  uint64_t h = hash_combine(n_, m_);
  for (uint64_t w : bits_) h = hash_combine(h, w);
  return h;
}

static void require_binary(const Relation& r, const char* who) {
  if (r.arity() != 2) throw argument_error(std::string(who) + " needs a binary relation");
}

Relation compose(const Relation& r, const Relation& s) {
  require_binary(r, "compose");
  require_binary(s, "compose");
  if (r.domain_size() != s.domain_size()) throw argument_error("compose: domain mismatch");
  int n = r.domain_size();
  Relation out(n, 2);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!r.test((size_t)a * n + b)) continue;
      for (Element c = 0; c < n; ++c)
        if (s.test((size_t)b * n + c)) out.set((size_t)a * n + c);
    }
  return out;
}

Relation inverse(const Relation& r) {
  require_binary(r, "inverse");
  int n = r.domain_size();
  Relation out(n, 2);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (r.test((size_t)a * n + b)) out.set((size_t)b * n + a);
  return out;
}

std::vector<Element> left_center(const Relation& r) {
  require_binary(r, "left_center");
  int n = r.domain_size();
  std::vector<Element> out;
  for (Element a = 0; a < n; ++a) {
    bool all = true;
    for (Element b = 0; b < n && all; ++b)
      if (!r.test((size_t)a * n + b)) all = false;
    if (all) out.push_back(a);
  }
  return out;
}

std::vector<Element> right_center(const Relation& r) { return left_center(inverse(r)); }

std::vector<Element> image_of(const std::vector<Element>& set, const Relation& r) {
  require_binary(r, "image_of");
  int n = r.domain_size();
  std::vector<bool> hit(n, false);
  for (Element a : set)
    for (Element b = 0; b < n; ++b)
      if (r.test((size_t)a * n + b)) hit[b] = true;
  std::vector<Element> out;
  for (Element b = 0; b < n; ++b)
    if (hit[b]) out.push_back(b);
  return out;
}

bool is_subdirect(const Relation& r) {
  for (int i = 0; i < r.arity(); ++i)
    if (r.project({i}).count() != (size_t)r.domain_size()) return false;
  return true;
}

bool is_proper(const Relation& r) { return r.count() != r.capacity(); }

bool is_linked(const Relation& r) {
  require_binary(r, "is_linked");
  int n = r.domain_size();
  // Union-find over left vertices 0..n-1 and right vertices n..2n-1.
  std::vector<int> uf(2 * n);
  for (int i = 0; i < 2 * n; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (r.test((size_t)a * n + b)) uf[find(a)] = find(n + b);
  int comp = -1;
  for (Element a = 0; a < n; ++a) {
    bool nonisolated = false;
    for (Element b = 0; b < n; ++b)
      if (r.test((size_t)a * n + b)) nonisolated = true;
    if (!nonisolated) continue;
    int c = find(a);
    if (comp == -1) comp = c;
    if (c != comp) return false;
  }
  return true;
}

bool is_irredundant(const Relation& r) {
  int n = r.domain_size();
  for (int i = 0; i < r.arity(); ++i)
    for (int j = 0; j < r.arity(); ++j) {
      if (i == j) continue;
      Relation p = r.project({i, j});
      // Graph of a bijection from the i-projection onto the j-projection.
      bool bijection = true;
      std::vector<int> img(n, -1), pre(n, -1);
      for (Element a = 0; a < n && bijection; ++a)
        for (Element b = 0; b < n && bijection; ++b) {
          if (!p.test((size_t)a * n + b)) continue;
          if (img[a] != -1 || pre[b] != -1) bijection = false;
          img[a] = b;
          pre[b] = a;
        }
      if (bijection) return false;
    }
  return true;
}

bool is_reflexive(const Relation& r) {
  int n = r.domain_size();
  std::vector<Element> t(r.arity());
  for (Element a = 0; a < n; ++a) {
    std::fill(t.begin(), t.end(), a);
    if (!r.contains(t)) return false;
  }
  return true;
}

bool is_symmetric(const Relation& r) {
  require_binary(r, "is_symmetric");
  return r == inverse(r);
}

bool is_transitive(const Relation& r) {
  require_binary(r, "is_transitive");
  return compose(r, r).subset_of(r);
}

bool invariant(const Algebra& alg, const Relation& r) {
  if (r.domain_size() != alg.size()) throw argument_error("invariant: domain mismatch");
  auto members = r.member_indices();
  int m = r.arity(), n = alg.size();
  std::vector<std::vector<Element>> digits(members.size(), std::vector<Element>(m));
  for (size_t i = 0; i < members.size(); ++i)
    tuple_decode(members[i], n, m, digits[i].data());
  std::vector<Element> result(m), args;
  for (size_t oi = 0; oi < alg.num_ops(); ++oi) {
    const auto& f = alg.op(oi);
    int k = f.arity;
    std::vector<size_t> pick(k, 0);
    if (members.empty()) continue;
    while (true) {
      for (int c = 0; c < m; ++c) {
        Element a[16];
        for (int j = 0; j < k; ++j) a[j] = digits[pick[j]][c];
        result[c] = f.apply(a, n);
      }
      if (!r.test(tuple_index(result, n))) return false;
      int pos = k - 1;
      while (pos >= 0 && ++pick[pos] == members.size()) pick[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return true;
}

}  // namespace taylorlab
