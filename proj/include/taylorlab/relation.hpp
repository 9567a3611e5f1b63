#ifndef TAYLORLAB_RELATION_HPP
#define TAYLORLAB_RELATION_HPP

#include <vector>

#include "taylorlab/algebra.hpp"

namespace taylorlab {

// Dense m-ary relation over {0..n-1}^m, bit-indexed by lexicographic tuple
// index (leftmost coordinate most significant).
class Relation {
 public:
  Relation() = default;
  Relation(int domain_size, int arity);

  static Relation full(int domain_size, int arity);
  static Relation from_tuples(int domain_size, int arity,
                              const std::vector<std::vector<Element>>& tuples);

  int domain_size() const { return n_; }
  int arity() const { return m_; }
  size_t capacity() const { return n_ ? ipow(n_, m_) : 0; }

  bool test(size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1; }
  void set(size_t idx) { bits_[idx >> 6] |= (1ULL << (idx & 63)); }
  void reset(size_t idx) { bits_[idx >> 6] &= ~(1ULL << (idx & 63)); }
  bool contains(const std::vector<Element>& t) const { return test(tuple_index(t, n_)); }
  void add(const std::vector<Element>& t) { set(tuple_index(t, n_)); }

  size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::vector<Element>> tuples() const;
  std::vector<size_t> member_indices() const;

  bool operator==(const Relation& o) const {
    return n_ == o.n_ && m_ == o.m_ && bits_ == o.bits_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }
  // Lexicographic order on the bit string; total and deterministic.
  bool operator<(const Relation& o) const;

  Relation intersect(const Relation& o) const;
  Relation unite(const Relation& o) const;
  bool subset_of(const Relation& o) const;

  // Projection onto the listed coordinates, in the listed order.
  Relation project(const std::vector<int>& coords) const;

  uint64_t hash() const;

 private:
  int n_ = 0, m_ = 0;
  std::vector<uint64_t> bits_;
};

// Binary-relation algebra, per the usual composition/inverse conventions.
Relation compose(const Relation& r, const Relation& s);   // r + s
Relation inverse(const Relation& r);                      // -r
std::vector<Element> left_center(const Relation& r);      // {a : a + r = full row}
std::vector<Element> right_center(const Relation& r);
std::vector<Element> image_of(const std::vector<Element>& set, const Relation& r);  // set + r

bool is_subdirect(const Relation& r);
bool is_proper(const Relation& r);
// Connected as a bipartite graph between the two projections.
bool is_linked(const Relation& r);
// No pair of coordinates whose projection is the graph of a bijection.
bool is_irredundant(const Relation& r);
bool is_reflexive(const Relation& r);
bool is_symmetric(const Relation& r);
bool is_transitive(const Relation& r);

// True iff every basic operation applied coordinatewise maps members into r.
bool invariant(const Algebra& alg, const Relation& r);

}  // namespace taylorlab

#endif
