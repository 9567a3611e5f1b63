#include "taylorlab/algebra.hpp"

#include <algorithm>
#include <atomic>

namespace taylorlab {

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  int jobs = Config::global().jobs;
  if (jobs <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  size_t workers = std::min<size_t>(jobs, n);
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

size_t ipow(size_t base, size_t exp) {
  size_t r = 1;
  while (exp--) r *= base;
  return r;
}

Algebra::Algebra(int size, std::vector<OperationTable> ops, std::string name,
                 bool require_idem)
    : size_(size), ops_(std::move(ops)), name_(std::move(name)) {
  if (size_ < 1) throw argument_error("algebra size must be positive");
  for (const auto& f : ops_) {
    if (f.arity < 1) throw argument_error("operation arity must be positive: " + f.name);
    if (f.table.size() != ipow(size_, f.arity))
      throw argument_error("operation table has wrong length: " + f.name);
    for (uint8_t v : f.table)
      if (v >= size_) throw argument_error("table entry out of range: " + f.name);
  }
  idempotent_ = true;
  for (const auto& f : ops_) {
    for (Element x = 0; x < size_; ++x) {
      size_t idx = 0;
      for (int i = 0; i < f.arity; ++i) idx = idx * size_ + x;
      if (f.table[idx] != x) idempotent_ = false;
    }
  }
  if (require_idem && !idempotent_)
    throw argument_error("algebra is not idempotent: " + name_);

  uint64_t h = size_;
  for (const auto& f : ops_) {
    h = hash_combine(h, f.arity);
    for (uint8_t v : f.table) h = hash_combine(h, v);
  }
  key_ = h;
}

Element Algebra::eval(size_t op_index, const std::vector<Element>& args) const {
  if (op_index >= ops_.size()) throw argument_error("operation index out of range");
  const auto& f = ops_[op_index];
  if ((int)args.size() != f.arity)
    throw argument_error("argument count does not match arity of " + f.name);
  for (Element a : args)
    if (a < 0 || a >= size_) throw argument_error("argument out of domain");
  return f.apply(args.data(), size_);
}

Algebra Algebra::restrict_to(const std::vector<Element>& carrier) const {
  std::vector<Element> sorted = carrier;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) throw argument_error("empty carrier");
  std::vector<int> index_of(size_, -1);
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= size_) throw argument_error("carrier element out of domain");
    index_of[sorted[i]] = (int)i;
  }
  int m = (int)sorted.size();
  std::vector<OperationTable> rops;
  for (const auto& f : ops_) {
    OperationTable g{f.name, f.arity, Table(ipow(m, f.arity))};
    std::vector<Element> args(f.arity);
    for (size_t idx = 0; idx < g.table.size(); ++idx) {
      size_t rest = idx;
      for (int i = f.arity - 1; i >= 0; --i) {
        args[i] = sorted[rest % m];
        rest /= m;
      }
      Element v = f.apply(args.data(), size_);
      if (index_of[v] < 0)
        throw argument_error("carrier is not closed under " + f.name);
      g.table[idx] = (uint8_t)index_of[v];
    }
    rops.push_back(std::move(g));
  }
  return Algebra(m, std::move(rops), name_.empty() ? "" : name_ + "|sub", false);
}

void Algebra::require_idempotent(const char* who) const {
  if (!idempotent_)
    throw precondition_error(std::string(who) + " requires an idempotent algebra");
}

std::vector<Element> full_domain(int size) {
  std::vector<Element> d(size);
  for (int i = 0; i < size; ++i) d[i] = i;
  return d;
}

size_t tuple_index(const std::vector<Element>& t, int size) {
  size_t idx = 0;
  for (Element x : t) idx = idx * size + x;
  return idx;
}

void tuple_decode(size_t index, int size, int arity, Element* out) {
  for (int i = arity - 1; i >= 0; --i) {
    out[i] = (Element)(index % size);
    index /= size;
  }
}

}  // namespace taylorlab
