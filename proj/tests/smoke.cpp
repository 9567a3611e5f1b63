#include "taylorlab/classify.hpp"
#include "taylorlab/fixtures.hpp"
#include <chrono>
#include <cstdio>
using namespace taylorlab;
int main() {
  for (const auto& id : minimal_taylor_corpus_ids()) {
    const auto& f = fixture(id);
    auto t0 = std::chrono::steady_clock::now();
    auto u = build_unified_candidate(f.algebra);
    auto v = verify_unified_operation(f.algebra, u);
    printf("%-18s unified n=%d k=%lld l=%lld ok=%d gen=%d (%.1f s)\n", id.c_str(),
           u.cyclic_arity, u.k, u.l, v.all(), v.generates,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    fflush(stdout);
  }
  for (const auto& id : minimal_taylor_corpus_ids()) {
    const auto& f = fixture(id);
    auto t0 = std::chrono::steady_clock::now();
    auto res = theorem_suite(f.algebra, "all");
    int pass = 0, skip = 0;
    for (const auto& r : res) { pass += r.pass; skip += r.skipped; }
    printf("%-18s suite %d/%zu (skip %d) (%.1f s)\n", id.c_str(), pass, res.size(), skip,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    for (const auto& r : res)
      if (!r.pass && !r.skipped) printf("    FAIL %s: %s\n", r.name.c_str(), r.detail.c_str());
    fflush(stdout);
  }
  return 0;
}
