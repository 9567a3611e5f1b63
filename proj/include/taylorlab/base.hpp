#ifndef TAYLORLAB_BASE_HPP
#define TAYLORLAB_BASE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace taylorlab {

using Element = int;
using Table = std::vector<uint8_t>;  // flat op table, leftmost argument most significant

// Malformed inputs: out-of-range elements, arity mismatches, bad carriers.
struct argument_error : std::runtime_error {
  explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called on an algebra that does not satisfy its contract
// (e.g. a minimal-Taylor-only test on a non-minimal algebra).
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured search budget was exhausted; the message names the cap.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

struct Config {
  int max_arity = 4;               // term-search arity cap
  size_t max_slice = 2'000'000;    // clone slice element cap
  size_t max_subpowers = 2'000'000;  // cap on enumerated subpowers of one power
  int jobs = 1;

  static Config& global() {
    static Config cfg;
    return cfg;
  }
};

// Deterministic parallel map: results are merged in index order, so output
// does not depend on the number of workers.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

size_t ipow(size_t base, size_t exp);

}  // namespace taylorlab

#endif
