#include "taylorlab/catalogue.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "taylorlab/json_io.hpp"

namespace taylorlab {

namespace {

std::vector<std::vector<Element>> all_permutations(int n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Element>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Conjugate a k-ary table by a domain permutation: g(x) = p(f(p^-1 x)).
Table conjugate(const Table& f, int n, int k, const std::vector<Element>& perm) {
  std::vector<Element> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;
  Table out(f.size());
  std::vector<Element> t(k);
  for (size_t idx = 0; idx < f.size(); ++idx) {
    tuple_decode(idx, n, k, t.data());
    size_t src = 0;
    for (int i = 0; i < k; ++i) src = src * n + inv[t[i]];
    out[idx] = (uint8_t)perm[f[src]];
  }
  return out;
}

}  // namespace

std::vector<Table> ternary_clone_key(const Algebra& alg) {
  const CloneSlice& s3 = clone_slice(alg, 3);
  std::vector<Table> key = s3.tables;
  std::sort(key.begin(), key.end());
  return key;
}

std::string CanonicalForm::hex_digest() const {
  uint64_t h = key.size();
  for (const auto& t : key)
    for (uint8_t v : t) h = hash_combine(h, v);
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

CanonicalForm canonicalize(const Algebra& alg) {
  if (!is_taylor(alg).verdict || !is_minimal_taylor(alg).minimal)
    throw precondition_error("canonicalize requires a minimal Taylor algebra");
  int n = alg.size();
  const CloneSlice& s3 = clone_slice(alg, 3);
  CanonicalForm best;
  bool first = true;
  for (const auto& perm : all_permutations(n)) {
    std::vector<Table> key;
    key.reserve(s3.size());
    for (const auto& t : s3.tables) key.push_back(conjugate(t, n, 3, perm));
    std::sort(key.begin(), key.end());
    if (first || key < best.key) {
      best.key = std::move(key);
      first = false;
    }
  }
  // Representative: least ternary table of the canonical slice that
  // generates the clone (one exists, e.g. the image of a ternary generator).
  for (const auto& t : best.key) {
    Algebra cand(n, {{"g", 3, t}}, "", false);
    if (!cand.idempotent()) continue;
    if (!is_taylor(cand).verdict) continue;
    if (ternary_clone_key(cand) == best.key) {
      best.representative = t;
      break;
    }
  }
  if (best.representative.empty())
    throw std::logic_error("canonical slice has no ternary generator");
  return best;
}

namespace {

// Is this table lexicographically minimal among its permutation conjugates?
bool perm_canonical(const Table& t, int n, const std::vector<std::vector<Element>>& perms) {
  for (const auto& p : perms) {
    if (std::is_sorted(p.begin(), p.end())) continue;  // identity
    if (conjugate(t, n, 3, p) < t) return false;
  }
  return true;
}

}  // namespace

CensusResult enumerate_minimal_taylor(int size, const std::string& mode,
                                      const std::string& checkpoint_path, size_t limit) {
  CensusResult res;
  res.domain_size = size;
  if (size != 2 && size != 3)
    throw argument_error("census is supported for domain sizes 2 and 3");
  if (mode != "exhaustive" && mode != "search")
    throw argument_error("census mode must be exhaustive or search");
  if (size == 2 && mode != "exhaustive")
    throw argument_error("use exhaustive mode for the two-element census");
  if (size == 3 && mode != "search")
    throw argument_error("the three-element census only runs in search mode");

  int n = size;
  auto perms = all_permutations(n);
  size_t cube = ipow(n, 3);
  // Free (non-diagonal) positions of an idempotent ternary table.
  std::vector<size_t> free_pos;
  std::vector<Element> fixed(cube, -1);
  {
    std::vector<Element> t(3);
    for (size_t idx = 0; idx < cube; ++idx) {
      tuple_decode(idx, n, 3, t.data());
      if (t[0] == t[1] && t[1] == t[2]) fixed[idx] = t[0];
      else free_pos.push_back(idx);
    }
  }
  size_t total = ipow(n, free_pos.size());

  size_t start_counter = 0;
  std::set<std::vector<Table>> term_keys;
  std::set<CanonicalForm> forms;
  if (!checkpoint_path.empty()) {
    std::ifstream in(checkpoint_path);
    if (in) {
      json j;
      in >> j;
      if (j.value("size", 0) != size)
        throw argument_error("checkpoint domain size does not match");
      start_counter = j.value("next", (size_t)0);
      for (const auto& fj : j.value("forms", json::array())) {
        CanonicalForm f;
        for (const auto& tj : fj.at("key")) {
          Table t;
          for (const auto& v : tj) t.push_back(v.get<uint8_t>());
          f.key.push_back(std::move(t));
        }
        for (const auto& v : fj.at("representative")) f.representative.push_back(v.get<uint8_t>());
        forms.insert(f);
      }
      for (const auto& kj : j.value("term_keys", json::array())) {
        std::vector<Table> key;
        for (const auto& tj : kj) {
          Table t;
          for (const auto& v : tj) t.push_back(v.get<uint8_t>());
          key.push_back(std::move(t));
        }
        term_keys.insert(key);
      }
    }
  }

  size_t counter = start_counter;
  size_t inspected = 0;
  for (; counter < total; ++counter) {
    if (limit && inspected >= limit) break;
    Table t = Table(cube);
    size_t rest = counter;
    for (size_t i = 0; i < cube; ++i)
      if (fixed[i] >= 0) t[i] = (uint8_t)fixed[i];
    for (size_t fi = free_pos.size(); fi-- > 0;) {
      t[free_pos[fi]] = (uint8_t)(rest % n);
      rest /= n;
    }
    // In search mode, permutation pruning: skip tables that are not the
    // least conjugate. Term-equivalence counting is recovered from the
    // permutation orbits of the canonical keys afterwards.
    if (mode == "search" && !perm_canonical(t, n, perms)) continue;
    ++inspected;
    Algebra cand(n, {{"g", 3, t}}, "", false);
    if (!is_taylor(cand).verdict) continue;
    if (!is_minimal_taylor(cand).minimal) continue;
    term_keys.insert(ternary_clone_key(cand));
    forms.insert(canonicalize(cand));
  }
  res.scanned = counter - start_counter;
  res.complete = (counter == total);
  res.forms.assign(forms.begin(), forms.end());
  if (mode == "exhaustive") {
    res.clones_up_to_term_equivalence = term_keys.size();
  } else {
    size_t count = 0;
    for (const auto& f : forms) {
      std::set<std::vector<Table>> orbit;
      for (const auto& p : perms) {
        std::vector<Table> key;
        for (const auto& t : f.key) key.push_back(conjugate(t, n, 3, p));
        std::sort(key.begin(), key.end());
        orbit.insert(std::move(key));
      }
      count += orbit.size();
    }
    res.clones_up_to_term_equivalence = count;
  }

  if (!checkpoint_path.empty()) {
    json j;
    j["size"] = size;
    j["next"] = counter;
    j["complete"] = res.complete;
    j["forms"] = json::array();
    for (const auto& f : forms) {
      json fj;
      fj["key"] = json::array();
      for (const auto& t : f.key) {
        json tj = json::array();
        for (uint8_t v : t) tj.push_back((int)v);
        fj["key"].push_back(tj);
      }
      fj["representative"] = json::array();
      for (uint8_t v : f.representative) fj["representative"].push_back((int)v);
      j["forms"].push_back(fj);
    }
    j["term_keys"] = json::array();
    for (const auto& key : term_keys) {
      json kj = json::array();
      for (const auto& t : key) {
        json tj = json::array();
        for (uint8_t v : t) tj.push_back((int)v);
        kj.push_back(tj);
      }
      j["term_keys"].push_back(kj);
    }
    std::ofstream outfile(checkpoint_path);
    outfile << j.dump(0) << "\n";
  }
  return res;
}

}  // namespace taylorlab
