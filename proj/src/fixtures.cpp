#include "taylorlab/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "taylorlab/absorption.hpp"
#include "taylorlab/classify.hpp"
#include "taylorlab/edges.hpp"
#include "taylorlab/subuniverse.hpp"

namespace taylorlab {

namespace {

Table ternary_table(int n, const std::function<Element(Element, Element, Element)>& f) {
  Table t(ipow(n, 3));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) t[((size_t)x * n + y) * n + z] = (uint8_t)f(x, y, z);
  return t;
}

Table binary_table(int n, const std::function<Element(Element, Element)>& f) {
  Table t(ipow(n, 2));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[(size_t)x * n + y] = (uint8_t)f(x, y);
  return t;
}

}  // namespace

Algebra boolean_join() { return Algebra(2, {{"join", 2, {0, 1, 1, 1}}}, "boolean_join"); }
Algebra boolean_meet() { return Algebra(2, {{"meet", 2, {0, 0, 0, 1}}}, "boolean_meet"); }

Algebra boolean_majority() {
  return Algebra(2, {{"maj", 3, {0, 0, 0, 1, 0, 1, 1, 1}}}, "boolean_majority");
}

Algebra boolean_minority() {
  return Algebra(2, {{"min", 3, {0, 1, 1, 0, 1, 0, 0, 1}}}, "boolean_minority");
}

Algebra rps() {
  return Algebra(3, {{"winner", 2, {0, 1, 0, 1, 1, 2, 0, 2, 2}}}, "rps");
}

Algebra z3_affine() {
  return Algebra(3, {{"p", 3, ternary_table(3, [](Element x, Element y, Element z) {
                        return ((x - y + z) % 3 + 3) % 3;
                      })}},
                 "z3_affine");
}

namespace {
Element majority_or(Element x, Element y, Element z, Element fallback) {
  if (x == y || x == z) return x;
  if (y == z) return y;
  return fallback;
}
}  // namespace

Algebra maj_first() {
  return Algebra(3, {{"m", 3, ternary_table(3, [](Element x, Element y, Element z) {
                        return majority_or(x, y, z, x);
                      })}},
                 "maj_first");
}

Algebra maj_two() {
  return Algebra(3, {{"m", 3, ternary_table(3, [](Element x, Element y, Element z) {
                        return majority_or(x, y, z, 2);
                      })}},
                 "maj_two");
}

Algebra noez_majority() {
  // Symmetric ternary g on {0,1,2,3}: g(a,a,a+1) = a, g(a,a,a+2) =
  // g(a,a,a+3) = a+2, and g(a,b,c) = d-1 on distinct triples, where d is the
  // missing element (arithmetic mod 4).
  auto g = [](Element x, Element y, Element z) -> Element {
    if (x == y && y == z) return x;
    Element a = -1, b = -1;  // repeated, single
    if (x == y) a = x, b = z;
    else if (x == z) a = x, b = y;
    else if (y == z) a = y, b = x;
    if (a >= 0) {
      int diff = ((b - a) % 4 + 4) % 4;
      return diff == 1 ? a : (a + 2) % 4;
    }
    int d = 6 - x - y - z;
    return (d + 3) % 4;
  };
  return Algebra(4, {{"g", 3, ternary_table(4, g)}}, "noez_majority");
}

Algebra noez_abelian() {
  // Mal'cev p on {0,1,2,3} commuting with the swaps (0 2) and (1 3);
  // p(.,0,.) is the cyclic group with identity 0, p(.,1,.) the Klein group
  // with identity 1, and the other two slices follow by equivariance.
  static const int plus1[4][4] = {{1, 0, 3, 2}, {0, 1, 2, 3}, {3, 2, 1, 0}, {2, 3, 0, 1}};
  auto sigma = [](Element x) { return (Element)((x == 0) ? 2 : (x == 2) ? 0 : x); };
  auto tau = [](Element x) { return (Element)((x == 1) ? 3 : (x == 3) ? 1 : x); };
  auto p = [&](Element x, Element y, Element z) -> Element {
    switch (y) {
      case 0: return (x + z) % 4;
      case 1: return plus1[x][z];
      case 2: return sigma((sigma(x) + sigma(z)) % 4);
      default: return tau(plus1[tau(x)][tau(z)]);
    }
  };
  return Algebra(4, {{"p", 3, ternary_table(4, p)}}, "noez_abelian");
}

Algebra star_algebra() {
  // {0,1,2,*} with * encoded as 3.
  static const int dot[4][4] = {{0, 2, 1, 3}, {2, 1, 0, 2}, {1, 0, 2, 1}, {3, 2, 1, 3}};
  return Algebra(4, {{"dot", 2, binary_table(4, [](Element x, Element y) {
                        return dot[x][y];
                      })}},
                 "star");
}

Algebra boolean_join_with_minority() {
  return Algebra(2,
                 {{"join", 2, {0, 1, 1, 1}}, {"min", 3, {0, 1, 1, 0, 1, 0, 0, 1}}},
                 "boolean_join_with_minority");
}

Algebra boolean_projection_algebra() {
  return Algebra(2, {{"p1", 2, {0, 0, 1, 1}}}, "boolean_projections");
}

Algebra boolean_x_or_yz() {
  return Algebra(2, {{"f", 3, {0, 0, 0, 1, 1, 1, 1, 1}}}, "boolean_x_or_yz");
}

Term parse_term(const Algebra& alg, const std::string& text, int arity) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  };
  std::function<Term()> parse = [&]() -> Term {
    skip();
    if (pos >= text.size()) throw argument_error("term: unexpected end");
    if (text[pos] == '(') {
      ++pos;
      skip();
      size_t start = pos;
      while (pos < text.size() && !std::isspace((unsigned char)text[pos]) && text[pos] != ')')
        ++pos;
      std::string opname = text.substr(start, pos - start);
      int op_index = -1;
      for (size_t i = 0; i < alg.num_ops(); ++i)
        if (alg.op(i).name == opname) op_index = (int)i;
      if (op_index < 0) throw argument_error("term: unknown operation " + opname);
      std::vector<Term> kids;
      skip();
      while (pos < text.size() && text[pos] != ')') {
        kids.push_back(parse());
        skip();
      }
      if (pos >= text.size()) throw argument_error("term: missing ')'");
      ++pos;
      return Term::apply(op_index, std::move(kids));
    }
    size_t start = pos;
    while (pos < text.size() && !std::isspace((unsigned char)text[pos]) && text[pos] != ')') ++pos;
    std::string var = text.substr(start, pos - start);
    static const std::vector<std::string> names = {"x", "y", "z", "w"};
    for (size_t i = 0; i < names.size(); ++i)
      if (var == names[i]) return Term::projection((int)i, arity);
    if (var.size() > 1 && var[0] == 'x') return Term::projection(std::stoi(var.substr(1)) - 1, arity);
    throw argument_error("term: unknown variable " + var);
  };
  Term t = parse();
  skip();
  if (pos != text.size()) throw argument_error("term: trailing input");
  return t;
}

namespace {

std::vector<Element> set_from_json(const json& j) {
  std::vector<Element> out;
  for (const auto& v : j) out.push_back(v.get<Element>());
  return out;
}

Partition partition_from_blocks(int n, const json& blocks) {
  std::vector<int> raw(n, -1);
  int bi = 0;
  for (const auto& blk : blocks) {
    for (const auto& v : blk) raw[v.get<int>()] = bi;
    ++bi;
  }
  return Partition::from_block_of(n, raw);
}

EdgeType edge_type_from_string(const std::string& s) {
  if (s == "semilattice") return EdgeType::semilattice;
  if (s == "majority") return EdgeType::majority;
  if (s == "abelian") return EdgeType::abelian;
  throw argument_error("unknown edge type " + s);
}

std::string describe_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<FixtureCheckResult> run_manifest(const Algebra& alg, const json& expect) {
  std::vector<FixtureCheckResult> out;
  auto record = [&](const std::string& claim, bool pass, const std::string& detail = "") {
    out.push_back({claim, pass, detail});
  };

  for (const auto& c : expect.at("claims")) {
    std::string kind = c.at("check").get<std::string>();
    std::ostringstream label;
    label << kind;
    try {
      if (kind == "taylor") {
        bool got = is_taylor(alg).verdict;
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "minimal_taylor") {
        bool got = is_taylor(alg).verdict && is_minimal_taylor(alg).minimal;
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "simple") {
        bool got = is_simple(alg);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "four_types") {
        auto rep = four_types(alg);
        std::string got(1, rep.primary_case);
        record(label.str(), got == c.at("expect").get<std::string>(), "got " + got);
      } else if (kind == "principal_congruence") {
        Element a = c.at("a").get<Element>(), b = c.at("b").get<Element>();
        label << "(" << (int)a << "," << (int)b << ")";
        auto cg = principal_congruence(alg, full_domain(alg.size()), a, b);
        auto want = partition_from_blocks(alg.size(), c.at("blocks"));
        record(label.str(), cg == want);
      } else if (kind == "unique_maximal_congruence") {
        auto maxc = maximal_congruences(alg, full_domain(alg.size()));
        auto want = partition_from_blocks(alg.size(), c.at("blocks"));
        record(label.str(), maxc.size() == 1 && maxc[0] == want,
               "maximal congruences: " + std::to_string(maxc.size()));
      } else if (kind == "edge") {
        Element a = c.at("a").get<Element>(), b = c.at("b").get<Element>();
        EdgeType t = edge_type_from_string(c.at("type").get<std::string>());
        label << "(" << (int)a << "," << (int)b << "," << edge_type_name(t) << ")";
        bool want_minimal = c.value("minimal", false);
        bool got = false;
        for (const auto& w : classify_pair(alg, a, b))
          if (w.type == t && (!want_minimal || is_minimal_edge(alg, w))) got = true;
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "all_pairs_minimal_edges") {
        EdgeType t = edge_type_from_string(c.at("type").get<std::string>());
        bool all = true;
        for (Element a = 0; a < alg.size(); ++a)
          for (Element b = 0; b < alg.size(); ++b) {
            if (a == b) continue;
            bool found = false;
            for (const auto& w : classify_pair(alg, a, b))
              if (w.type == t && is_minimal_edge(alg, w)) found = true;
            if (!found) all = false;
          }
        record(label.str(), all);
      } else if (kind == "cross_block_minimal_edges") {
        auto part = partition_from_blocks(alg.size(), c.at("blocks"));
        EdgeType t = edge_type_from_string(c.at("type").get<std::string>());
        bool all = true;
        for (Element a = 0; a < alg.size(); ++a)
          for (Element b = 0; b < alg.size(); ++b) {
            if (a == b || part.same_block(a, b)) continue;
            bool found = false;
            for (const auto& w : classify_pair(alg, a, b))
              if (w.type == t && w.theta == part && is_minimal_edge(alg, w)) found = true;
            if (!found) all = false;
          }
        record(label.str(), all);
      } else if (kind == "n_absorbing") {
        auto b = set_from_json(c.at("set"));
        int n = c.at("n").get<int>();
        label << "(n=" << n << ")";
        bool got = is_n_absorbing(alg, b, n).has_value();
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "b_essential") {
        auto b = set_from_json(c.at("set"));
        int n = c.at("n").get<int>();
        label << "(n=" << n << ")";
        bool got = b_essential_criterion(alg, b, n);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "absorbing_witness_term") {
        auto b = set_from_json(c.at("set"));
        int n = c.at("n").get<int>();
        Term t = parse_term(alg, c.at("term").get<std::string>(), n);
        record(label.str(), table_absorbs(t.table(alg), n, alg.size(), b));
      } else if (kind == "min_taylor_2abs") {
        auto b = set_from_json(c.at("set"));
        bool got = min_taylor_2abs(alg, b);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "min_taylor_3abs") {
        auto b = set_from_json(c.at("set"));
        bool got = min_taylor_3abs(alg, b);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "stable_under") {
        auto b = set_from_json(c.at("set"));
        std::vector<EdgeType> types;
        for (const auto& tj : c.at("types")) types.push_back(edge_type_from_string(tj.get<std::string>()));
        bool got = stable_under(alg, b, types);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "s_closed") {
        auto b = set_from_json(c.at("set"));
        bool got = s_closed(alg, b);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "abelian") {
        bool got = is_abelian(alg);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else if (kind == "subalgebra_affine") {
        auto sub = set_from_json(c.at("set"));
        Algebra inner = alg.restrict_to(sub);
        auto st = is_abelian(inner) && is_taylor(inner).verdict ? affine_structure(inner)
                                                                : std::nullopt;
        bool ok = st.has_value();
        if (ok && c.contains("group")) {
          std::vector<std::pair<int, int>> want;
          for (const auto& g : c.at("group")) want.push_back({g[0].get<int>(), g[1].get<int>()});
          ok = st->decomposition == want;
        }
        record(label.str(), ok);
      } else if (kind == "quotient_affine") {
        auto part = partition_from_blocks(alg.size(), c.at("blocks"));
        bool ok = is_congruence(alg, part);
        if (ok) {
          Algebra q = quotient(alg, part);
          auto st = is_abelian(q) && is_taylor(q).verdict ? affine_structure(q) : std::nullopt;
          ok = st.has_value();
          if (ok && c.contains("group")) {
            std::vector<std::pair<int, int>> want;
            for (const auto& g : c.at("group")) want.push_back({g[0].get<int>(), g[1].get<int>()});
            ok = st->decomposition == want;
          }
        }
        record(label.str(), ok);
      } else if (kind == "quotient_majority_action") {
        auto part = partition_from_blocks(alg.size(), c.at("blocks"));
        bool ok = is_congruence(alg, part) && part.num_blocks() == 2;
        if (ok) {
          Algebra q = quotient(alg, part);
          ok = find_term(q, IdentitySpec::majority()).has_value();
        }
        record(label.str(), ok);
      } else if (kind == "no_minimal_abelian_edge_from") {
        Element from = c.at("from").get<Element>();
        bool found = false;
        for (Element b = 0; b < alg.size(); ++b) {
          if (b == from) continue;
          for (const auto& w : classify_pair(alg, from, b))
            if (w.type == EdgeType::abelian && is_minimal_edge(alg, w)) found = true;
        }
        record(label.str(), !found);
      } else if (kind == "absorbing_verdict") {
        auto b = set_from_json(c.at("set"));
        auto rep = absorbing_report(alg, b);
        std::string got = rep.verdict == AbsorbingVerdict::yes ? "yes"
                          : rep.verdict == AbsorbingVerdict::no ? "no"
                                                                : "unknown";
        record(label.str(), got == c.at("expect").get<std::string>(), "got " + got);
      } else if (kind == "omitting_flag") {
        auto rep = omitting_types(alg);
        std::string flag = c.at("flag").get<std::string>();
        label << "(" << flag << ")";
        bool got = rep.flag(flag);
        record(label.str(), got == c.at("expect").get<bool>(), "got " + describe_bool(got));
      } else {
        record(label.str(), false, "unknown check kind");
      }
    } catch (const std::exception& e) {
      record(label.str(), false, std::string("exception: ") + e.what());
    }
  }
  return out;
}

namespace {

json claims(std::initializer_list<json> list) {
  json j;
  j["claims"] = json::array();
  for (const auto& c : list) j["claims"].push_back(c);
  return j;
}

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> out;

  out.push_back({"boolean_join", boolean_join(),
                 claims({{{"check", "taylor"}, {"expect", true}},
                         {{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "a"}},
                         {{"check", "min_taylor_2abs"}, {"set", {1}}, {"expect", true}},
                         {{"check", "edge"}, {"a", 0}, {"b", 1}, {"type", "semilattice"},
                          {"minimal", true}, {"expect", true}},
                         {{"check", "edge"}, {"a", 1}, {"b", 0}, {"type", "semilattice"},
                          {"expect", false}}})});
  out.push_back({"boolean_meet", boolean_meet(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "a"}}})});
  out.push_back({"boolean_majority", boolean_majority(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "b"}},
                         {{"check", "min_taylor_3abs"}, {"set", {0}}, {"expect", true}},
                         {{"check", "min_taylor_2abs"}, {"set", {0}}, {"expect", false}},
                         {{"check", "omitting_flag"}, {"flag", "as_free"}, {"expect", true}}})});
  out.push_back({"boolean_minority", boolean_minority(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "c"}},
                         {{"check", "omitting_flag"}, {"flag", "sm_free"}, {"expect", true}}})});
  out.push_back({"rps", rps(),
                 claims({{{"check", "taylor"}, {"expect", true}},
                         {{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "simple"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "d"}}})});
  out.push_back({"z3_affine", z3_affine(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "abelian"}, {"expect", true}},
                         {{"check", "four_types"}, {"expect", "c"}},
                         {{"check", "omitting_flag"}, {"flag", "sm_free"}, {"expect", true}}})});
  out.push_back(
      {"maj_first", maj_first(),
       claims({{{"check", "minimal_taylor"}, {"expect", true}},
               {{"check", "absorbing_witness_term"}, {"set", {0, 1}}, {"n", 4},
                {"term", "(m (m (m x y z) y w) z w)"}},
               {{"check", "n_absorbing"}, {"set", {0, 1}}, {"n", 3}, {"expect", false}},
               {{"check", "min_taylor_3abs"}, {"set", {0, 1}}, {"expect", false}},
               {{"check", "absorbing_verdict"}, {"set", {0, 1}}, {"expect", "yes"}}})});
  out.push_back({"maj_two", maj_two(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "all_pairs_minimal_edges"}, {"type", "majority"}},
                         {{"check", "absorbing_verdict"}, {"set", {0, 1}}, {"expect", "unknown"}},
                         {{"check", "omitting_flag"}, {"flag", "as_free"}, {"expect", true}}})});
  out.push_back({"noez_majority", noez_majority(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "principal_congruence"}, {"a", 0}, {"b", 2},
                          {"blocks", {{0, 2}, {1, 3}}}},
                         {{"check", "cross_block_minimal_edges"},
                          {"blocks", {{0, 2}, {1, 3}}},
                          {"type", "majority"}},
                         {{"check", "quotient_majority_action"}, {"blocks", {{0, 2}, {1, 3}}}}})});
  out.push_back({"noez_abelian", noez_abelian(),
                 claims({{{"check", "minimal_taylor"}, {"expect", true}},
                         {{"check", "abelian"}, {"expect", false}},
                         {{"check", "unique_maximal_congruence"}, {"blocks", {{0, 2}, {1, 3}}}},
                         {{"check", "cross_block_minimal_edges"},
                          {"blocks", {{0, 2}, {1, 3}}},
                          {"type", "abelian"}},
                         {{"check", "quotient_affine"}, {"blocks", {{0, 2}, {1, 3}}},
                          {"group", {{2, 1}}}}})});
  out.push_back(
      {"star", star_algebra(),
       claims({{{"check", "minimal_taylor"}, {"expect", true}},
               {{"check", "edge"}, {"a", 0}, {"b", 3}, {"type", "semilattice"},
                {"minimal", true}, {"expect", true}},
               {{"check", "subalgebra_affine"}, {"set", {0, 1, 2}}, {"group", {{3, 1}}}},
               {{"check", "quotient_affine"}, {"blocks", {{0, 3}, {1}, {2}}},
                {"group", {{3, 1}}}},
               {{"check", "stable_under"}, {"set", {3}},
                {"types", {"semilattice", "majority"}}, {"expect", true}},
               {{"check", "s_closed"}, {"set", {3}}, {"expect", true}},
               {{"check", "no_minimal_abelian_edge_from"}, {"from", 3}},
               {{"check", "n_absorbing"}, {"set", {3}}, {"n", 2}, {"expect", false}},
               {{"check", "n_absorbing"}, {"set", {3}}, {"n", 3}, {"expect", false}},
               {{"check", "b_essential"}, {"set", {3}}, {"n", 4}, {"expect", false}},
               {{"check", "absorbing_verdict"}, {"set", {3}}, {"expect", "no"}}})});
  out.push_back({"boolean_join_with_minority", boolean_join_with_minority(),
                 claims({{{"check", "taylor"}, {"expect", true}},
                         {{"check", "minimal_taylor"}, {"expect", false}}})});
  out.push_back({"boolean_projections", boolean_projection_algebra(),
                 claims({{{"check", "taylor"}, {"expect", false}}})});
  out.push_back({"boolean_x_or_yz", boolean_x_or_yz(),
                 claims({{{"check", "taylor"}, {"expect", true}},
                         {{"check", "minimal_taylor"}, {"expect", false}}})});
  return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = build_fixtures();
  return all;
}

const Fixture& fixture(const std::string& id) {
  for (const auto& f : fixtures())
    if (f.id == id) return f;
  throw argument_error("unknown fixture " + id);
}

std::vector<std::string> minimal_taylor_corpus_ids() {
  return {"boolean_join", "boolean_meet", "boolean_majority", "boolean_minority",
          "rps",          "z3_affine",    "maj_first",        "maj_two",
          "noez_majority", "noez_abelian", "star"};
}

}  // namespace taylorlab
