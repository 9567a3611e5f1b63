#include "taylorlab/term.hpp"

#include <unordered_map>
#include <unordered_set>

namespace taylorlab {

Term Term::projection(int coordinate, int arity) {
  if (coordinate < 0 || coordinate >= arity)
    throw argument_error("projection coordinate out of range");
  Term t;
  auto node = std::make_shared<Node>();
  node->proj = coordinate;
  t.root_ = node;
  t.arity_ = arity;
  return t;
}

Term Term::from_root(std::shared_ptr<const Node> root, int arity) {
  if (!root) throw argument_error("from_root: null node");
  Term t;
  t.root_ = std::move(root);
  t.arity_ = arity;
  return t;
}

Term Term::apply(int op_index, std::vector<Term> children) {
  if (children.empty()) throw argument_error("term application needs children");
  Term t;
  auto node = std::make_shared<Node>();
  node->op_index = op_index;
  t.arity_ = children[0].arity_;
  for (auto& c : children) {
    if (!c.valid() || c.arity_ != t.arity_)
      throw argument_error("term children must share one arity");
    node->children.push_back(c.root_);
  }
  t.root_ = node;
  return t;
}

namespace {

// Evaluate a whole column (all inputs at once) with per-node memoization.
const Table& eval_column(const Algebra& alg, const Term::Node* node, int arity,
                         std::unordered_map<const Term::Node*, Table>& memo) {
  auto it = memo.find(node);
  if (it != memo.end()) return it->second;
  size_t cube = ipow(alg.size(), arity);
  Table col(cube);
  if (node->op_index < 0) {
    std::vector<Element> t(arity);
    for (size_t idx = 0; idx < cube; ++idx) {
      tuple_decode(idx, alg.size(), arity, t.data());
      col[idx] = (uint8_t)t[node->proj];
    }
  } else {
    const auto& f = alg.op(node->op_index);
    if ((int)node->children.size() != f.arity)
      throw argument_error("term child count does not match arity of " + f.name);
    std::vector<const Table*> kids;
    for (const auto& c : node->children) kids.push_back(&eval_column(alg, c.get(), arity, memo));
    for (size_t idx = 0; idx < cube; ++idx) {
      Element a[16];
      for (size_t j = 0; j < kids.size(); ++j) a[j] = (*kids[j])[idx];
      col[idx] = (uint8_t)f.apply(a, alg.size());
    }
  }
  return memo.emplace(node, std::move(col)).first->second;
}

}  // namespace

Table Term::table(const Algebra& alg) const {
  if (!valid()) throw argument_error("empty term");
  std::unordered_map<const Node*, Table> memo;
  return eval_column(alg, root_.get(), arity_, memo);
}

Element Term::eval(const Algebra& alg, const std::vector<Element>& args) const {
  if (!valid()) throw argument_error("empty term");
  if ((int)args.size() != arity_) throw argument_error("term arity mismatch");
  // Single-point evaluation via a small recursive walk with memo.
  std::unordered_map<const Node*, Element> memo;
  std::function<Element(const Node*)> go = [&](const Node* node) -> Element {
    auto it = memo.find(node);
    if (it != memo.end()) return it->second;
    Element v;
    if (node->op_index < 0) {
      v = args[node->proj];
    } else {
      Element a[16];
      for (size_t j = 0; j < node->children.size(); ++j) a[j] = go(node->children[j].get());
      v = alg.op(node->op_index).apply(a, alg.size());
    }
    memo[node] = v;
    return v;
  };
  return go(root_.get());
}

static std::string var_name(int i) {
  static const char* names[] = {"x", "y", "z", "w"};
  if (i < 4) return names[i];
  return "x" + std::to_string(i + 1);
}

namespace {
void print_node(const Algebra& alg, const Term::Node* node, std::string& out, size_t max_len) {
  if (out.size() > max_len) return;
  if (node->op_index < 0) {
    out += var_name(node->proj);
    return;
  }
  out += "(";
  out += alg.op(node->op_index).name;
  for (const auto& c : node->children) {
    out += " ";
    print_node(alg, c.get(), out, max_len);
    if (out.size() > max_len) {
      out += " ...";
      break;
    }
  }
  out += ")";
}
}  // namespace

std::string Term::to_string(const Algebra& alg, size_t max_len) const {
  if (!valid()) return "<none>";
  std::string out;
  print_node(alg, root_.get(), out, max_len);
  return out;
}

size_t Term::node_count() const {
  if (!valid()) return 0;
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack = {root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return seen.size();
}

}  // namespace taylorlab
