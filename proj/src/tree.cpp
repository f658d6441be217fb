#include "ballotree/tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ballotree {

namespace {

struct Node {
  std::uint32_t left = 0;   // 0 marks a leaf (node ids start at 1)
  std::uint32_t right = 0;
  std::int32_t cand = -1;   // leaf candidate, or -1
  std::uint32_t sym = 0;    // leaf symbol id + 1, or 0
  std::uint32_t depth = 0;
  BigInt leaves;
};

struct U64Hash {
  std::size_t operator()(std::uint64_t x) const {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return std::size_t(x ^ (x >> 31));
  }
};

// Process-wide canonicalization store. Append-only; a mutex guards every
// lookup/insert, and node storage is a deque so existing handles stay valid
// while other threads keep building.
class Arena {
 public:
  static Arena& instance() {
    static Arena arena;
    return arena;
  }

  std::uint32_t intern_leaf(const Label& l) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::uint64_t key;
    if (l.is_candidate()) {
      key = (std::uint64_t(std::uint32_t(l.candidate_index())) << 1) | 1;
    } else {
      key = std::uint64_t(symbol_id(l.variable_name())) << 1;
    }
    auto it = leaf_ids_.find(key);
    if (it != leaf_ids_.end()) return it->second;
    Node n;
    if (l.is_candidate())
      n.cand = l.candidate_index();
    else
      n.sym = symbol_id(l.variable_name()) + 1;
    n.depth = 0;
    n.leaves = 1;
    nodes_.push_back(std::move(n));
    std::uint32_t id = std::uint32_t(nodes_.size());  // ids are 1-based
    leaf_ids_.emplace(key, id);
    return id;
  }

  std::uint32_t intern_node(std::uint32_t left, std::uint32_t right) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::uint64_t key = (std::uint64_t(left) << 32) | right;
    auto it = node_ids_.find(key);
    if (it != node_ids_.end()) return it->second;
    const Node& l = nodes_[left - 1];
    const Node& r = nodes_[right - 1];
    Node n;
    n.left = left;
    n.right = right;
    n.depth = 1 + std::max(l.depth, r.depth);
    n.leaves = l.leaves + r.leaves;
    nodes_.push_back(std::move(n));
    std::uint32_t id = std::uint32_t(nodes_.size());
    node_ids_.emplace(key, id);
    return id;
  }

  const Node& node(std::uint32_t id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return nodes_[id - 1];
  }

  const std::string& symbol(std::uint32_t sym_plus_one) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return symbols_[sym_plus_one - 1];
  }

 private:
  std::uint32_t symbol_id(const std::string& name) {
    auto it = symbol_ids_.find(name);
    if (it != symbol_ids_.end()) return it->second;
    std::uint32_t id = std::uint32_t(symbols_.size());
    symbols_.push_back(name);
    symbol_ids_.emplace(name, id);
    return id;
  }

  mutable std::mutex mutex_;
  std::deque<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t, U64Hash> leaf_ids_;
  std::unordered_map<std::uint64_t, std::uint32_t, U64Hash> node_ids_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symbol_ids_;
};

const Node& deref(const VotingTree& t) {
  if (!t.valid()) throw domain_error("null voting tree handle");
  return Arena::instance().node(t.id());
}

}  // namespace

Label Label::candidate(Candidate c) {
  if (c < 0) throw domain_error("candidate labels must be nonnegative");
  Label l;
  l.candidate_ = c;
  return l;
}

Label Label::variable(std::string name) {
  if (name.empty()) throw domain_error("variable names must be nonempty");
  Label l;
  l.name_ = std::move(name);
  return l;
}

Candidate Label::candidate_index() const {
  if (!is_candidate()) throw domain_error("label is not a candidate");
  return candidate_;
}

const std::string& Label::variable_name() const {
  if (!is_variable()) throw domain_error("label is not a variable");
  return name_;
}

bool VotingTree::is_leaf() const { return deref(*this).left == 0; }

Label VotingTree::label() const {
  const Node& n = deref(*this);
  if (n.left != 0) throw domain_error("internal nodes carry no label");
  if (n.cand >= 0) return Label::candidate(n.cand);
  return Label::variable(Arena::instance().symbol(n.sym));
}

VotingTree VotingTree::left() const {
  const Node& n = deref(*this);
  if (n.left == 0) throw domain_error("leaf nodes have no children");
  return VotingTree(n.left);
}

VotingTree VotingTree::right() const {
  const Node& n = deref(*this);
  if (n.left == 0) throw domain_error("leaf nodes have no children");
  return VotingTree(n.right);
}

const BigInt& VotingTree::leaf_count() const { return deref(*this).leaves; }

int VotingTree::depth() const { return int(deref(*this).depth); }

std::size_t VotingTree::dag_size() const {
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{id()};
  deref(*this);  // validates the handle
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& n = Arena::instance().node(id);
    if (n.left != 0) {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return seen.size();
}

VotingTree leaf(const Label& l) {
  return VotingTree(Arena::instance().intern_leaf(l));
}

VotingTree leaf(Candidate c) { return leaf(Label::candidate(c)); }

VotingTree var_leaf(const std::string& name) {
  return leaf(Label::variable(name));
}

VotingTree node(VotingTree left, VotingTree right) {
  if (!left.valid() || !right.valid())
    throw domain_error("null voting tree handle");
  return VotingTree(Arena::instance().intern_node(left.id(), right.id()));
}

namespace {

VotingTree build_complete(std::span<const Label> labels) {
  if (labels.size() == 1) return leaf(labels[0]);
  std::size_t half = labels.size() / 2;
  return node(build_complete(labels.subspan(0, half)),
              build_complete(labels.subspan(half)));
}

}  // namespace

VotingTree from_tuple(std::span<const Label> labels) {
  std::size_t m = labels.size();
  if (m == 0 || (m & (m - 1)) != 0)
    throw shape_error("tuple length must be a power of two, got " +
                      std::to_string(m));
  return build_complete(labels);
}

VotingTree from_tuple(std::span<const Candidate> candidates) {
  std::vector<Label> labels;
  labels.reserve(candidates.size());
  for (Candidate c : candidates) labels.push_back(Label::candidate(c));
  return from_tuple(labels);
}

VotingTree substitute(VotingTree t, const Label& target,
                      VotingTree replacement) {
  if (!replacement.valid()) throw domain_error("null voting tree handle");
  std::unordered_map<std::uint32_t, VotingTree> memo;
  std::function<VotingTree(VotingTree)> walk = [&](VotingTree cur) {
    auto it = memo.find(cur.id());
    if (it != memo.end()) return it->second;
    VotingTree result;
    if (cur.is_leaf()) {
      result = cur.label() == target ? replacement : cur;
    } else {
      result = node(walk(cur.left()), walk(cur.right()));
    }
    memo.emplace(cur.id(), result);
    return result;
  };
  return walk(t);
}

VotingTree relabel(VotingTree t, std::span<const Candidate> mapping) {
  std::unordered_map<std::uint32_t, VotingTree> memo;
  std::function<VotingTree(VotingTree)> walk = [&](VotingTree cur) {
    auto it = memo.find(cur.id());
    if (it != memo.end()) return it->second;
    VotingTree result;
    if (cur.is_leaf()) {
      Label l = cur.label();
      if (l.is_candidate()) {
        Candidate c = l.candidate_index();
        if (std::size_t(c) >= mapping.size())
          throw domain_error("relabel map does not cover candidate " +
                             std::to_string(c));
        result = leaf(mapping[c]);
      } else {
        result = cur;
      }
    } else {
      result = node(walk(cur.left()), walk(cur.right()));
    }
    memo.emplace(cur.id(), result);
    return result;
  };
  return walk(t);
}

TreeStats stats(VotingTree t) {
  TreeStats s;
  s.leaves = t.leaf_count();
  s.depth = t.depth();
  s.dag_nodes = t.dag_size();
  return s;
}

CompiledTree::CompiledTree(VotingTree t) {
  if (!t.valid()) throw domain_error("null voting tree handle");
  std::unordered_map<std::uint32_t, std::int32_t> slot_of;
  std::unordered_map<std::string, std::int32_t> var_slot;
  // iterative postorder over unique nodes
  struct Frame {
    VotingTree tree;
    bool expanded;
  };
  std::vector<Frame> stack{{t, false}};
  while (!stack.empty()) {
    Frame frame = stack.back();
    stack.pop_back();
    if (slot_of.count(frame.tree.id())) continue;
    if (frame.tree.is_leaf()) {
      Label l = frame.tree.label();
      Step step;
      if (l.is_candidate()) {
        step.op = Op::constant;
        step.a = l.candidate_index();
        max_candidate_ = std::max(max_candidate_, l.candidate_index());
      } else {
        step.op = Op::variable;
        auto [it, fresh] =
            var_slot.try_emplace(l.variable_name(), std::int32_t(variables_.size()));
        if (fresh) variables_.push_back(l.variable_name());
        step.a = it->second;
      }
      slot_of.emplace(frame.tree.id(), std::int32_t(steps_.size()));
      steps_.push_back(step);
      continue;
    }
    if (!frame.expanded) {
      stack.push_back({frame.tree, true});
      // push right first so the left child is compiled first
      if (!slot_of.count(frame.tree.right().id()))
        stack.push_back({frame.tree.right(), false});
      if (!slot_of.count(frame.tree.left().id()))
        stack.push_back({frame.tree.left(), false});
      continue;
    }
    Step step;
    step.op = Op::match;
    step.a = slot_of.at(frame.tree.left().id());
    step.b = slot_of.at(frame.tree.right().id());
    slot_of.emplace(frame.tree.id(), std::int32_t(steps_.size()));
    steps_.push_back(step);
  }
}

Candidate CompiledTree::run(const Tournament& t,
                            std::span<const Candidate> var_values,
                            std::vector<Candidate>& scratch) const {
  if (var_values.size() != variables_.size())
    throw binding_error("expected " + std::to_string(variables_.size()) +
                        " variable values, got " +
                        std::to_string(var_values.size()));
  if (max_candidate_ >= t.size())
    throw domain_error("tree mentions candidate " +
                       std::to_string(max_candidate_) +
                       " but the tournament has n=" + std::to_string(t.size()));
  for (Candidate v : var_values)
    if (v < 0 || v >= t.size())
      throw domain_error("bound value " + std::to_string(v) +
                         " out of range for n=" + std::to_string(t.size()));
  scratch.resize(steps_.size());
  Candidate* values = scratch.data();
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& s = steps_[i];
    switch (s.op) {
      case Op::constant:
        values[i] = s.a;
        break;
      case Op::variable:
        values[i] = var_values[s.a];
        break;
      case Op::match: {
        Candidate a = values[s.a];
        Candidate b = values[s.b];
        values[i] = (a == b || t.beats_unchecked(a, b)) ? a : b;
        break;
      }
    }
  }
  return values[steps_.size() - 1];
}

Candidate CompiledTree::run(const Tournament& t) const {
  std::vector<Candidate> scratch;
  return run(t, {}, scratch);
}

Candidate CompiledTree::run(const Tournament& t,
                            const Bindings& bindings) const {
  std::vector<Candidate> values = bind(bindings);
  std::vector<Candidate> scratch;
  return run(t, values, scratch);
}

std::vector<Candidate> CompiledTree::bind(const Bindings& bindings) const {
  std::vector<Candidate> values;
  values.reserve(variables_.size());
  for (const std::string& name : variables_) {
    auto it = bindings.find(name);
    if (it == bindings.end())
      throw binding_error("unbound variable '" + name + "'");
    values.push_back(it->second);
  }
  return values;
}

Candidate evaluate(VotingTree t, const Tournament& tournament,
                   const Bindings& bindings) {
  CompiledTree compiled(t);
  return compiled.run(tournament, bindings);
}

}  // namespace ballotree
