#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ballotree/bigint.hpp"
#include "ballotree/errors.hpp"
#include "ballotree/tournament.hpp"

namespace ballotree {

/// A leaf label: either a concrete candidate index or a named variable.
class Label {
 public:
  static Label candidate(Candidate c);
  static Label variable(std::string name);

  bool is_candidate() const { return candidate_ >= 0; }
  bool is_variable() const { return candidate_ < 0; }
  Candidate candidate_index() const;
  const std::string& variable_name() const;

  bool operator==(const Label&) const = default;
  bool operator<(const Label& other) const {
    if (candidate_ != other.candidate_) return candidate_ < other.candidate_;
    return name_ < other.name_;
  }

 private:
  Candidate candidate_ = -1;
  std::string name_;
};

/// Handle into the shared node store. Voting trees are immutable and
/// canonicalized: building the same shape twice yields the same handle, so
/// structurally shared subtrees are represented once (the tree is a DAG).
/// Every internal node has exactly two children.
class VotingTree {
 public:
  VotingTree() = default;

  bool valid() const { return id_ != 0; }
  std::uint32_t id() const { return id_; }
  bool operator==(const VotingTree&) const = default;

  bool is_leaf() const;
  Label label() const;        // leaf nodes only
  VotingTree left() const;    // internal nodes only
  VotingTree right() const;
  const BigInt& leaf_count() const;  // expanded leaves under full sharing
  int depth() const;                 // a leaf has depth 0
  std::size_t dag_size() const;      // reachable unique nodes

 private:
  friend VotingTree leaf(const Label&);
  friend VotingTree node(VotingTree, VotingTree);
  explicit VotingTree(std::uint32_t id) : id_(id) {}

  std::uint32_t id_ = 0;
};

VotingTree leaf(const Label& l);
VotingTree leaf(Candidate c);
VotingTree var_leaf(const std::string& name);
VotingTree node(VotingTree left, VotingTree right);

/// Complete binary tree whose left-to-right leaves carry the given labels.
/// The length must be a power of two.
VotingTree from_tuple(std::span<const Label> labels);
VotingTree from_tuple(std::span<const Candidate> candidates);

using Bindings = std::map<std::string, Candidate>;

/// Replaces every leaf bearing `target` with `replacement`, preserving
/// structural sharing. Absent targets leave the tree unchanged.
VotingTree substitute(VotingTree t, const Label& target, VotingTree replacement);

/// Order-preserving candidate renaming: candidate c becomes mapping[c].
/// Every candidate appearing in the tree must be below mapping.size().
VotingTree relabel(VotingTree t, std::span<const Candidate> mapping);

struct TreeStats {
  BigInt leaves;
  int depth = 0;
  std::size_t dag_nodes = 0;
};

TreeStats stats(VotingTree t);

/// A tree flattened to a topological instruction list over its unique
/// nodes, so one evaluation computes every shared node exactly once.
/// Immutable after construction; run() is safe from many threads when each
/// caller passes its own scratch buffer.
class CompiledTree {
 public:
  explicit CompiledTree(VotingTree t);

  /// Variable names in first-appearance (left-to-right) order.
  const std::vector<std::string>& variables() const { return variables_; }
  int max_candidate() const { return max_candidate_; }
  std::size_t step_count() const { return steps_.size(); }

  /// var_values[i] binds variables()[i].
  Candidate run(const Tournament& t, std::span<const Candidate> var_values,
                std::vector<Candidate>& scratch) const;
  Candidate run(const Tournament& t) const;
  Candidate run(const Tournament& t, const Bindings& bindings) const;

  /// Translates named bindings into positional values for run().
  std::vector<Candidate> bind(const Bindings& bindings) const;

 private:
  enum class Op : std::uint8_t { constant, variable, match };
  struct Step {
    Op op;
    std::int32_t a = 0;  // constant value, variable slot, or left step
    std::int32_t b = 0;  // right step
  };

  std::vector<Step> steps_;
  std::vector<std::string> variables_;
  int max_candidate_ = -1;
};

/// Bottom-up match evaluation: each internal node is won by its left
/// child's winner i over the right child's winner j iff i == j or i beats
/// j. Candidate labels must be below t.size() and every variable bound.
Candidate evaluate(VotingTree t, const Tournament& tournament,
                   const Bindings& bindings = {});

}  // namespace ballotree
