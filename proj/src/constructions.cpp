#include "ballotree/constructions.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

namespace ballotree {

VotingTree combine_heap(std::span<const VotingTree> items) {
  if (items.empty()) throw domain_error("cannot combine zero trees");
  // Heap numbering: nodes 1..2N-1, node h internal iff h < N; an in-order
  // walk hands the items to the leaves left to right.
  std::size_t n = items.size();
  std::size_t next = 0;
  std::function<VotingTree(std::size_t)> build =
      [&](std::size_t h) -> VotingTree {
    if (h >= n) return items[next++];
    VotingTree left = build(2 * h);
    VotingTree right = build(2 * h + 1);
    return node(left, right);
  };
  return build(1);
}

TreeCombiner random_combiner(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::span<const VotingTree> items) -> VotingTree {
    if (items.empty()) throw domain_error("cannot combine zero trees");
    std::function<VotingTree(std::span<const VotingTree>)> build =
        [&](std::span<const VotingTree> part) -> VotingTree {
      if (part.size() == 1) return part[0];
      std::size_t cut = 1 + (*rng)() % (part.size() - 1);
      VotingTree left = build(part.subspan(0, cut));
      VotingTree right = build(part.subspan(cut));
      return node(left, right);
    };
    return build(items);
  };
}

VotingTree lambda_of_trees(VotingTree principal,
                           std::span<const VotingTree> opponents,
                           const TreeCombiner& shape) {
  if (opponents.empty()) throw domain_error("opponent set must be nonempty");
  std::vector<VotingTree> pairs;
  pairs.reserve(opponents.size());
  for (VotingTree opp : opponents) pairs.push_back(node(principal, opp));
  return shape ? shape(pairs) : combine_heap(pairs);
}

VotingTree lambda_against(const Label& i, std::span<const Label> opponents,
                          const TreeCombiner& shape) {
  if (opponents.empty()) throw domain_error("opponent set must be nonempty");
  std::set<Label> distinct(opponents.begin(), opponents.end());
  if (distinct.size() != opponents.size())
    throw domain_error("opponent set has repeated members");
  if (distinct.count(i))
    throw domain_error("the principal cannot be its own opponent");
  std::vector<VotingTree> leaves;
  leaves.reserve(opponents.size());
  for (const Label& s : opponents) leaves.push_back(leaf(s));
  return lambda_of_trees(leaf(i), leaves, shape);
}

VotingTree lambda_against(Candidate i, std::span<const Candidate> opponents,
                          const TreeCombiner& shape) {
  std::vector<Label> labels;
  labels.reserve(opponents.size());
  for (Candidate s : opponents) labels.push_back(Label::candidate(s));
  return lambda_against(Label::candidate(i), labels, shape);
}

VotingTree baseline(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw shape_error("bracket size must be a power of two, got " +
                      std::to_string(n));
  std::vector<Candidate> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return from_tuple(std::span<const Candidate>(order));
}

int omega_candidate_count(int k) {
  if (k < 1) throw domain_error("guarantee level must be at least 1");
  return k * (k + 1) / 2 + 1;
}

int omega_level_for(int n) {
  if (n < 2)
    throw domain_error("need at least two candidates, got " +
                       std::to_string(n));
  int k = 1;
  while (omega_candidate_count(k + 1) <= n) ++k;
  return k;
}

namespace {

using LabelSet = std::vector<Candidate>;  // sorted ascending

// Distinct recursive images repeat across branches (the same label subset
// shows up under many parents), so construction is memoized per
// (level, label set); the node store then shares their structure.
using OmegaMemo = std::map<std::pair<int, LabelSet>, VotingTree>;

VotingTree omega_on(int k, const LabelSet& labels, OmegaMemo& memo) {
  auto key = std::make_pair(k, labels);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  VotingTree result;
  if (k == 1) {
    result = node(leaf(labels[0]), leaf(labels[1]));
  } else {
    int sub = omega_candidate_count(k - 1);
    const Candidate principal = labels[0];
    // lexicographic sub-subsets of the remaining labels
    std::vector<int> pick(sub);
    for (int i = 0; i < sub; ++i) pick[i] = i;
    int rest = int(labels.size()) - 1;
    std::vector<VotingTree> copies;
    LabelSet chosen(sub);
    for (;;) {
      for (int i = 0; i < sub; ++i) chosen[i] = labels[1 + pick[i]];
      copies.push_back(omega_on(k - 1, chosen, memo));
      // advance the combination
      int j = sub - 1;
      while (j >= 0 && pick[j] == rest - sub + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int i = j + 1; i < sub; ++i) pick[i] = pick[i - 1] + 1;
    }
    result = lambda_of_trees(leaf(principal), copies);
  }
  memo.emplace(std::move(key), result);
  return result;
}

}  // namespace

VotingTree omega(int k) {
  int n = omega_candidate_count(k);
  if (k > 5)
    throw scale_error("level " + std::to_string(k) +
                      " needs a shared DAG on the order of 10^8 nodes");
  LabelSet labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  OmegaMemo memo;
  return omega_on(k, labels, memo);
}

VotingTree omega_for_candidates(int n) { return omega(omega_level_for(n)); }

int phi_perm(int n, int i) {
  if (n < 2 || n % 2 != 0)
    throw domain_error("the interleaving permutation needs an even count");
  if (i < 1 || i > n)
    throw domain_error("position " + std::to_string(i) +
                       " outside 1.." + std::to_string(n));
  return i % 2 == 1 ? (i + 1) / 2 : n / 2 + i / 2;
}

VotingTree phi_tree(int n) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw shape_error("interleaving bracket needs a power of two of at "
                      "least 4 candidates, got " +
                      std::to_string(n));
  std::vector<Candidate> order;
  order.reserve(2 * n);
  for (int i = 1; i <= n; ++i) order.push_back(i - 1);
  for (int i = 1; i <= n; ++i) order.push_back(phi_perm(n, i) - 1);
  return from_tuple(std::span<const Candidate>(order));
}

namespace {

std::vector<Candidate> others(int n, Candidate i) {
  if (n < 3) throw domain_error("one-against-all trees need n >= 3");
  if (i < 0 || i >= n)
    throw domain_error("candidate " + std::to_string(i) +
                       " out of range for n=" + std::to_string(n));
  std::vector<Candidate> rest;
  rest.reserve(n - 1);
  for (Candidate s = 0; s < n; ++s)
    if (s != i) rest.push_back(s);
  return rest;
}

}  // namespace

VotingTree lambda_full(int n, Candidate i) {
  std::vector<Candidate> rest = others(n, i);
  return lambda_against(i, std::span<const Candidate>(rest));
}

VotingTree lambda_sq(int n, Candidate i) {
  // Replacing every leaf m of lambda_full(n, i) with lambda_full(n, m)
  // turns each pair (i, s) into the pair of trees (full_i, full_s); build
  // that directly, in the same bracket.
  std::vector<VotingTree> full(n);
  for (Candidate m = 0; m < n; ++m) full[m] = lambda_full(n, m);
  std::vector<Candidate> rest = others(n, i);
  std::vector<VotingTree> opponents;
  opponents.reserve(rest.size());
  for (Candidate s : rest) opponents.push_back(full[s]);
  return lambda_of_trees(full[i], opponents);
}

VotingTree psi(int n) {
  VotingTree shuffle = phi_tree(n);  // also validates n

  // First rotation stage around an open slot: the slot's eventual winner
  // meets every candidate, itself included, so every class stays on the
  // leaves no matter what fills the slot. A slot winner from A, B, C
  // leaves this stage in C, A, B.
  Label slot = Label::variable("x");
  std::vector<VotingTree> everyone;
  everyone.reserve(n);
  for (Candidate s = 0; s < n; ++s) everyone.push_back(leaf(s));
  VotingTree first = lambda_of_trees(leaf(slot), everyone);

  // Second stage: that winner meets the winner of every candidate's own
  // rotation tree, which together cover all three classes. The two stages
  // send a slot winner from A, B, C to B, C, A.
  std::vector<VotingTree> rotations;
  rotations.reserve(n);
  for (Candidate s = 0; s < n; ++s) rotations.push_back(lambda_full(n, s));
  VotingTree second = lambda_of_trees(first, rotations);

  // The interleaved bracket never yields a C member, and neither B nor C
  // maps to A, so alpha never wins the grafted tree.
  return substitute(second, slot, shuffle);
}

}  // namespace ballotree
