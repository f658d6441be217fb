#pragma once

#include <functional>
#include <span>

#include "ballotree/tree.hpp"

namespace ballotree {

/// Shape policy: folds a nonempty ordered list of subtrees into one tree.
/// The sequential-elimination results these shapes carry are shape
/// independent, so policies only decide the bracket layout.
using TreeCombiner = std::function<VotingTree(std::span<const VotingTree>)>;

/// Default policy: the left-complete (binary heap) bracket. For a power of
/// two this is the complete bracket of from_tuple.
VotingTree combine_heap(std::span<const VotingTree> items);

/// Random bracket layouts, for shape-independence tests. Stateful: each
/// call draws a fresh shape from the stream seeded here.
TreeCombiner random_combiner(std::uint64_t seed);

/// One pair node(principal, opponent) per opponent, folded by the shape
/// policy (null means combine_heap). Building block for every "one against
/// a set" construction below.
VotingTree lambda_of_trees(VotingTree principal,
                           std::span<const VotingTree> opponents,
                           const TreeCombiner& shape = nullptr);

/// The one-against-a-set tree: pairs (i, s) for each s in opponents.
/// Requires i not among the opponents, opponents nonempty and distinct.
/// Its winner is i exactly when i beats every opponent; otherwise the
/// winner is an opponent that beats i.
VotingTree lambda_against(const Label& i, std::span<const Label> opponents,
                          const TreeCombiner& shape = nullptr);
VotingTree lambda_against(Candidate i, std::span<const Candidate> opponents,
                          const TreeCombiner& shape = nullptr);

/// Complete bracket over candidates 0..n-1 in order; n a power of two.
VotingTree baseline(int n);

/// Candidate count k(k+1)/2 + 1 covered by guarantee level k.
int omega_candidate_count(int k);

/// Largest guarantee level whose candidate count fits within n (n >= 2).
int omega_level_for(int n);

/// The performance-guarantee family: omega(k) plays on k(k+1)/2 + 1
/// candidates and its winner always has out-degree at least k. Level 1 is
/// the single match (0 1); level k+1 pits candidate 0 against one
/// recursive copy per n_k-subset of the remaining candidates, in
/// lexicographic subset order, each copy relabeled onto its subset
/// order-preservingly. Levels above 5 are refused (the shared DAG would
/// need on the order of 10^8 nodes).
VotingTree omega(int k);

/// omega at the largest level whose candidate count is at most n; the
/// extra candidates never appear on a leaf, which leaves the guarantee
/// intact.
VotingTree omega_for_candidates(int n);

/// The interleaving permutation on 1..n (n even, 1-indexed): odd i maps to
/// (i+1)/2, even i maps to n/2 + i/2.
int phi_perm(int n, int i);

/// Bracket over the 2n-tuple (1..n, phi(1)..phi(n)), shifted to 0-indexed
/// labels. n must be a power of two, at least 4.
VotingTree phi_tree(int n);

/// lambda_against(i, all other candidates below n), ascending opponents.
VotingTree lambda_full(int n, Candidate i);

/// lambda_full(n, i) with every leaf labeled m replaced by a shared copy
/// of lambda_full(n, m).
VotingTree lambda_sq(int n, Candidate i);

/// The manipulator-resistant tree: on every perfect manipulator tournament
/// its winner differs from alpha. Two chained rotation stages around an
/// open slot that meets all n candidates (so no class ever drops off the
/// leaves), with the slot then grafted with phi_tree(n). n a power of two,
/// at least 4.
VotingTree psi(int n);

}  // namespace ballotree
