#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ballotree/errors.hpp"

namespace ballotree {

using Candidate = int;

/// Number of unordered vertex pairs on n vertices, C(n,2).
constexpr std::uint64_t pair_count(int n) {
  return n < 2 ? 0 : std::uint64_t(n) * (std::uint64_t(n) - 1) / 2;
}

/// An orientation of the complete graph on n labeled vertices 0..n-1.
///
/// Storage is one bit per unordered pair {u,v} with u < v, in lexicographic
/// (u,v) order; a set bit means u beats v. The bitstring written by bits()
/// and to_text() follows the same order, first pair first.
class Tournament {
 public:
  explicit Tournament(int n);

  /// Builds from the canonical pair-order bitstring ('0'/'1' characters).
  static Tournament from_bits(int n, std::string_view bits);

  /// The index-th tournament in increasing bitstring order: bit j of the
  /// bitstring (pair j) is bit (m-1-j) of the index, m = C(n,2). Requires
  /// C(n,2) <= 63.
  static Tournament from_index(int n, std::uint64_t index);

  /// In-place variant of from_index for enumeration loops.
  void assign_index(std::uint64_t index);

  int size() const { return n_; }

  /// Match convention: true when u == v or the edge u -> v is present.
  bool beats(Candidate u, Candidate v) const;

  /// Number of vertices u != v with v -> u.
  int out_degree(Candidate v) const;

  int max_out_degree() const;

  /// All vertices of maximum out-degree, ascending.
  std::vector<Candidate> copeland_winners() const;

  std::string bits() const;
  std::uint64_t index() const;

  /// Text format: "n=<k>" line, then the bitstring line.
  std::string to_text() const;
  static Tournament parse(std::string_view text);

  /// Orients the pair {u,v} as u -> v (either order of arguments).
  void set_edge(Candidate u, Candidate v);

  bool operator==(const Tournament& other) const = default;

  // Fast path for evaluation loops; no range checks.
  bool beats_unchecked(int u, int v) const {
    if (u == v) return true;
    if (u < v) return get_bit(pair_index(u, v));
    return !get_bit(pair_index(v, u));
  }

  // Fast path companion to out_degree; no range checks.
  int out_degree_unchecked(int v) const {
    int d = 0;
    for (int u = 0; u < n_; ++u)
      if (u != v && beats_unchecked(v, u)) ++d;
    return d;
  }

 private:
  std::uint64_t pair_index(int u, int v) const {
    // lexicographic rank of (u,v), u < v
    return std::uint64_t(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
  }
  bool get_bit(std::uint64_t p) const {
    return (words_[p >> 6] >> (p & 63)) & 1;
  }
  void set_bit(std::uint64_t p, bool value) {
    std::uint64_t mask = std::uint64_t(1) << (p & 63);
    if (value)
      words_[p >> 6] |= mask;
    else
      words_[p >> 6] &= ~mask;
  }
  void check_candidate(Candidate c) const;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The two non-transitive tournaments on {0,1,2}. Clockwise is
/// 0 -> 1, 1 -> 2, 2 -> 0; counterclockwise is the reversal.
enum class Direction { clockwise, counterclockwise };

const Tournament& direction_tournament(Direction d);

/// A perfect manipulator tournament: {alpha} | B | C partitions the
/// vertices, alpha beats all of B, B beats all of C, C beats alpha.
/// Orientations inside B and inside C are free and stored as pair bits
/// over the sorted member lists (lexicographic pair order, bit set means
/// the lower-indexed member beats the higher).
struct PerfectManipulatorSpec {
  Candidate alpha = 0;
  std::vector<Candidate> members_b;  // sorted ascending
  std::vector<Candidate> members_c;  // sorted ascending
  std::vector<bool> inner_b;
  std::vector<bool> inner_c;

  int size() const {
    return 1 + int(members_b.size()) + int(members_c.size());
  }

  /// Throws domain_error unless {alpha} | B | C partitions 0..n-1 with
  /// B and C nonempty and the inner bit vectors sized C(|B|,2), C(|C|,2).
  void validate() const;

  /// "alpha=<v>; B=<list>; C=<list>; innerB=<bits>; innerC=<bits>"
  std::string to_text() const;
  static PerfectManipulatorSpec parse(std::string_view text);

  bool operator==(const PerfectManipulatorSpec&) const = default;
};

Tournament realize_pm(const PerfectManipulatorSpec& spec);

/// Allocation-free variant for enumeration loops; out must have size() == n.
void realize_pm_into(const PerfectManipulatorSpec& spec, Tournament& out);

/// Default vertex-count guard for exhaustive enumeration. 8 unless the
/// BALLOTREE_EXHAUSTIVE_LIMIT environment variable overrides it.
int exhaustive_limit();

/// 2^C(n,2); throws scale_error once the count no longer fits 63 bits.
std::uint64_t tournament_count(int n);

/// Range of all tournaments on n vertices in increasing bitstring order.
/// Refuses n above the limit.
class TournamentEnumeration {
 public:
  explicit TournamentEnumeration(int n, int limit = exhaustive_limit());

  class iterator {
   public:
    iterator(int n, std::uint64_t index) : current_(n), index_(index) {
      if (index_ < tournament_count(n)) current_.assign_index(index_);
    }
    const Tournament& operator*() const { return current_; }
    iterator& operator++() {
      ++index_;
      current_.assign_index(index_);
      return *this;
    }
    bool operator!=(const iterator& other) const {
      return index_ != other.index_;
    }

   private:
    Tournament current_;
    std::uint64_t index_;
  };

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const { return iterator(n_, size()); }
  std::uint64_t size() const { return count_; }

 private:
  int n_;
  std::uint64_t count_;
};

TournamentEnumeration enumerate_tournaments(int n);
TournamentEnumeration enumerate_tournaments(int n, int limit);

/// Dense index space over every perfect-manipulator spec on n vertices:
/// alpha ascending, then the B-membership mask over the remaining vertices
/// ascending, then innerB bits, then innerC bits.
class PmIndexer {
 public:
  explicit PmIndexer(int n);

  std::uint64_t total() const { return total_; }
  void fill(std::uint64_t index, PerfectManipulatorSpec& out) const;
  PerfectManipulatorSpec spec_at(std::uint64_t index) const;

 private:
  struct Block {
    std::uint32_t alpha;
    std::uint32_t bmask;  // over the n-1 non-alpha vertices, ascending order
    std::uint64_t first;  // first global index of this block
  };

  int n_;
  std::uint64_t total_ = 0;
  std::vector<Block> blocks_;
};

/// One uniformly distributed spec: alpha uniform, every other vertex sent
/// to B or C uniformly conditioned on both being nonempty, inner bits
/// uniform. Deterministic for a given seed (mt19937_64).
PerfectManipulatorSpec sample_pm(int n, std::uint64_t seed);

/// Uniform over all 2^C(n,2) orientations; deterministic for a given seed.
Tournament sample_tournament(int n, std::uint64_t seed);

/// Stateless per-case seed derivation used by the sampled checkers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace ballotree
