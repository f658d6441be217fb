#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ballotree/tournament.hpp"
#include "ballotree/tree.hpp"

namespace ballotree {

/// How a checker walks its case space: every case, or a seeded sample.
struct CheckMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;  // sampled walks only
  std::uint64_t seed = 0;     // sampled walks only

  static CheckMode all() { return CheckMode{}; }
  static CheckMode sampled(std::uint64_t samples, std::uint64_t seed) {
    return CheckMode{false, samples, seed};
  }
};

/// Outcome of one checker run.
///
/// A failed run always carries a witness that replays the failing case:
/// tournament text, manipulator spec text, or expression text plus an
/// assignment. Sampled runs record the generator and seed, and every
/// per-case seed is derived statelessly from (seed, case counter), so
/// reports are identical for any worker count. wall_seconds and jobs are
/// informational only; comparable_json() drops them.
struct VerificationReport {
  std::string check;
  std::string mode;  // "exhaustive", "sampled" or "mixed"
  std::uint64_t cases = 0;
  bool pass = false;
  std::string witness;  // empty unless a case failed
  std::optional<int> observed_min;
  std::string min_witness;    // a case attaining observed_min
  std::uint64_t samples = 0;  // sampled runs
  std::uint64_t seed = 0;     // sampled runs
  std::string generator;      // sampled runs, "mt19937_64"
  int jobs = 1;
  double wall_seconds = 0.0;
  nlohmann::json detail;  // per-check breakdown

  nlohmann::json json() const;
  nlohmann::json comparable_json() const;  // json() minus timing and jobs
  std::string summary() const;             // one line, human readable
};

/// Contiguous order-preserving split of [0, total) into at most `jobs`
/// nonempty ranges. Checkers merge worker results in range order, so the
/// outcome does not depend on the split.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_ranges(
    std::uint64_t total, int jobs);

/// jobs < 1 means one worker per hardware thread.
int resolve_jobs(int jobs);

/// Minimum winner out-degree of a closed tree over tournaments on n
/// vertices, with a witness attaining it (smallest bitstring on ties).
struct MinOutDegree {
  int min;
  std::uint64_t cases;
  Tournament witness;
};
MinOutDegree min_winner_outdegree(const CompiledTree& t, int n,
                                  const CheckMode& mode, int jobs = 1);

/// Complete-bracket guarantee: over every tournament on n vertices the
/// bracket winner beats at least log2(n) others. Exhaustive.
VerificationReport check_baseline(int n, int jobs = 1);

/// Guarantee family: for each level k <= kmax the omega(k) winner has
/// out-degree at least k. Exhaustive while the candidate count stays
/// within exhaustive_limit(), sampled above it (per-level seeds derived
/// from `seed`). Also recomputes the candidate and leaf count sequences.
VerificationReport check_guarantee(int kmax, std::uint64_t samples,
                                   std::uint64_t seed, int jobs = 1);

/// One-against-a-set semantics on n vertices: for every focal candidate,
/// every nonempty opponent set and every tournament, the winner is the
/// focal candidate exactly when it beats the whole set, and otherwise a
/// set member that beats it. Checked on the default bracket layout plus
/// `shapes` seeded random layouts.
VerificationReport check_against(int n, int shapes, std::uint64_t seed,
                                 int jobs = 1);

/// Interleaved bracket on perfect-manipulator tournaments: its winner
/// never falls in C. Exhaustive over all specs on n vertices.
VerificationReport check_phi(int n, int jobs = 1);

/// Class rotation on perfect-manipulator tournaments. Plain: the winner
/// of lambda_full(n, i) lies in C, A, B for i in A, B, C. Squared: the
/// winner of lambda_sq(n, i) lies in B, C, A. Exhaustive over all specs
/// on n vertices, all i.
VerificationReport check_rotation(int n, bool squared, int jobs = 1);

/// Manipulator resistance: psi(n) never elects alpha on any perfect
/// manipulator tournament. Exhaustive over specs (spec counts checked
/// against the closed form) or sampled.
VerificationReport check_manipulator(int n, const CheckMode& mode,
                                     int jobs = 1);

/// Full gate truth tables on both directions, then `polynomials` seeded
/// random expressions (up to max_vars variables, depth max_depth)
/// compiled and compared with direct arithmetic on every assignment and
/// both directions.
VerificationReport check_gates(std::uint64_t polynomials, std::uint64_t seed,
                               int max_vars = 3, int max_depth = 4);

}  // namespace ballotree
