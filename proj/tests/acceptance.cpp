// Acceptance battery. Each numbered line is one claim about the library,
// checked exactly: exhaustive where the case space fits, seeded sampling
// where it cannot. Exits 0 only when every line passes. The heavy sweeps
// take a minute or two on one core; pass a worker count as argv[1] to
// spread them (reports do not depend on it).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ballotree/constructions.hpp"
#include "ballotree/f3.hpp"
#include "ballotree/tournament.hpp"
#include "ballotree/tree.hpp"
#include "ballotree/tree_text.hpp"
#include "ballotree/verify.hpp"

using namespace ballotree;

namespace {

constexpr std::uint64_t kSeed = 2026;

struct Outcome {
  bool pass = true;
  std::string note;
};

void demand(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.note += (o.note.empty() ? "" : "; ") + what;
  }
}

// Every unordered pair on three candidates, every 3-vertex tournament:
// the two-leaf tree picks the left leaf exactly when it beats the right.
Outcome match_truth_table() {
  Outcome o;
  int cases = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      VotingTree m = node(leaf(i), leaf(j));
      for (std::uint64_t idx = 0; idx < 8; ++idx) {
        Tournament t = Tournament::from_index(3, idx);
        Candidate want = t.beats(i, j) ? i : j;
        demand(o, evaluate(m, t) == want,
               "pair " + std::to_string(i) + "," + std::to_string(j) +
                   " tournament " + std::to_string(idx));
        ++cases;
      }
    }
  demand(o, cases == 24, "expected 24 cases");
  if (o.pass) o.note = "24 cases";
  return o;
}

// The plain bracket's winner can have out-degree as low as log2(n), and
// never lower: the sweep minimum is exactly that number.
Outcome bracket_floor(int jobs) {
  Outcome o;
  MinOutDegree r4 =
      min_winner_outdegree(CompiledTree(baseline(4)), 4, CheckMode::all(), jobs);
  demand(o, r4.min == 2 && r4.cases == 64, "n=4 floor");
  MinOutDegree r8 =
      min_winner_outdegree(CompiledTree(baseline(8)), 8, CheckMode::all(), jobs);
  demand(o, r8.min == 3 && r8.cases == (std::uint64_t{1} << 28), "n=8 floor");
  if (o.pass) o.note = "min 2 over 64 at n=4, min 3 over 2^28 at n=8";
  return o;
}

// The guarantee family: level k covers k(k+1)/2 + 1 candidates and its
// winner's out-degree never drops below k. Levels 1..3 exhaustively,
// level 4 on a million seeded samples, leaf counts exact through level 5.
Outcome guarantee_family(int jobs) {
  Outcome o;
  VerificationReport r = check_guarantee(4, 1'000'000, kSeed, jobs);
  demand(o, r.pass, "sweep failed: " + r.summary());
  const auto& levels = r.detail["levels"];
  demand(o, levels.size() == 4, "expected 4 levels");
  struct Want {
    int min;
    std::uint64_t cases;
    const char* leaves;
    bool exact;
  };
  const Want want[] = {{1, 2, "2", true},
                       {2, 64, "9", false},
                       {3, std::uint64_t{1} << 21, "150", false},
                       {4, 1'000'000, "18120", false}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& lv = levels[i];
    int min = lv["min"].get<int>();
    demand(o, want[i].exact ? min == want[i].min : min >= want[i].min,
           "level " + std::to_string(i + 1) + " min " + std::to_string(min));
    demand(o, lv["cases"].get<std::uint64_t>() == want[i].cases,
           "level " + std::to_string(i + 1) + " cases");
    demand(o, lv["leaves"].get<std::string>() == want[i].leaves,
           "level " + std::to_string(i + 1) + " leaves");
  }
  demand(o, levels[3]["mode"] == "sampled", "level 4 should sample");
  demand(o, stats(omega(5)).leaves == BigInt(24'735'165), "level 5 leaves");
  if (o.pass) o.note = "mins 1/2/3/4, leaves 2/9/150/18120/24735165";
  return o;
}

// One-against-a-set: across every focal candidate, nonempty set, bracket
// shape and 5-candidate tournament, the focal wins exactly when it beats
// the whole set, and any other winner beats the focal.
Outcome one_against_set(int jobs) {
  Outcome o;
  VerificationReport r = check_against(5, 10, kSeed, jobs);
  demand(o, r.pass, r.summary());
  // 5 focals, 15 sets, 1 fixed + 10 random shapes, 2^10 tournaments.
  demand(o, r.cases == std::uint64_t{5} * 15 * 11 * 1024, "case count");
  if (o.pass) o.note = std::to_string(r.cases) + " cases";
  return o;
}

// On manipulator-structured tournaments: the shuffle never elects from C,
// one-against-all rotates classes A->C, B->A, C->B, and its composition
// rotates A->B, B->C, C->A, for every focal candidate. Exhaustive at both
// sizes.
Outcome rotation_classes(int jobs) {
  Outcome o;
  const std::uint64_t specs4 = 48, specs8 = 4'644'864;
  VerificationReport p4 = check_phi(4, jobs);
  demand(o, p4.pass && p4.cases == specs4, "shuffle n=4: " + p4.summary());
  VerificationReport p8 = check_phi(8, jobs);
  demand(o, p8.pass && p8.cases == specs8, "shuffle n=8: " + p8.summary());
  for (bool squared : {false, true}) {
    VerificationReport r4 = check_rotation(4, squared, jobs);
    demand(o, r4.pass && r4.cases == specs4 * 4,
           std::string(squared ? "double" : "single") + " rotation n=4");
    VerificationReport r8 = check_rotation(8, squared, jobs);
    demand(o, r8.pass && r8.cases == specs8 * 8,
           std::string(squared ? "double" : "single") + " rotation n=8");
  }
  if (o.pass) o.note = "48 and 4644864 specs, every focal candidate";
  return o;
}

// The resistant tree never elects the manipulator's favorite: exhaustive
// over both enumerable sizes, a million seeded samples at n=16.
Outcome manipulator_resistance(int jobs) {
  Outcome o;
  VerificationReport m4 = check_manipulator(4, CheckMode::all(), jobs);
  demand(o, m4.pass && m4.cases == 48, "n=4: " + m4.summary());
  VerificationReport m8 = check_manipulator(8, CheckMode::all(), jobs);
  demand(o, m8.pass && m8.cases == 4'644'864, "n=8: " + m8.summary());
  VerificationReport m16 =
      check_manipulator(16, CheckMode::sampled(1'000'000, kSeed), jobs);
  demand(o, m16.pass && m16.cases == 1'000'000, "n=16: " + m16.summary());
  if (o.pass) o.note = "48, 4644864 and 10^6 sampled cases";
  return o;
}

// Every arithmetic gate matches its table on both three-cycles.
Outcome gate_tables() {
  Outcome o;
  VerificationReport r = check_gates(0, kSeed);
  demand(o, r.pass && r.mode == "exhaustive", r.summary());
  demand(o, r.cases == 102, "expected 102 table rows");
  if (o.pass) o.note = "9 tables, 102 rows, both directions";
  return o;
}

// Random polynomials lower to trees that agree with field arithmetic on
// every assignment, both directions.
Outcome compiler_soundness() {
  Outcome o;
  VerificationReport r = check_gates(120, kSeed, 3, 4);
  demand(o, r.pass, r.summary());
  demand(o, r.detail["polynomials"].get<int>() == 120, "polynomial count");
  if (o.pass)
    o.note = "120 polynomials, " +
             r.detail["polynomial_evaluations"].dump() + " evaluations";
  return o;
}

VotingTree random_tree(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    if (rng() % 4 == 0)
      return var_leaf(std::string(1, char('x' + int(rng() % 3))));
    return leaf(int(rng() % 6));
  }
  VotingTree l = random_tree(rng, depth - 1);
  VotingTree r = random_tree(rng, depth - 1);
  return node(l, r);
}

// Plumbing guarantees: text round trips reproduce the identical DAG node,
// reports do not depend on the worker count, and grafting a constant leaf
// commutes with evaluation through every gate.
Outcome infrastructure(int jobs) {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  int trips = 0;
  for (int i = 0; i < 1000; ++i) {
    VotingTree t = random_tree(rng, 1 + int(rng() % 8));
    bool plain = parse_tree(to_text(t)) == t;
    bool shared = parse_tree(to_text_shared(t)) == t;
    demand(o, plain && shared, "round trip " + std::to_string(i));
    if (plain && shared) ++trips;
  }

  int alt = jobs == 1 ? 4 : 1;
  auto same = [](const VerificationReport& a, const VerificationReport& b) {
    return a.comparable_json() == b.comparable_json();
  };
  demand(o, same(check_baseline(4, jobs), check_baseline(4, alt)),
         "bracket report depends on workers");
  demand(o, same(check_against(4, 3, kSeed, jobs), check_against(4, 3, kSeed, alt)),
         "against report depends on workers");
  demand(o,
         same(check_manipulator(16, CheckMode::sampled(20'000, kSeed), jobs),
              check_manipulator(16, CheckMode::sampled(20'000, kSeed), alt)),
         "sampled report depends on workers");

  Label x = Label::variable("x");
  Label y = Label::variable("y");
  int commutes = 0;
  auto graft_unary = [&](VotingTree g) {
    for (int a = 0; a < 3; ++a)
      for (Direction d : {Direction::clockwise, Direction::counterclockwise}) {
        VotingTree grafted = substitute(g, x, leaf(a));
        bool ok = eval_f3(grafted, d) == eval_f3(g, d, {{"x", a}});
        demand(o, ok, "unary graft");
        if (ok) ++commutes;
      }
  };
  auto graft_binary = [&](VotingTree g) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (Direction d :
             {Direction::clockwise, Direction::counterclockwise}) {
          VotingTree grafted = substitute(substitute(g, x, leaf(a)), y, leaf(b));
          bool ok = eval_f3(grafted, d) == eval_f3(g, d, {{"x", a}, {"y", b}});
          demand(o, ok, "binary graft");
          if (ok) ++commutes;
        }
  };
  graft_unary(yield_gate(var_leaf("x")));
  graft_unary(negate_gate(var_leaf("x")));
  graft_unary(square_first_half(var_leaf("x")));
  graft_unary(square_second_half(var_leaf("x")));
  graft_unary(square_gate(var_leaf("x")));
  graft_binary(pair_gate(var_leaf("x"), var_leaf("y")));
  graft_binary(neg_sum_gate(var_leaf("x"), var_leaf("y")));
  graft_binary(add_gate(var_leaf("x"), var_leaf("y")));
  graft_binary(multiply_gate(var_leaf("x"), var_leaf("y")));

  if (o.pass)
    o.note = std::to_string(trips) + " round trips, worker-invariant " +
             "reports, " + std::to_string(commutes) + " graft commutations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = argc > 1 ? std::atoi(argv[1]) : 0;
  jobs = resolve_jobs(jobs);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> lines = {
      {"match truth table", [] { return match_truth_table(); }},
      {"full bracket floor", [&] { return bracket_floor(jobs); }},
      {"guarantee family", [&] { return guarantee_family(jobs); }},
      {"one against a set", [&] { return one_against_set(jobs); }},
      {"shuffle and rotation classes", [&] { return rotation_classes(jobs); }},
      {"manipulator resistance", [&] { return manipulator_resistance(jobs); }},
      {"gate truth tables", [] { return gate_tables(); }},
      {"expression compiler", [] { return compiler_soundness(); }},
      {"serialization, parallelism, grafting", [&] { return infrastructure(jobs); }},
  };

  bool all = true;
  int num = 0;
  for (const auto& [title, run] : lines) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%d. %-38s %s  (%s, %.1fs)\n", ++num, title,
                o.pass ? "pass" : "FAIL", o.note.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  if (!all) {
    std::printf("acceptance: FAILED\n");
    return 1;
  }
  std::printf("acceptance: all %d checks passed\n", num);
  return 0;
}
