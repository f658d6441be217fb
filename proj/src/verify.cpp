#include "ballotree/verify.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <exception>
#include <thread>

#include "ballotree/bigint.hpp"
#include "ballotree/constructions.hpp"
#include "ballotree/f3.hpp"

namespace ballotree {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kNoCase = ~std::uint64_t(0);

// Runs body(state[w], begin, end) once per range, each on its own thread,
// and rethrows the first worker exception after joining.
template <typename State, typename Body>
std::vector<State> run_ranges(std::uint64_t total, int jobs,
                              const Body& body) {
  auto ranges = split_ranges(total, jobs);
  std::vector<State> states(ranges.size());
  if (ranges.size() <= 1) {
    if (!ranges.empty()) body(states[0], ranges[0].first, ranges[0].second);
    return states;
  }
  std::vector<std::exception_ptr> errors(ranges.size());
  std::vector<std::thread> threads;
  threads.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w)
    threads.emplace_back([&, w] {
      try {
        body(states[w], ranges[w].first, ranges[w].second);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return states;
}

BigInt binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// n choices of alpha, then a nonempty proper split of the rest into B | C
// with free orientations inside each part.
BigInt expected_pm_total(int n) {
  BigInt sum = 0;
  for (int b = 1; b <= n - 2; ++b) {
    int c = n - 1 - b;
    sum += binom(n - 1, b) * (BigInt(1) << (pair_count(b) + pair_count(c)));
  }
  return sum * n;
}

int ilog2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

void require_enumerable(int n) {
  int limit = exhaustive_limit();
  if (n > limit)
    throw scale_error("exhaustive enumeration refused for n=" +
                      std::to_string(n) + " (limit " + std::to_string(limit) +
                      "; set BALLOTREE_EXHAUSTIVE_LIMIT to force)");
}

enum class PmClass { a, b, c };

PmClass pm_class(const PerfectManipulatorSpec& spec, Candidate v) {
  if (v == spec.alpha) return PmClass::a;
  if (std::binary_search(spec.members_b.begin(), spec.members_b.end(), v))
    return PmClass::b;
  return PmClass::c;
}

// Violation tally with the smallest failing case id. Workers own ascending
// ranges and the merge takes the minimum, so the witness is the one an
// unsplit scan would find first.
struct ScanState {
  std::uint64_t violations = 0;
  std::uint64_t first_fail = kNoCase;

  void fail(std::uint64_t id) {
    ++violations;
    first_fail = std::min(first_fail, id);
  }
};

ScanState merge(const std::vector<ScanState>& states) {
  ScanState out;
  for (const auto& s : states) {
    out.violations += s.violations;
    out.first_fail = std::min(out.first_fail, s.first_fail);
  }
  return out;
}

const Direction kBothDirections[2] = {Direction::clockwise,
                                      Direction::counterclockwise};

}  // namespace

nlohmann::json VerificationReport::json() const {
  nlohmann::json j;
  j["schema"] = "ballotree.report.v1";
  j["check"] = check;
  j["mode"] = mode;
  j["cases"] = cases;
  j["pass"] = pass;
  j["witness"] = witness.empty() ? nlohmann::json() : nlohmann::json(witness);
  if (observed_min) {
    j["observed_min"] = *observed_min;
    j["min_witness"] = min_witness;
  }
  if (!generator.empty())
    j["sampling"] = {
        {"generator", generator}, {"samples", samples}, {"seed", seed}};
  j["jobs"] = jobs;
  j["wall_seconds"] = wall_seconds;
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

nlohmann::json VerificationReport::comparable_json() const {
  nlohmann::json j = json();
  j.erase("wall_seconds");
  j.erase("jobs");
  return j;
}

std::string VerificationReport::summary() const {
  std::string s = check + ": " + (pass ? "PASS" : "FAIL");
  s += " (" + mode + ", " + std::to_string(cases) + " cases";
  if (observed_min) s += ", min " + std::to_string(*observed_min);
  if (!generator.empty()) s += ", seed " + std::to_string(seed);
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", wall_seconds);
  s += ", " + std::string(secs) + "s)";
  if (!pass && !witness.empty()) s += "\n  witness: " + witness;
  return s;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> split_ranges(
    std::uint64_t total, int jobs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (total == 0) return out;
  std::uint64_t workers =
      std::min<std::uint64_t>(std::uint64_t(std::max(1, jobs)), total);
  std::uint64_t base = total / workers;
  std::uint64_t extra = total % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    std::uint64_t len = base + (w < extra ? 1 : 0);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

int resolve_jobs(int jobs) {
  if (jobs >= 1) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

MinOutDegree min_winner_outdegree(const CompiledTree& t, int n,
                                  const CheckMode& mode, int jobs) {
  if (!t.variables().empty())
    throw binding_error("minimum winner out-degree needs a closed tree");
  if (t.max_candidate() >= n)
    throw domain_error("tree names candidate " +
                       std::to_string(t.max_candidate()) + " but n=" +
                       std::to_string(n));
  struct Best {
    int min = INT_MAX;
    std::uint64_t at = kNoCase;
  };
  jobs = resolve_jobs(jobs);
  std::uint64_t total;
  std::vector<Best> states;
  if (mode.exhaustive) {
    require_enumerable(n);
    total = tournament_count(n);
    states = run_ranges<Best>(
        total, jobs, [&](Best& s, std::uint64_t b, std::uint64_t e) {
          Tournament view(n);
          std::vector<Candidate> scratch;
          for (std::uint64_t id = b; id < e; ++id) {
            view.assign_index(id);
            Candidate w = t.run(view, {}, scratch);
            int d = view.out_degree_unchecked(w);
            if (d < s.min) {
              s.min = d;
              s.at = id;
            }
          }
        });
  } else {
    if (mode.samples == 0)
      throw domain_error("sampled mode needs at least one sample");
    total = mode.samples;
    states = run_ranges<Best>(
        total, jobs, [&](Best& s, std::uint64_t b, std::uint64_t e) {
          std::vector<Candidate> scratch;
          for (std::uint64_t c = b; c < e; ++c) {
            Tournament view = sample_tournament(n, mix_seed(mode.seed, c));
            Candidate w = t.run(view, {}, scratch);
            int d = view.out_degree_unchecked(w);
            if (d < s.min) {
              s.min = d;
              s.at = c;
            }
          }
        });
  }
  // Strict < keeps the earliest range holding the global minimum, so ties
  // resolve to the smallest case id for any worker count.
  Best best;
  for (const auto& s : states)
    if (s.min < best.min) best = s;
  Tournament witness = mode.exhaustive
                           ? Tournament::from_index(n, best.at)
                           : sample_tournament(n, mix_seed(mode.seed, best.at));
  return MinOutDegree{best.min, total, std::move(witness)};
}

VerificationReport check_baseline(int n, int jobs) {
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  CompiledTree tree(baseline(n));
  MinOutDegree r = min_winner_outdegree(tree, n, CheckMode::all(), jobs);
  int required = ilog2(n);
  VerificationReport rep;
  rep.check = "baseline";
  rep.mode = "exhaustive";
  rep.cases = r.cases;
  rep.observed_min = r.min;
  rep.min_witness = r.witness.to_text();
  rep.pass = r.min >= required;
  if (!rep.pass) rep.witness = rep.min_witness;
  rep.jobs = jobs;
  rep.detail = {{"candidates", n}, {"required_min", required}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_guarantee(int kmax, std::uint64_t samples,
                                   std::uint64_t seed, int jobs) {
  if (kmax < 1) throw domain_error("guarantee levels start at 1");
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  VerificationReport rep;
  rep.check = "guarantee";
  rep.pass = true;
  rep.jobs = jobs;
  nlohmann::json levels = nlohmann::json::array();
  bool any_sampled = false;
  BigInt prev_leaves = 0;
  int prev_n = 0;
  for (int k = 1; k <= kmax; ++k) {
    int n = omega_candidate_count(k);
    VotingTree om = omega(k);
    BigInt leaves = om.leaf_count();
    BigInt expect =
        k == 1 ? BigInt(2) : binom(n - 1, prev_n) * (prev_leaves + 1);
    if (leaves != expect) {
      rep.pass = false;
      if (rep.witness.empty())
        rep.witness = "level " + std::to_string(k) + " has " + leaves.str() +
                      " leaves, the recurrence gives " + expect.str();
    }
    CompiledTree tree(om);
    bool full = n <= exhaustive_limit();
    CheckMode mode = full ? CheckMode::all()
                          : CheckMode::sampled(samples, mix_seed(seed, k));
    any_sampled |= !full;
    MinOutDegree r = min_winner_outdegree(tree, n, mode, jobs);
    rep.cases += r.cases;
    nlohmann::json level = {{"k", k},
                            {"candidates", n},
                            {"leaves", leaves.str()},
                            {"mode", full ? "exhaustive" : "sampled"},
                            {"cases", r.cases},
                            {"min", r.min},
                            {"min_witness_bits", r.witness.bits()}};
    if (!full) level["seed"] = mode.seed;
    levels.push_back(std::move(level));
    if (r.min < k) {
      rep.pass = false;
      if (rep.witness.empty())
        rep.witness = "k=" + std::to_string(k) + "; " + r.witness.to_text();
    }
    prev_leaves = leaves;
    prev_n = n;
  }
  rep.mode = any_sampled ? "mixed" : "exhaustive";
  if (any_sampled) {
    rep.samples = samples;
    rep.seed = seed;
    rep.generator = "mt19937_64";
  }
  rep.detail = {{"levels", std::move(levels)}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_against(int n, int shapes, std::uint64_t seed,
                                 int jobs) {
  if (n < 3) throw domain_error("one-against-a-set checks need n >= 3");
  if (shapes < 0) throw domain_error("shape count cannot be negative");
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  require_enumerable(n);
  std::uint64_t tcount = tournament_count(n);

  std::vector<TreeCombiner> layouts;
  layouts.emplace_back();  // the default heap bracket
  for (int s = 0; s < shapes; ++s)
    layouts.push_back(random_combiner(mix_seed(seed, s)));

  struct Combo {
    int layout;
    Candidate focal;
    std::vector<Candidate> set;
    CompiledTree tree;
  };
  std::vector<Combo> combos;
  for (std::size_t l = 0; l < layouts.size(); ++l)
    for (Candidate i = 0; i < n; ++i) {
      std::vector<Candidate> others;
      for (Candidate u = 0; u < n; ++u)
        if (u != i) others.push_back(u);
      for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << (n - 1));
           ++mask) {
        std::vector<Candidate> set;
        for (int b = 0; b < n - 1; ++b)
          if (mask >> b & 1) set.push_back(others[b]);
        CompiledTree tree(lambda_against(i, set, layouts[l]));
        combos.push_back({int(l), i, std::move(set), std::move(tree)});
      }
    }

  std::uint64_t total = combos.size() * tcount;
  auto states = run_ranges<ScanState>(
      total, jobs, [&](ScanState& s, std::uint64_t b, std::uint64_t e) {
        Tournament view(n);
        std::vector<Candidate> scratch;
        for (std::uint64_t id = b; id < e; ++id) {
          const Combo& c = combos[id / tcount];
          view.assign_index(id % tcount);
          Candidate w = c.tree.run(view, {}, scratch);
          bool focal_beats_all = true;
          for (Candidate v : c.set)
            if (!view.beats_unchecked(c.focal, v)) {
              focal_beats_all = false;
              break;
            }
          bool ok;
          if (focal_beats_all) {
            ok = w == c.focal;
          } else {
            ok = w != c.focal && view.beats_unchecked(w, c.focal) &&
                 std::find(c.set.begin(), c.set.end(), w) != c.set.end();
          }
          if (!ok) s.fail(id);
        }
      });
  ScanState m = merge(states);

  VerificationReport rep;
  rep.check = "against";
  rep.mode = "exhaustive";
  rep.cases = total;
  rep.pass = m.violations == 0;
  rep.jobs = jobs;
  if (m.first_fail != kNoCase) {
    const Combo& c = combos[m.first_fail / tcount];
    std::string members;
    for (Candidate v : c.set) {
      if (!members.empty()) members += ",";
      members += std::to_string(v);
    }
    rep.witness = "layout=" + std::to_string(c.layout) + "; focal=" +
                  std::to_string(c.focal) + "; S=" + members + "; " +
                  Tournament::from_index(n, m.first_fail % tcount).to_text();
  }
  rep.detail = {{"candidates", n},
                {"layouts", layouts.size()},
                {"shape_seed", seed},
                {"combos", combos.size()},
                {"tournaments_each", tcount},
                {"violations", m.violations}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_phi(int n, int jobs) {
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  require_enumerable(n);
  CompiledTree tree(phi_tree(n));
  PmIndexer idx(n);
  auto states = run_ranges<ScanState>(
      idx.total(), jobs, [&](ScanState& s, std::uint64_t b, std::uint64_t e) {
        PerfectManipulatorSpec spec;
        Tournament view(n);
        std::vector<Candidate> scratch;
        for (std::uint64_t id = b; id < e; ++id) {
          idx.fill(id, spec);
          realize_pm_into(spec, view);
          Candidate w = tree.run(view, {}, scratch);
          if (pm_class(spec, w) == PmClass::c) s.fail(id);
        }
      });
  ScanState m = merge(states);
  BigInt expected = expected_pm_total(n);
  bool count_ok = expected == BigInt(idx.total());

  VerificationReport rep;
  rep.check = "phi";
  rep.mode = "exhaustive";
  rep.cases = idx.total();
  rep.pass = m.violations == 0 && count_ok;
  rep.jobs = jobs;
  if (m.first_fail != kNoCase)
    rep.witness = idx.spec_at(m.first_fail).to_text();
  else if (!count_ok)
    rep.witness = "enumerated " + std::to_string(idx.total()) +
                  " specs, the closed form gives " + expected.str();
  rep.detail = {{"candidates", n},
                {"specs", idx.total()},
                {"expected_specs", expected.str()},
                {"violations", m.violations}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_rotation(int n, bool squared, int jobs) {
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  require_enumerable(n);
  std::vector<CompiledTree> trees;
  trees.reserve(n);
  for (Candidate i = 0; i < n; ++i)
    trees.emplace_back(squared ? lambda_sq(n, i) : lambda_full(n, i));
  PmIndexer idx(n);
  std::uint64_t total = idx.total() * std::uint64_t(n);
  auto states = run_ranges<ScanState>(
      total, jobs, [&](ScanState& s, std::uint64_t b, std::uint64_t e) {
        PerfectManipulatorSpec spec;
        Tournament view(n);
        std::vector<Candidate> scratch;
        std::uint64_t current = kNoCase;
        for (std::uint64_t id = b; id < e; ++id) {
          std::uint64_t spec_id = id / n;
          Candidate i = Candidate(id % n);
          if (spec_id != current) {
            idx.fill(spec_id, spec);
            realize_pm_into(spec, view);
            current = spec_id;
          }
          Candidate w = trees[i].run(view, {}, scratch);
          PmClass want = PmClass::a;
          switch (pm_class(spec, i)) {
            case PmClass::a:
              want = squared ? PmClass::b : PmClass::c;
              break;
            case PmClass::b:
              want = squared ? PmClass::c : PmClass::a;
              break;
            case PmClass::c:
              want = squared ? PmClass::a : PmClass::b;
              break;
          }
          if (pm_class(spec, w) != want) s.fail(id);
        }
      });
  ScanState m = merge(states);

  VerificationReport rep;
  rep.check = squared ? "rotation2" : "rotation";
  rep.mode = "exhaustive";
  rep.cases = total;
  rep.pass = m.violations == 0;
  rep.jobs = jobs;
  if (m.first_fail != kNoCase)
    rep.witness = "focal=" + std::to_string(m.first_fail % n) + "; " +
                  idx.spec_at(m.first_fail / n).to_text();
  rep.detail = {{"candidates", n},
                {"specs", idx.total()},
                {"expected_specs", expected_pm_total(n).str()},
                {"squared", squared},
                {"violations", m.violations}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_manipulator(int n, const CheckMode& mode, int jobs) {
  auto start = Clock::now();
  jobs = resolve_jobs(jobs);
  CompiledTree tree(psi(n));
  VerificationReport rep;
  rep.check = "manipulator";
  rep.jobs = jobs;
  if (mode.exhaustive) {
    require_enumerable(n);
    PmIndexer idx(n);
    auto states = run_ranges<ScanState>(
        idx.total(), jobs,
        [&](ScanState& s, std::uint64_t b, std::uint64_t e) {
          PerfectManipulatorSpec spec;
          Tournament view(n);
          std::vector<Candidate> scratch;
          for (std::uint64_t id = b; id < e; ++id) {
            idx.fill(id, spec);
            realize_pm_into(spec, view);
            if (tree.run(view, {}, scratch) == spec.alpha) s.fail(id);
          }
        });
    ScanState m = merge(states);
    BigInt expected = expected_pm_total(n);
    bool count_ok = expected == BigInt(idx.total());
    rep.mode = "exhaustive";
    rep.cases = idx.total();
    rep.pass = m.violations == 0 && count_ok;
    if (m.first_fail != kNoCase)
      rep.witness = idx.spec_at(m.first_fail).to_text();
    else if (!count_ok)
      rep.witness = "enumerated " + std::to_string(idx.total()) +
                    " specs, the closed form gives " + expected.str();
    rep.detail = {{"candidates", n},
                  {"specs", idx.total()},
                  {"expected_specs", expected.str()},
                  {"violations", m.violations}};
  } else {
    if (mode.samples == 0)
      throw domain_error("sampled mode needs at least one sample");
    auto states = run_ranges<ScanState>(
        mode.samples, jobs,
        [&](ScanState& s, std::uint64_t b, std::uint64_t e) {
          Tournament view(n);
          std::vector<Candidate> scratch;
          for (std::uint64_t c = b; c < e; ++c) {
            PerfectManipulatorSpec spec = sample_pm(n, mix_seed(mode.seed, c));
            realize_pm_into(spec, view);
            if (tree.run(view, {}, scratch) == spec.alpha) s.fail(c);
          }
        });
    ScanState m = merge(states);
    rep.mode = "sampled";
    rep.cases = mode.samples;
    rep.pass = m.violations == 0;
    rep.samples = mode.samples;
    rep.seed = mode.seed;
    rep.generator = "mt19937_64";
    if (m.first_fail != kNoCase)
      rep.witness = sample_pm(n, mix_seed(mode.seed, m.first_fail)).to_text();
    rep.detail = {{"candidates", n}, {"violations", m.violations}};
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

VerificationReport check_gates(std::uint64_t polynomials, std::uint64_t seed,
                               int max_vars, int max_depth) {
  if (max_vars < 1 || max_vars > 3)
    throw domain_error("gate sampling uses 1 to 3 variables");
  if (max_depth < 0) throw domain_error("max_depth cannot be negative");
  auto start = Clock::now();
  VerificationReport rep;
  rep.check = "gates";
  rep.mode = polynomials > 0 ? "mixed" : "exhaustive";
  rep.pass = true;
  rep.jobs = 1;
  nlohmann::json tables = nlohmann::json::array();

  auto fail = [&](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  auto dir_name = [](Direction d) {
    return d == Direction::clockwise ? "clockwise" : "counterclockwise";
  };

  VotingTree x = var_leaf("x");
  VotingTree y = var_leaf("y");

  auto check_unary = [&](const char* name, VotingTree t, auto want) {
    std::uint64_t count = 0;
    for (Direction d : kBothDirections)
      for (int v = 0; v < 3; ++v) {
        F3 got = eval_f3(t, d, {{"x", v}});
        ++count;
        ++rep.cases;
        if (!(got == F3(want(v, d))))
          fail(std::string(name) + "; direction=" + dir_name(d) + "; x=" +
               std::to_string(v) + "; got=" + std::to_string(got.value));
      }
    tables.push_back({{"gate", name}, {"cases", count}});
  };
  auto check_binary = [&](const char* name, VotingTree t, auto want) {
    std::uint64_t count = 0;
    for (Direction d : kBothDirections)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          F3 got = eval_f3(t, d, {{"x", a}, {"y", b}});
          ++count;
          ++rep.cases;
          if (!(got == F3(want(a, b, d))))
            fail(std::string(name) + "; direction=" + dir_name(d) + "; x=" +
                 std::to_string(a) + "; y=" + std::to_string(b) + "; got=" +
                 std::to_string(got.value));
        }
    tables.push_back({{"gate", name}, {"cases", count}});
  };

  auto shift = [](int v, Direction d) {
    return d == Direction::clockwise ? (v + 2) % 3 : (v + 1) % 3;
  };
  check_unary("yield", yield_gate(x), shift);
  check_binary("pair", pair_gate(x, y), [&](int a, int b, Direction d) {
    return a != b ? (6 - a - b) % 3 : shift(a, d);
  });
  check_binary("neg_sum", neg_sum_gate(x, y),
               [](int a, int b, Direction) { return (6 - a - b) % 3; });
  check_unary("negate", negate_gate(x),
              [](int v, Direction) { return (3 - v) % 3; });
  check_binary("add", add_gate(x, y),
               [](int a, int b, Direction) { return (a + b) % 3; });
  check_unary("square_first_half", square_first_half(x),
              [](int v, Direction d) {
                static const int cw[3] = {0, 2, 2};
                static const int ccw[3] = {2, 1, 1};
                return d == Direction::clockwise ? cw[v] : ccw[v];
              });
  check_unary("square_second_half", square_second_half(x),
              [](int v, Direction d) {
                static const int cw[3] = {0, 2, 1};
                static const int ccw[3] = {2, 1, 0};
                return d == Direction::clockwise ? cw[v] : ccw[v];
              });
  check_unary("square", square_gate(x),
              [](int v, Direction) { return v * v % 3; });
  check_binary("multiply", multiply_gate(x, y),
               [](int a, int b, Direction) { return a * b % 3; });

  const std::vector<std::string> names = {"x", "y", "z"};
  std::uint64_t poly_evals = 0;
  for (std::uint64_t c = 0; c < polynomials; ++c) {
    int nv = 1 + int(c % std::uint64_t(max_vars));
    std::span<const std::string> vars(names.data(), std::size_t(nv));
    GateExpr e = random_expr(max_depth, vars, mix_seed(seed, c));
    CompiledTree tree(compile_expr(e));
    int combos = 1;
    for (int i = 0; i < nv; ++i) combos *= 3;
    for (int a = 0; a < combos; ++a) {
      F3Assignment assignment;
      Bindings bindings;
      std::string shown;
      int rest = a;
      for (int i = 0; i < nv; ++i) {
        int v = rest % 3;
        rest /= 3;
        assignment[names[i]] = F3(v);
        bindings[names[i]] = v;
        if (!shown.empty()) shown += ",";
        shown += names[i] + "=" + std::to_string(v);
      }
      F3 want = eval_expr(e, assignment);
      for (Direction d : kBothDirections) {
        F3 got = F3(tree.run(direction_tournament(d), bindings));
        ++poly_evals;
        ++rep.cases;
        if (!(got == want))
          fail(to_text(e) + "; direction=" + dir_name(d) + "; " + shown +
               "; got=" + std::to_string(got.value) + "; want=" +
               std::to_string(want.value));
      }
    }
  }

  if (polynomials > 0) {
    rep.samples = polynomials;
    rep.seed = seed;
    rep.generator = "mt19937_64";
  }
  rep.detail = {{"tables", std::move(tables)},
                {"polynomials", polynomials},
                {"polynomial_evaluations", poly_evals},
                {"max_vars", max_vars},
                {"max_depth", max_depth}};
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace ballotree
