#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "ballotree/constructions.hpp"
#include "ballotree/tree.hpp"
#include "ballotree/verify.hpp"

using namespace ballotree;

TEST_CASE("split_ranges tiles the index space in order") {
  auto r = split_ranges(10, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == std::pair<std::uint64_t, std::uint64_t>{0, 4});
  CHECK(r[1] == std::pair<std::uint64_t, std::uint64_t>{4, 7});
  CHECK(r[2] == std::pair<std::uint64_t, std::uint64_t>{7, 10});

  // never more ranges than cases, never an empty range
  auto tiny = split_ranges(2, 8);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0] == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  CHECK(tiny[1] == std::pair<std::uint64_t, std::uint64_t>{1, 2});

  CHECK(split_ranges(0, 4).empty());
  auto one = split_ranges(7, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::pair<std::uint64_t, std::uint64_t>{0, 7});
}

TEST_CASE("resolve_jobs") {
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(1) == 1);
  CHECK(resolve_jobs(0) >= 1);
  CHECK(resolve_jobs(-2) >= 1);
}

TEST_CASE("exhaustive minimum matches a serial rescan, first witness") {
  CompiledTree tree(omega(2));
  MinOutDegree r = min_winner_outdegree(tree, 4, CheckMode::all(), 3);

  int best = 99;
  std::uint64_t at = 0;
  for (std::uint64_t id = 0; id < 64; ++id) {
    Tournament t = Tournament::from_index(4, id);
    int d = t.out_degree(evaluate(omega(2), t));
    if (d < best) {
      best = d;
      at = id;
    }
  }
  CHECK(r.min == best);
  CHECK(r.cases == 64);
  CHECK(r.witness.index() == at);
  // the witness replays: its winner really has the reported degree
  CHECK(r.witness.out_degree(evaluate(omega(2), r.witness)) == r.min);
}

TEST_CASE("minimum search is worker-count independent") {
  CompiledTree tree(baseline(4));
  MinOutDegree one = min_winner_outdegree(tree, 4, CheckMode::all(), 1);
  MinOutDegree many = min_winner_outdegree(tree, 4, CheckMode::all(), 5);
  CHECK(one.min == 2);
  CHECK(one.min == many.min);
  CHECK(one.witness == many.witness);

  // sampled walks derive each case from (seed, counter), so splits agree too
  MinOutDegree s1 =
      min_winner_outdegree(tree, 5, CheckMode::sampled(400, 17), 1);
  MinOutDegree s4 =
      min_winner_outdegree(tree, 5, CheckMode::sampled(400, 17), 4);
  CHECK(s1.min == s4.min);
  CHECK(s1.witness == s4.witness);
  CHECK(s1.cases == 400);
}

TEST_CASE("minimum search rejects open or oversized trees") {
  CompiledTree open(node(var_leaf("x"), leaf(1)));
  CHECK_THROWS_AS(min_winner_outdegree(open, 3, CheckMode::all()),
                  binding_error);
  CompiledTree wide(node(leaf(0), leaf(5)));
  CHECK_THROWS_AS(min_winner_outdegree(wide, 3, CheckMode::all()),
                  domain_error);
  CompiledTree pair(node(leaf(0), leaf(1)));
  CHECK_THROWS_AS(min_winner_outdegree(pair, 3, CheckMode::sampled(0, 1)),
                  domain_error);
}

TEST_CASE("baseline check on four candidates") {
  VerificationReport rep = check_baseline(4, 2);
  CHECK(rep.pass);
  CHECK(rep.check == "baseline");
  CHECK(rep.mode == "exhaustive");
  CHECK(rep.cases == 64);
  REQUIRE(rep.observed_min.has_value());
  CHECK(*rep.observed_min == 2);
  CHECK(rep.detail["required_min"] == 2);
  CHECK_FALSE(rep.min_witness.empty());
  CHECK(rep.witness.empty());

  nlohmann::json j = rep.json();
  CHECK(j["schema"] == "ballotree.report.v1");
  CHECK(j["pass"] == true);
  CHECK(j["witness"].is_null());
  CHECK(j.contains("wall_seconds"));
  CHECK_FALSE(rep.comparable_json().contains("wall_seconds"));
  CHECK(rep.comparable_json() == check_baseline(4, 5).comparable_json());
  CHECK(rep.summary().find("PASS") != std::string::npos);
}

TEST_CASE("guarantee check walks levels exhaustively") {
  VerificationReport rep = check_guarantee(2, 0, 0, 2);
  CHECK(rep.pass);
  CHECK(rep.check == "guarantee");
  CHECK(rep.mode == "exhaustive");
  CHECK(rep.cases == 2 + 64);
  REQUIRE(rep.detail["levels"].size() == 2);
  CHECK(rep.detail["levels"][0]["min"] == 1);
  CHECK(rep.detail["levels"][0]["leaves"] == "2");
  CHECK(rep.detail["levels"][1]["min"] == 2);
  CHECK(rep.detail["levels"][1]["leaves"] == "9");
  CHECK(rep.generator.empty());

  CHECK_THROWS_AS(check_guarantee(0, 0, 0), domain_error);
}

TEST_CASE("guarantee check samples above the enumeration limit") {
  setenv("BALLOTREE_EXHAUSTIVE_LIMIT", "2", 1);
  VerificationReport one = check_guarantee(2, 300, 9, 1);
  VerificationReport many = check_guarantee(2, 300, 9, 3);
  unsetenv("BALLOTREE_EXHAUSTIVE_LIMIT");

  CHECK(one.pass);
  CHECK(one.mode == "mixed");
  CHECK(one.cases == 2 + 300);
  CHECK(one.generator == "mt19937_64");
  CHECK(one.seed == 9);
  CHECK(one.detail["levels"][1]["mode"] == "sampled");
  CHECK(one.detail["levels"][1]["min"] >= 2);
  CHECK(one.comparable_json() == many.comparable_json());
}

TEST_CASE("one-against-a-set check covers every layout and set") {
  VerificationReport one = check_against(4, 2, 5, 1);
  VerificationReport many = check_against(4, 2, 5, 4);
  CHECK(one.pass);
  CHECK(one.check == "against");
  // 3 layouts, 4 focal candidates, 7 opponent sets, 64 tournaments
  CHECK(one.detail["combos"] == 3 * 4 * 7);
  CHECK(one.cases == std::uint64_t(3 * 4 * 7) * 64);
  CHECK(one.detail["violations"] == 0);
  CHECK(one.comparable_json() == many.comparable_json());

  CHECK_THROWS_AS(check_against(2, 1, 0), domain_error);
  CHECK_THROWS_AS(check_against(4, -1, 0), domain_error);
}

TEST_CASE("interleaved bracket check over manipulator specs") {
  VerificationReport one = check_phi(4, 1);
  VerificationReport many = check_phi(4, 3);
  CHECK(one.pass);
  CHECK(one.check == "phi");
  CHECK(one.cases == 48);
  CHECK(one.detail["expected_specs"] == "48");
  CHECK(one.detail["violations"] == 0);
  CHECK(one.comparable_json() == many.comparable_json());
}

TEST_CASE("rotation checks over manipulator specs") {
  VerificationReport plain = check_rotation(4, false, 2);
  CHECK(plain.pass);
  CHECK(plain.check == "rotation");
  CHECK(plain.cases == 48 * 4);

  VerificationReport squared = check_rotation(4, true, 2);
  CHECK(squared.pass);
  CHECK(squared.check == "rotation2");
  CHECK(squared.cases == 48 * 4);
  CHECK(squared.detail["squared"] == true);
}

TEST_CASE("manipulator check, exhaustive and sampled") {
  VerificationReport ex = check_manipulator(4, CheckMode::all(), 2);
  CHECK(ex.pass);
  CHECK(ex.mode == "exhaustive");
  CHECK(ex.cases == 48);
  CHECK(ex.detail["expected_specs"] == "48");
  CHECK(ex.comparable_json() ==
        check_manipulator(4, CheckMode::all(), 1).comparable_json());

  VerificationReport s1 = check_manipulator(8, CheckMode::sampled(500, 11), 1);
  VerificationReport s2 = check_manipulator(8, CheckMode::sampled(500, 11), 3);
  CHECK(s1.pass);
  CHECK(s1.mode == "sampled");
  CHECK(s1.cases == 500);
  CHECK(s1.generator == "mt19937_64");
  CHECK(s1.comparable_json() == s2.comparable_json());

  // the large instance still runs sampled
  VerificationReport big = check_manipulator(16, CheckMode::sampled(200, 3));
  CHECK(big.pass);
  CHECK(big.cases == 200);

  CHECK_THROWS_AS(check_manipulator(4, CheckMode::sampled(0, 1)),
                  domain_error);
}

TEST_CASE("gate check verifies tables and sampled polynomials") {
  VerificationReport rep = check_gates(20, 3);
  CHECK(rep.pass);
  CHECK(rep.check == "gates");
  CHECK(rep.mode == "mixed");
  CHECK(rep.samples == 20);

  std::uint64_t table_cases = 0;
  bool saw_pair = false;
  bool saw_square = false;
  for (const auto& t : rep.detail["tables"]) {
    table_cases += t["cases"].get<std::uint64_t>();
    if (t["gate"] == "pair") {
      saw_pair = true;
      CHECK(t["cases"] == 18);
    }
    if (t["gate"] == "square") {
      saw_square = true;
      CHECK(t["cases"] == 6);
    }
  }
  CHECK(saw_pair);
  CHECK(saw_square);
  // 5 unary tables of 6 and 4 binary tables of 18
  CHECK(table_cases == 5 * 6 + 4 * 18);
  CHECK(rep.cases ==
        table_cases + rep.detail["polynomial_evaluations"].get<std::uint64_t>());
  CHECK(rep.comparable_json() == check_gates(20, 3).comparable_json());

  VerificationReport tables_only = check_gates(0, 0);
  CHECK(tables_only.pass);
  CHECK(tables_only.mode == "exhaustive");
  CHECK(tables_only.generator.empty());

  CHECK_THROWS_AS(check_gates(5, 1, 0), domain_error);
  CHECK_THROWS_AS(check_gates(5, 1, 4), domain_error);
}

TEST_CASE("report text carries the failure witness") {
  VerificationReport rep;
  rep.check = "demo";
  rep.mode = "exhaustive";
  rep.cases = 5;
  rep.pass = false;
  rep.witness = "n=3\n101";
  rep.observed_min = 1;
  rep.min_witness = "n=3\n101";

  nlohmann::json j = rep.json();
  CHECK(j["pass"] == false);
  CHECK(j["witness"] == "n=3\n101");
  CHECK(j["observed_min"] == 1);
  CHECK(rep.summary().find("FAIL") != std::string::npos);
  CHECK(rep.summary().find("witness") != std::string::npos);
}
