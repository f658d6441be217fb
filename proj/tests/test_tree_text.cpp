#include <doctest.h>

#include <random>
#include <string>

#include "ballotree/tree.hpp"
#include "ballotree/tree_text.hpp"

using namespace ballotree;

namespace {

VotingTree random_dag(std::mt19937_64& rng, int rounds) {
  std::vector<VotingTree> pool = {leaf(0), leaf(1), leaf(2),
                                  var_leaf("X"), var_leaf("Y")};
  for (int i = 0; i < rounds; ++i) {
    VotingTree a = pool[rng() % pool.size()];
    VotingTree b = pool[rng() % pool.size()];
    pool.push_back(node(a, b));
  }
  return pool.back();
}

}  // namespace

TEST_CASE("expanded text of small trees") {
  CHECK(to_text(node(leaf(1), leaf(2))) == "(1 2)");
  CHECK(to_text(leaf(7)) == "7");
  CHECK(to_text(var_leaf("X")) == "X");
  CHECK(to_text(node(var_leaf("X"), node(leaf(0), leaf(1)))) ==
        "(X (0 1))");
}

TEST_CASE("parsing the worked examples") {
  CHECK(parse_tree("(1 2)") == node(leaf(1), leaf(2)));
  CHECK(parse_tree("(X (0 1))") ==
        node(var_leaf("X"), node(leaf(0), leaf(1))));
  CHECK(parse_tree("  7\n") == leaf(7));
  CHECK(parse_tree("( 1\t2 )") == node(leaf(1), leaf(2)));
}

TEST_CASE("parse errors carry the offending offset") {
  CHECK_THROWS_AS(parse_tree("(1"), parse_error);
  try {
    parse_tree("(1");
  } catch (const parse_error& e) {
    CHECK(e.position == 2);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_tree(""), parse_error);
  CHECK_THROWS_AS(parse_tree("(1 2 3)"), parse_error);
  CHECK_THROWS_AS(parse_tree("(1)"), parse_error);
  CHECK_THROWS_AS(parse_tree("()"), parse_error);
  CHECK_THROWS_AS(parse_tree("(1 2) 3"), parse_error);
  CHECK_THROWS_AS(parse_tree("1x"), parse_error);
  CHECK_THROWS_AS(parse_tree("%"), parse_error);
  CHECK_THROWS_AS(parse_tree("(def x)"), parse_error);
  CHECK_THROWS_AS(parse_tree("(def t (0 1))"), parse_error);  // no result
  CHECK_THROWS_AS(parse_tree("(def t (0 1)) (def t (1 2)) t"), parse_error);
  CHECK_THROWS_AS(parse_tree("(0 def)"), parse_error);
}

TEST_CASE("definitions name shared subtrees") {
  VotingTree t = parse_tree("(def half (0 1)) (half half)");
  VotingTree expected = node(node(leaf(0), leaf(1)), node(leaf(0), leaf(1)));
  CHECK(t == expected);
  // definitions may reference earlier definitions
  VotingTree u = parse_tree("(def a (0 1)) (def b (a 2)) (b a)");
  CHECK(u == node(node(node(leaf(0), leaf(1)), leaf(2)),
                  node(leaf(0), leaf(1))));
  // an unknown identifier stays a variable even when definitions exist
  CHECK(parse_tree("(def a (0 1)) (a Z)").right() == var_leaf("Z"));
}

TEST_CASE("expanded round trip preserves DAG identity") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    VotingTree t = random_dag(rng, 1 + int(rng() % 12));
    CHECK(parse_tree(to_text(t)) == t);
  }
}

TEST_CASE("definition-form round trip preserves DAG identity") {
  std::mt19937_64 rng(654);
  for (int trial = 0; trial < 200; ++trial) {
    VotingTree t = random_dag(rng, 1 + int(rng() % 40));
    CHECK(parse_tree(to_text_shared(t)) == t);
  }
}

TEST_CASE("definition form stays linear where expansion explodes") {
  VotingTree t = node(leaf(0), leaf(1));
  for (int i = 0; i < 60; ++i) t = node(t, t);
  CHECK_THROWS_AS(to_text(t), scale_error);
  std::string text = to_text_shared(t);
  CHECK(text.size() < 4000);
  CHECK(parse_tree(text) == t);
}

TEST_CASE("generated names dodge variables already in the tree") {
  VotingTree shared = node(var_leaf("t0"), leaf(1));
  VotingTree t = node(shared, node(shared, var_leaf("t1")));
  std::string text = to_text_shared(t);
  CHECK(parse_tree(text) == t);
}

TEST_CASE("unwritable variable names are rejected") {
  CHECK_THROWS_AS(to_text(var_leaf("two words")), format_error);
  CHECK_THROWS_AS(to_text(var_leaf("def")), format_error);
  CHECK_THROWS_AS(to_text(var_leaf("9lives")), format_error);
}
