// Command-line front door: build the named constructions, evaluate trees on
// tournaments, run the verification checks, compile field expressions, and
// report tree statistics. Exit codes: 0 success, 1 a verification check
// failed, 2 usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ballotree/constructions.hpp"
#include "ballotree/errors.hpp"
#include "ballotree/f3.hpp"
#include "ballotree/tournament.hpp"
#include "ballotree/tree.hpp"
#include "ballotree/tree_text.hpp"
#include "ballotree/verify.hpp"

namespace bt = ballotree;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bt::format_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw bt::format_error("cannot write " + out);
  os << text;
}

// Serialized form: expanded while small, definition form once the expanded
// leaf count would pass the threshold.
std::string render_tree(bt::VotingTree t, std::uint64_t threshold) {
  if (t.leaf_count() > threshold) return bt::to_text_shared(t);
  return bt::to_text(t);
}

// A leaf spelled on the command line: digits name a candidate, anything
// identifier-shaped names a variable.
bt::Label parse_leaf_label(const std::string& text) {
  if (text.empty()) throw bt::domain_error("empty leaf label");
  bool digits = true;
  for (char c : text)
    if (c < '0' || c > '9') digits = false;
  if (digits) return bt::Label::candidate(std::stoi(text));
  for (char c : text)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw bt::domain_error("leaf label '" + text +
                             "' is neither a number nor an identifier");
  if (std::isdigit(static_cast<unsigned char>(text[0])))
    throw bt::domain_error("leaf label '" + text + "' starts with a digit");
  return bt::Label::variable(text);
}

struct BuildArgs {
  std::string name;
  int n = 0;
  int k = 0;
  int focal = -1;
  std::vector<int> set;
  std::string left = "0";
  std::string right = "1";
  std::string x = "x";
  std::string y = "y";
  std::string out;
  std::uint64_t share_threshold = 10'000;
};

int need(int value, const char* flag, const std::string& name) {
  if (value <= 0)
    throw bt::domain_error("build " + name + " needs " + flag);
  return value;
}

bt::VotingTree build_named(const BuildArgs& a) {
  if (a.name == "match")
    return bt::node(bt::leaf(parse_leaf_label(a.left)),
                    bt::leaf(parse_leaf_label(a.right)));
  if (a.name == "baseline") return bt::baseline(need(a.n, "--n", a.name));
  if (a.name == "lambda") {
    if (a.focal < 0) throw bt::domain_error("build lambda needs --focal");
    if (!a.set.empty()) {
      std::vector<bt::Candidate> opp(a.set.begin(), a.set.end());
      return bt::lambda_against(a.focal, opp);
    }
    return bt::lambda_full(need(a.n, "--n", a.name), a.focal);
  }
  if (a.name == "lambda2") {
    if (a.focal < 0) throw bt::domain_error("build lambda2 needs --focal");
    return bt::lambda_sq(need(a.n, "--n", a.name), a.focal);
  }
  if (a.name == "phi") return bt::phi_tree(need(a.n, "--n", a.name));
  if (a.name == "psi") return bt::psi(need(a.n, "--n", a.name));
  if (a.name == "omega") return bt::omega(need(a.k, "--k", a.name));
  if (a.name == "yield") return bt::yield_gate(bt::var_leaf(a.x));
  if (a.name == "negate") return bt::negate_gate(bt::var_leaf(a.x));
  if (a.name == "square") return bt::square_gate(bt::var_leaf(a.x));
  if (a.name == "add")
    return bt::add_gate(bt::var_leaf(a.x), bt::var_leaf(a.y));
  if (a.name == "multiply")
    return bt::multiply_gate(bt::var_leaf(a.x), bt::var_leaf(a.y));
  throw bt::domain_error("unknown construction '" + a.name +
                         "'; expected one of match, baseline, lambda, "
                         "lambda2, phi, psi, omega, yield, negate, add, "
                         "multiply, square");
}

struct EvalArgs {
  std::string tree_file;
  std::string tournament_file;
  std::vector<std::string> binds;
};

bt::Bindings parse_bindings(const std::vector<std::string>& pairs) {
  bt::Bindings out;
  for (const std::string& p : pairs) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == p.size())
      throw bt::domain_error("--bind expects NAME=CANDIDATE, got '" + p + "'");
    std::string name = p.substr(0, eq);
    std::string value = p.substr(eq + 1);
    try {
      std::size_t used = 0;
      int c = std::stoi(value, &used);
      if (used != value.size() || c < 0) throw std::invalid_argument(value);
      out[name] = c;
    } catch (const std::exception&) {
      throw bt::domain_error("--bind " + name + " needs a candidate index, "
                             "got '" + value + "'");
    }
  }
  return out;
}

int run_eval(const EvalArgs& a) {
  bt::VotingTree t = bt::parse_tree(read_input(a.tree_file));
  bt::Tournament tournament =
      bt::Tournament::parse(read_input(a.tournament_file));
  bt::Candidate w = bt::evaluate(t, tournament, parse_bindings(a.binds));
  std::cout << w << "\n";
  return 0;
}

struct VerifyArgs {
  std::string check;
  int n = 0;
  int k = 3;
  int shapes = 10;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 lets the checkers use every core
  std::string mode = "auto";
  int polynomials = 100;
  int max_vars = 3;
  int max_depth = 4;
  bool json = false;
  std::string out;
};

bt::VerificationReport run_check(const VerifyArgs& a) {
  auto pick_n = [&](int fallback) { return a.n > 0 ? a.n : fallback; };
  if (a.check == "baseline") return bt::check_baseline(pick_n(4), a.jobs);
  if (a.check == "guarantee")
    return bt::check_guarantee(a.k, a.samples, a.seed, a.jobs);
  if (a.check == "against")
    return bt::check_against(pick_n(5), a.shapes, a.seed, a.jobs);
  if (a.check == "phi") return bt::check_phi(pick_n(4), a.jobs);
  if (a.check == "rotation")
    return bt::check_rotation(pick_n(4), false, a.jobs);
  if (a.check == "rotation2")
    return bt::check_rotation(pick_n(4), true, a.jobs);
  if (a.check == "manipulator") {
    int n = pick_n(4);
    bt::CheckMode mode;
    if (a.mode == "exhaustive") {
      mode = bt::CheckMode::all();
    } else if (a.mode == "sampled") {
      mode = bt::CheckMode::sampled(a.samples, a.seed);
    } else if (a.mode == "auto") {
      mode = n <= bt::exhaustive_limit()
                 ? bt::CheckMode::all()
                 : bt::CheckMode::sampled(a.samples, a.seed);
    } else {
      throw bt::domain_error("--mode must be auto, exhaustive or sampled");
    }
    return bt::check_manipulator(n, mode, a.jobs);
  }
  if (a.check == "gates")
    return bt::check_gates(a.polynomials, a.seed, a.max_vars, a.max_depth);
  throw bt::domain_error("unknown check '" + a.check +
                         "'; expected one of baseline, guarantee, against, "
                         "phi, rotation, rotation2, manipulator, gates");
}

int run_verify(const VerifyArgs& a) {
  bt::VerificationReport r = run_check(a);
  std::string doc = r.json().dump(2) + "\n";
  if (!a.out.empty()) write_output(doc, a.out);
  if (a.json)
    std::cout << doc;
  else
    std::cout << r.summary() << "\n";
  return r.pass ? 0 : 1;
}

struct CompileArgs {
  std::string expr;
  bool table = false;
  std::string out;
  std::uint64_t share_threshold = 10'000;
};

std::string truth_table(const bt::GateExpr& e, bt::VotingTree t) {
  std::vector<std::string> vars = bt::expr_variables(e);
  std::ostringstream os;
  for (const std::string& v : vars) os << v << " ";
  os << "| cw ccw\n";
  std::uint64_t rows = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) rows *= 3;
  for (std::uint64_t row = 0; row < rows; ++row) {
    // Leftmost variable is the slowest digit, so rows read like counting.
    bt::Bindings binding;
    std::uint64_t rest = row;
    for (std::size_t i = vars.size(); i-- > 0;) {
      binding[vars[i]] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    for (const std::string& v : vars) os << binding[v] << " ";
    os << "|  " << bt::eval_f3(t, bt::Direction::clockwise, binding).value
       << "   " << bt::eval_f3(t, bt::Direction::counterclockwise, binding).value
       << "\n";
  }
  return os.str();
}

int run_compile(const CompileArgs& a) {
  bt::GateExpr e = bt::parse_expr(a.expr);
  bt::VotingTree t = bt::compile_expr(e);
  std::string text = render_tree(t, a.share_threshold) + "\n";
  write_output(text, a.out);
  if (a.table) {
    if (a.out.empty()) std::cout << "\n";
    std::cout << truth_table(e, t);
  }
  return 0;
}

int run_stats(const std::string& tree_file) {
  bt::VotingTree t = bt::parse_tree(read_input(tree_file));
  bt::TreeStats s = bt::stats(t);
  nlohmann::json doc{{"leaves", s.leaves.str()},
                     {"depth", s.depth},
                     {"dag_nodes", s.dag_nodes},
                     {"variables", bt::CompiledTree(t).variables()}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voting trees over tournaments: constructions, evaluation, "
               "verification, field-expression compilation"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App* cmd_build =
      app.add_subcommand("build", "construct a named tree and print it");
  cmd_build->add_option("name", build.name,
                        "match, baseline, lambda, lambda2, phi, psi, omega, "
                        "yield, negate, add, multiply, square")
      ->required();
  cmd_build->add_option("--n", build.n, "candidate count");
  cmd_build->add_option("--k", build.k, "guarantee level (omega)");
  cmd_build->add_option("--focal", build.focal,
                        "distinguished candidate (lambda, lambda2)");
  cmd_build->add_option("--set", build.set,
                        "explicit opponent list (lambda)")
      ->delimiter(',');
  cmd_build->add_option("--left", build.left, "left leaf of match");
  cmd_build->add_option("--right", build.right, "right leaf of match");
  cmd_build->add_option("--x", build.x, "first gate variable");
  cmd_build->add_option("--y", build.y, "second gate variable");
  cmd_build->add_option("-o,--out", build.out, "write to file, not stdout");
  cmd_build->add_option("--share-threshold", build.share_threshold,
                        "switch to definition form above this leaf count");

  EvalArgs ev;
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "run a tree on a tournament, print winner");
  cmd_eval->add_option("tree", ev.tree_file, "tree file, - for stdin")
      ->required();
  cmd_eval->add_option("tournament", ev.tournament_file, "tournament file")
      ->required();
  cmd_eval->add_option("--bind", ev.binds, "variable binding NAME=CANDIDATE");

  VerifyArgs vf;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run a verification check");
  cmd_verify->add_option("check", vf.check,
                         "baseline, guarantee, against, phi, rotation, "
                         "rotation2, manipulator, gates")
      ->required();
  cmd_verify->add_option("--n", vf.n, "candidate count");
  cmd_verify->add_option("--k", vf.k, "top guarantee level (guarantee)");
  cmd_verify->add_option("--shapes", vf.shapes,
                         "random shapes per family member (against)");
  cmd_verify->add_option("--samples", vf.samples,
                         "sample count for sampled case spaces");
  cmd_verify->add_option("--seed", vf.seed, "sampling seed");
  cmd_verify->add_option("--jobs", vf.jobs,
                         "worker threads, 0 = all cores; results do not "
                         "depend on it");
  cmd_verify->add_option("--mode", vf.mode,
                         "auto, exhaustive or sampled (manipulator)");
  cmd_verify->add_option("--polynomials", vf.polynomials,
                         "random polynomial count (gates)");
  cmd_verify->add_option("--max-vars", vf.max_vars,
                         "variables per polynomial (gates)");
  cmd_verify->add_option("--max-depth", vf.max_depth,
                         "operator depth per polynomial (gates)");
  cmd_verify->add_flag("--json", vf.json, "print the full report, not the "
                       "one-line summary");
  cmd_verify->add_option("-o,--out", vf.out, "also write the report here");

  CompileArgs cp;
  CLI::App* cmd_compile = app.add_subcommand(
      "compile", "lower a mod-3 expression to a voting tree");
  cmd_compile->add_option("expr", cp.expr, "expression, e.g. \"x*y + 2\"")
      ->required();
  cmd_compile->add_flag("--table", cp.table,
                        "also print the full truth table");
  cmd_compile->add_option("-o,--out", cp.out, "write the tree to a file");
  cmd_compile->add_option("--share-threshold", cp.share_threshold,
                          "switch to definition form above this leaf count");

  std::string stats_file;
  CLI::App* cmd_stats =
      app.add_subcommand("stats", "leaf count, depth and node count");
  cmd_stats->add_option("tree", stats_file, "tree file, - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_build->parsed()) {
      write_output(render_tree(build_named(build), build.share_threshold) +
                       "\n",
                   build.out);
      return 0;
    }
    if (cmd_eval->parsed()) return run_eval(ev);
    if (cmd_verify->parsed()) return run_verify(vf);
    if (cmd_compile->parsed()) return run_compile(cp);
    if (cmd_stats->parsed()) return run_stats(stats_file);
  } catch (const bt::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
