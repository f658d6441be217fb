#include "ballotree/f3.hpp"

#include <functional>
#include <random>
#include <unordered_map>

#include "ballotree/constructions.hpp"

namespace ballotree {

struct GateExpr::Node {
  Kind kind;
  F3 value;
  std::string name;
  std::vector<GateExpr> kids;
};

GateExpr::GateExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

GateExpr GateExpr::constant(F3 v) {
  return GateExpr(std::make_shared<const Node>(Node{Kind::constant, v, {}, {}}));
}

GateExpr GateExpr::variable(std::string name) {
  if (name.empty()) throw domain_error("variable names must be nonempty");
  return GateExpr(std::make_shared<const Node>(
      Node{Kind::variable, {}, std::move(name), {}}));
}

GateExpr GateExpr::operator-() const {
  return GateExpr(std::make_shared<const Node>(
      Node{Kind::negate, {}, {}, {*this}}));
}

GateExpr GateExpr::squared() const {
  return GateExpr(std::make_shared<const Node>(
      Node{Kind::square, {}, {}, {*this}}));
}

GateExpr operator+(const GateExpr& a, const GateExpr& b) {
  return GateExpr(std::make_shared<const GateExpr::Node>(
      GateExpr::Node{GateExpr::Kind::add, {}, {}, {a, b}}));
}

GateExpr operator-(const GateExpr& a, const GateExpr& b) { return a + (-b); }

GateExpr operator*(const GateExpr& a, const GateExpr& b) {
  return GateExpr(std::make_shared<const GateExpr::Node>(
      GateExpr::Node{GateExpr::Kind::multiply, {}, {}, {a, b}}));
}

GateExpr::Kind GateExpr::kind() const { return node_->kind; }

F3 GateExpr::constant_value() const {
  if (node_->kind != Kind::constant)
    throw domain_error("expression is not a constant");
  return node_->value;
}

const std::string& GateExpr::variable_name() const {
  if (node_->kind != Kind::variable)
    throw domain_error("expression is not a variable");
  return node_->name;
}

const GateExpr& GateExpr::left() const {
  if (node_->kids.empty()) throw domain_error("expression has no operands");
  return node_->kids[0];
}

const GateExpr& GateExpr::right() const {
  if (node_->kids.size() < 2)
    throw domain_error("expression has no second operand");
  return node_->kids[1];
}

bool GateExpr::operator==(const GateExpr& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::constant:
      return node_->value == other.node_->value;
    case Kind::variable:
      return node_->name == other.node_->name;
    default:
      break;
  }
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (!(node_->kids[i] == other.node_->kids[i])) return false;
  return true;
}

namespace {

void collect_variables(const GateExpr& e, std::vector<std::string>& out) {
  switch (e.kind()) {
    case GateExpr::Kind::constant:
      return;
    case GateExpr::Kind::variable: {
      const std::string& name = e.variable_name();
      for (const std::string& known : out)
        if (known == name) return;
      out.push_back(name);
      return;
    }
    case GateExpr::Kind::negate:
    case GateExpr::Kind::square:
      collect_variables(e.left(), out);
      return;
    case GateExpr::Kind::add:
    case GateExpr::Kind::multiply:
      collect_variables(e.left(), out);
      collect_variables(e.right(), out);
      return;
  }
}

}  // namespace

std::vector<std::string> expr_variables(const GateExpr& e) {
  std::vector<std::string> out;
  collect_variables(e, out);
  return out;
}

std::string to_text(const GateExpr& e) {
  switch (e.kind()) {
    case GateExpr::Kind::constant:
      return std::to_string(e.constant_value().value);
    case GateExpr::Kind::variable:
      return e.variable_name();
    case GateExpr::Kind::negate:
      return "-" + to_text(e.left());
    case GateExpr::Kind::square:
      return to_text(e.left()) + "^2";
    case GateExpr::Kind::add:
      return "(" + to_text(e.left()) + " + " + to_text(e.right()) + ")";
    case GateExpr::Kind::multiply:
      return "(" + to_text(e.left()) + " * " + to_text(e.right()) + ")";
  }
  throw domain_error("unreachable expression kind");
}

namespace {

bool expr_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool expr_ident_char(char c) {
  return expr_ident_start(c) || (c >= '0' && c <= '9');
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  GateExpr run() {
    GateExpr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      throw parse_error("unexpected content after the expression", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GateExpr parse_sum() {
    GateExpr e = parse_product();
    for (;;) {
      if (eat('+'))
        e = e + parse_product();
      else if (eat('-'))
        e = e - parse_product();
      else
        return e;
    }
  }

  GateExpr parse_product() {
    GateExpr e = parse_factor();
    while (eat('*')) e = e * parse_factor();
    return e;
  }

  GateExpr parse_factor() {
    if (eat('-')) return -parse_factor();
    GateExpr e = parse_atom();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '^') break;
      std::size_t caret = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '2')
        throw parse_error("only the exponent 2 is supported", caret);
      ++pos_;
      if (pos_ < text_.size() && expr_ident_char(text_[pos_]))
        throw parse_error("only the exponent 2 is supported", caret);
      e = e.squared();
    }
    return e;
  }

  GateExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size())
      throw parse_error("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      GateExpr e = parse_sum();
      if (!eat(')'))
        throw parse_error("unbalanced '(' in expression", open);
      return e;
    }
    if (c >= '0' && c <= '9') {
      if (c > '2' || (pos_ + 1 < text_.size() && expr_ident_char(text_[pos_ + 1])))
        throw parse_error("constants are 0, 1 or 2", pos_);
      ++pos_;
      return GateExpr::constant(F3(c - '0'));
    }
    if (expr_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && expr_ident_char(text_[pos_])) ++pos_;
      return GateExpr::variable(
          std::string(text_.substr(start, pos_ - start)));
    }
    throw parse_error(std::string("unexpected character '") + c +
                          "' in expression",
                      pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GateExpr parse_expr(std::string_view text) { return ExprParser(text).run(); }

GateExpr random_expr(int max_depth, std::span<const std::string> variables,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::function<GateExpr(int)> go = [&](int depth) -> GateExpr {
    bool leaf_now = depth <= 0 || (rng() % 4 == 0);
    if (leaf_now) {
      if (!variables.empty() && rng() % 2 == 0)
        return GateExpr::variable(variables[rng() % variables.size()]);
      return GateExpr::constant(F3(int(rng() % 3)));
    }
    switch (rng() % 4) {
      case 0:
        return go(depth - 1) + go(depth - 1);
      case 1:
        return go(depth - 1) * go(depth - 1);
      case 2:
        return -go(depth - 1);
      default:
        return go(depth - 1).squared();
    }
  };
  return go(max_depth);
}

F3 eval_expr(const GateExpr& e, const F3Assignment& assignment) {
  switch (e.kind()) {
    case GateExpr::Kind::constant:
      return e.constant_value();
    case GateExpr::Kind::variable: {
      auto it = assignment.find(e.variable_name());
      if (it == assignment.end())
        throw binding_error("unbound variable '" + e.variable_name() + "'");
      return it->second;
    }
    case GateExpr::Kind::negate:
      return -eval_expr(e.left(), assignment);
    case GateExpr::Kind::square: {
      F3 v = eval_expr(e.left(), assignment);
      return v * v;
    }
    case GateExpr::Kind::add:
      return eval_expr(e.left(), assignment) +
             eval_expr(e.right(), assignment);
    case GateExpr::Kind::multiply:
      return eval_expr(e.left(), assignment) *
             eval_expr(e.right(), assignment);
  }
  throw domain_error("unreachable expression kind");
}

VotingTree yield_gate(VotingTree x) {
  // x against the three constants; on a 3-cycle the winner is the unique
  // vertex beating x's winner
  std::vector<VotingTree> constants = {leaf(0), leaf(1), leaf(2)};
  return lambda_of_trees(x, constants);
}

VotingTree pair_gate(VotingTree x, VotingTree y) {
  return node(yield_gate(x), yield_gate(y));
}

VotingTree neg_sum_gate(VotingTree x, VotingTree y) {
  VotingTree mid = pair_gate(x, y);
  return pair_gate(pair_gate(x, mid), pair_gate(mid, y));
}

VotingTree negate_gate(VotingTree x) { return neg_sum_gate(x, leaf(0)); }

VotingTree add_gate(VotingTree x, VotingTree y) {
  return negate_gate(neg_sum_gate(x, y));
}

VotingTree square_first_half(VotingTree x) {
  VotingTree top =
      yield_gate(yield_gate(node(node(x, leaf(1)), leaf(2))));
  VotingTree bottom = yield_gate(node(node(x, leaf(2)), leaf(1)));
  return node(top, bottom);
}

VotingTree square_second_half(VotingTree y) {
  return add_gate(leaf(1), negate_gate(yield_gate(yield_gate(y))));
}

VotingTree square_gate(VotingTree x) {
  return square_second_half(square_first_half(x));
}

VotingTree multiply_gate(VotingTree x, VotingTree y) {
  // x^2 + y^2 - (x+y)^2 = -2xy = xy mod 3
  return add_gate(square_gate(x),
                  add_gate(square_gate(y),
                           negate_gate(square_gate(add_gate(x, y)))));
}

namespace {

VotingTree compile_node(const GateExpr& e,
                        std::unordered_map<const void*, VotingTree>& memo) {
  switch (e.kind()) {
    case GateExpr::Kind::constant:
      return leaf(e.constant_value().value);
    case GateExpr::Kind::variable:
      return var_leaf(e.variable_name());
    default:
      break;
  }
  const void* key = &e.left();  // distinct per AST node
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  VotingTree result;
  switch (e.kind()) {
    case GateExpr::Kind::negate:
      result = negate_gate(compile_node(e.left(), memo));
      break;
    case GateExpr::Kind::square:
      result = square_gate(compile_node(e.left(), memo));
      break;
    case GateExpr::Kind::add:
      result = add_gate(compile_node(e.left(), memo),
                        compile_node(e.right(), memo));
      break;
    case GateExpr::Kind::multiply:
      result = multiply_gate(compile_node(e.left(), memo),
                             compile_node(e.right(), memo));
      break;
    default:
      throw domain_error("unreachable expression kind");
  }
  memo.emplace(key, result);
  return result;
}

}  // namespace

VotingTree compile_expr(const GateExpr& e) {
  std::unordered_map<const void*, VotingTree> memo;
  return compile_node(e, memo);
}

VotingTree compile_expr(const GateExpr& e,
                        std::span<const std::string> declared) {
  for (const std::string& name : expr_variables(e)) {
    bool known = false;
    for (const std::string& d : declared) known = known || d == name;
    if (!known)
      throw compile_error("undeclared variable '" + name + "'");
  }
  return compile_expr(e);
}

F3 eval_f3(VotingTree t, Direction d, const Bindings& assignment) {
  return F3(evaluate(t, direction_tournament(d), assignment));
}

}  // namespace ballotree
